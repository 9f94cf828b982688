"""Line sets partitioning the internal points of C, and their verification.

Three constructions are provided:

* the q-1 non-tangent lines through an external point,
* the q non-tangent lines through a point of C,
* for square q, the non-tangent lines of the subfield subplane PG(2, sqrt q).

:func:`verify_partition` is total: it never raises on bad input and instead
reports what is wrong with the line set.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from .conic import PointClass, classify_point, standard_conic, tangent_pencil_index, Y_INF
from .errors import (
    FieldMismatch,
    NotAPartition,
    NotASquare,
    NotExternalPoint,
    NotOnConic,
    WrongCongruenceClass,
)
from .gf import make_field
from .plane import plane_of

SCHEMA_VERSION = 1


class Provenance(enum.Enum):
    EXTERNAL_PENCIL = "ExternalPencil"
    CONIC_POINT_PENCIL = "ConicPointPencil"
    BAER_SUBPLANE = "BaerSubplane"
    SEARCH_RESULT = "SearchResult"


@dataclass(frozen=True)
class LineSet:
    field: object
    line_ids: tuple
    provenance: Provenance = Provenance.SEARCH_RESULT

    def __post_init__(self):
        ids = tuple(sorted(int(i) for i in self.line_ids))
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate line ids")
        n = plane_of(self.field).n
        if ids and (ids[0] < 0 or ids[-1] >= n):
            raise ValueError("line id out of range")
        object.__setattr__(self, "line_ids", ids)

    def __len__(self):
        return len(self.line_ids)

    def lines(self):
        plane = plane_of(self.field)
        return [plane.line(i) for i in self.line_ids]

    def to_json(self):
        plane = plane_of(self.field)
        return {
            "schema": "lineset",
            "schema_version": SCHEMA_VERSION,
            "field": self.field.describe(),
            "provenance": self.provenance.value,
            "line_ids": list(self.line_ids),
            "lines": [plane.line(i).label() for i in self.line_ids],
        }

    @classmethod
    def from_json(cls, data):
        f = data["field"]
        spec = make_field(f["p"], f["h"], f.get("modulus"))
        return cls(spec, tuple(data["line_ids"]), Provenance(data["provenance"]))


def external_pencil_partition(P):
    C = standard_conic(P.field)
    if classify_point(C, P) is not PointClass.EXTERNAL:
        raise NotExternalPoint(f"{P.label()} is not external to C")
    return _pencil_without_tangents(C, P, Provenance.EXTERNAL_PENCIL)


def conic_point_pencil_partition(P):
    C = standard_conic(P.field)
    if classify_point(C, P) is not PointClass.ON_CONIC:
        raise NotOnConic(f"{P.label()} is not a point of C")
    return _pencil_without_tangents(C, P, Provenance.CONIC_POINT_PENCIL)


def _pencil_without_tangents(C, P, provenance):
    plane = plane_of(P.field)
    through = plane.lines_through_point[P.id]
    keep = [int(l) for l in through if not C.tables.tangent_mask[l]]
    return LineSet(P.field, tuple(keep), provenance)


@dataclass
class BaerSubplane:
    point_ids: list
    line_ids: list
    conic_point_ids: list
    tangent_line_ids: list


def baer_subplane(spec):
    """The subplane of points and lines with coordinates in GF(sqrt q)."""
    if spec.h % 2:
        raise NotASquare(f"q={spec.q} is not a square")
    sub = set(spec.subfield(spec.h // 2))
    plane = plane_of(spec)
    C = standard_conic(spec)
    ids = [i for i, t in enumerate(plane.triples) if all(c in sub for c in t)]
    on = [i for i in ids if C.tables.on_conic[i]]
    tangents = [i for i in ids if C.tables.tangent_mask[i]]
    return BaerSubplane(ids, list(ids), on, tangents)


def baer_subplane_partition(spec):
    sp = baer_subplane(spec)
    tangents = set(sp.tangent_line_ids)
    keep = [l for l in sp.line_ids if l not in tangents]
    return LineSet(spec, tuple(keep), Provenance.BAER_SUBPLANE)


@dataclass
class PartitionReport:
    is_exact_partition: bool
    size: int
    secant_count: int
    external_line_count: int
    tangent_count: int
    per_conic_point_line_counts: dict = field(default_factory=dict)
    uncovered_internal: int = 0
    multiply_covered_internal: int = 0
    covers_internal: bool = False
    all_conic_points_covered: bool = False
    count_spectrum: list = field(default_factory=list)

    def to_json(self):
        d = asdict(self)
        d["per_conic_point_line_counts"] = {str(k): v for k, v in
                                            self.per_conic_point_line_counts.items()}
        return d


def verify_partition(L):
    spec = L.field
    plane = plane_of(spec)
    t = standard_conic(spec).tables
    ids = np.array(L.line_ids, dtype=np.int64)
    hits = np.zeros(plane.n, dtype=np.int64)
    if len(ids):
        np.add.at(hits, plane.points_on_line[ids].ravel(), 1)
    internal = t.point_code == 1
    uncovered = int(np.sum(internal & (hits == 0)))
    multiple = int(np.sum(internal & (hits > 1)))
    meets = t.line_meets[ids] if len(ids) else np.zeros(0, dtype=np.int64)
    tangent_count = int(np.sum(meets == 1))
    per_point = {int(p): int(hits[p]) for p in t.points}
    return PartitionReport(
        is_exact_partition=uncovered == 0 and multiple == 0 and tangent_count == 0,
        size=len(ids),
        secant_count=int(np.sum(meets == 2)),
        external_line_count=int(np.sum(meets == 0)),
        tangent_count=tangent_count,
        per_conic_point_line_counts=per_point,
        uncovered_internal=uncovered,
        multiply_covered_internal=multiple,
        covers_internal=uncovered == 0,
        all_conic_points_covered=all(v > 0 for v in per_point.values()),
        count_spectrum=sorted(set(per_point.values())),
    )


@dataclass
class TangencyProfile:
    m: int
    phi: dict
    t: int | None
    identity_holds: bool
    unmatched_tangencies: int = 0


def tangency_profile(L, P, group=None):
    """Lines of L through P and tangency counts against the internal pencil.

    P is first moved to Y_inf by an element of the conic's stabilizer.
    ``phi`` maps each non-square pencil index s to the number of lines of L
    tangent to C_s.
    """
    from .classify import frame_to_y_inf

    spec = L.field
    if P.field != spec:
        raise FieldMismatch("point and line set live over different fields")
    if spec.q % 4 != 3:
        raise WrongCongruenceClass(f"q={spec.q} is not 3 mod 4")
    if classify_point(standard_conic(spec), P) is not PointClass.ON_CONIC:
        raise NotOnConic(f"{P.label()} is not a point of C")
    report = verify_partition(L)
    if not report.is_exact_partition or report.size != spec.q:
        raise NotAPartition("tangency profiles need an exact partition of size q")

    plane = plane_of(spec)
    g = frame_to_y_inf(P, group)
    moved = g.line_permutation(plane)[list(L.line_ids)]
    y_inf = plane.id_of(Y_INF)
    q = spec.q
    phi = {a: 0 for a in range(q) if spec.chi[a] == -1}
    m = 0
    unmatched = 0
    for lid in moved:
        if plane.incident_ids(y_inf, int(lid)):
            m += 1
            continue
        s = tangent_pencil_index(plane.line(int(lid))).value
        if s in phi:
            phi[s] += 1
        else:
            unmatched += 1
    values = set(phi.values())
    t = values.pop() if len(values) == 1 else None
    holds = (
        unmatched == 0
        and t is not None
        and t in (0, 1, 2)
        and sum(phi.values()) == q - m
        and t * (q - 1) == 2 * (q - m)
    )
    return TangencyProfile(m, phi, t, holds, unmatched)
