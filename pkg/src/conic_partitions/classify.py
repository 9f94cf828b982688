"""The stabilizer of C in PGL(3, q) and orbit classification of line sets.

The stabilizer is the image of PGL(2, q) acting on the parametrization
``(s : t) -> (st, s^2, t^2)`` of C.  Each ordered triple of distinct points
of C is the image of the base triple ``(Y_inf, (0,0,1), (1,1,1))`` under
exactly one element, which is how the group is enumerated.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .conic import PointClass, standard_conic, Y_INF
from .errors import FieldMismatch, GeometryError
from .families import (
    LineSet,
    baer_subplane_partition,
    conic_point_pencil_partition,
    external_pencil_partition,
)
from .plane import Collineation, plane_of


class FamilyLabel(enum.Enum):
    EXTERNAL_PENCIL = "ExternalPencil"
    CONIC_POINT_PENCIL = "ConicPointPencil"
    BAER_SUBPLANE = "BaerSubplane"
    EXCEPTIONAL_COVER = "ExceptionalCover"
    UNKNOWN = "Unknown"


def _conic_parameter(F, triple):
    x, y, z = triple
    if z == 0:
        return (1, 0)
    return (int(F.mul[x, F.inv[z]]), 1)


def _lift(F, a, b, c, d):
    """3x3 matrix induced on (X, Y, Z) = (st, s^2, t^2) by (s, t) -> (as+bt, cs+dt)."""
    m, add = F.mul, F.add
    two = 2 % F.p
    return (
        int(add[m[a, d], m[b, c]]), int(m[a, c]), int(m[b, d]),
        int(m[two, m[a, b]]), int(m[a, a]), int(m[b, b]),
        int(m[two, m[c, d]]), int(m[c, c]), int(m[d, d]),
    )


def _mobius_to(F, v1, v2, v3):
    """2x2 matrix sending (1,0), (0,1), (1,1) to multiples of v1, v2, v3."""
    det = int(F.sub[F.mul[v1[0], v2[1]], F.mul[v1[1], v2[0]]])
    inv = int(F.inv[det])
    # solve lam*v1 + mu*v2 = v3 by Cramer's rule
    lam = int(F.mul[F.sub[F.mul[v3[0], v2[1]], F.mul[v3[1], v2[0]]], inv])
    mu = int(F.mul[F.sub[F.mul[v1[0], v3[1]], F.mul[v1[1], v3[0]]], inv])
    a, c = int(F.mul[lam, v1[0]]), int(F.mul[lam, v1[1]])
    b, d = int(F.mul[mu, v2[0]]), int(F.mul[mu, v2[1]])
    return a, b, c, d


class StabilizerGroup:
    """All collineations fixing C setwise, with their point and line permutations."""

    def __init__(self, spec):
        self.field = spec
        plane = plane_of(spec)
        C = standard_conic(spec)
        conic_ids = [int(i) for i in C.tables.points]
        params = {i: _conic_parameter(spec, plane.triples[i]) for i in conic_ids}
        elements = []
        for p1, p2, p3 in itertools.permutations(conic_ids, 3):
            abcd = _mobius_to(spec, params[p1], params[p2], params[p3])
            elements.append(Collineation(spec, _lift(spec, *abcd), raw=True))
        self.elements = elements
        self.point_perms = np.stack([g.point_permutation(plane) for g in elements])
        self.line_perms = np.stack([g.line_permutation(plane) for g in elements])
        on = C.tables.on_conic
        if not np.all(on[self.point_perms[:, C.tables.points]]):
            raise GeometryError("stabilizer element does not fix C")

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index_of_identity(self):
        n = self.point_perms.shape[1]
        hits = np.flatnonzero(np.all(self.point_perms == np.arange(n), axis=1))
        return int(hits[0])


@functools.lru_cache(maxsize=None)
def conic_stabilizer(spec):
    return StabilizerGroup(spec)


def frame_to_y_inf(P, group=None):
    """A stabilizer element mapping the point P of C to Y_inf."""
    G = group or conic_stabilizer(P.field)
    plane = plane_of(P.field)
    target = plane.id_of(Y_INF)
    k = int(np.flatnonzero(G.point_perms[:, P.id] == target)[0])
    return G.elements[k]


def _images(L, G):
    if L.field != G.field:
        raise FieldMismatch("line set and group live over different fields")
    ids = np.array(L.line_ids, dtype=np.int64)
    return np.sort(G.line_perms[:, ids], axis=1)


def _lexmin(rows):
    if rows.shape[1] == 0:
        return rows[0]
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def canonical_partition(L, G):
    """Lexicographically least image of L's sorted ids under G."""
    best = _lexmin(_images(L, G))
    return LineSet(L.field, tuple(int(x) for x in best), L.provenance)


def orbit_length(L, G):
    return int(np.unique(_images(L, G), axis=0).shape[0])


def family_representatives(spec):
    """One constructed line set per family of the classification."""
    plane = plane_of(spec)
    t = standard_conic(spec).tables
    ext = plane.point(int(t.ids_with_class(PointClass.EXTERNAL)[0]))
    reps = {
        FamilyLabel.EXTERNAL_PENCIL: external_pencil_partition(ext),
        FamilyLabel.CONIC_POINT_PENCIL: conic_point_pencil_partition(plane.point(plane.id_of(Y_INF))),
    }
    if spec.h % 2 == 0:
        reps[FamilyLabel.BAER_SUBPLANE] = baer_subplane_partition(spec)
    return reps


@dataclass
class Orbit:
    canonical_form: LineSet
    orbit_size: int
    family_label: FamilyLabel
    group_orbit_length: int

    def to_json(self):
        return {
            "canonical_form": self.canonical_form.to_json(),
            "orbit_size": self.orbit_size,
            "group_orbit_length": self.group_orbit_length,
            "family_label": self.family_label.value,
        }


@dataclass
class OrbitReport:
    orbits: list
    total_solutions: int

    def labels(self):
        return [o.family_label for o in self.orbits]

    def count(self, label):
        return sum(1 for o in self.orbits if o.family_label is label)

    def to_json(self):
        return {
            "total_solutions": self.total_solutions,
            "orbit_count": len(self.orbits),
            "orbits": [o.to_json() for o in self.orbits],
        }


def classify_solutions(solutions, G, cover_mode=False):
    """Group line sets into orbits under G and label each orbit by family.

    ``solutions`` is a SolutionSet or any iterable of LineSet.
    """
    solutions = list(getattr(solutions, "solutions", solutions))
    spec = G.field
    for L in solutions:
        if L.field != spec:
            raise FieldMismatch("solution from another field")
    known = {canonical_partition(rep, G).line_ids: label
             for label, rep in family_representatives(spec).items()}
    buckets = {}
    for L in solutions:
        key = canonical_partition(L, G).line_ids
        buckets[key] = buckets.get(key, 0) + 1
    fallback = FamilyLabel.EXCEPTIONAL_COVER if cover_mode else FamilyLabel.UNKNOWN
    orbits = []
    for key in sorted(buckets, key=lambda k: (len(k), k)):
        form = LineSet(spec, key)
        orbits.append(Orbit(form, buckets[key], known.get(key, fallback), orbit_length(form, G)))
    return OrbitReport(orbits, len(solutions))
