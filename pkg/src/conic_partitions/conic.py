"""The conic C: X^2 = YZ and the pencil of conics C_s: X^2 - sZ^2 - YZ = 0.

In affine coordinates (Z = 1) the pencil member C_s is the parabola
``Y = X^2 - s``; every member passes through ``Y_inf = (0, 1, 0)`` and is
tangent there to the line at infinity ``Z = 0``.

Point classification relative to a conic is done by counting the tangents
through a point (0: internal, 2: external).  ``classify_point_by_character``
is an independent second method used to cross-check it.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from . import exactla
from .errors import (
    EqualIndices,
    GeometryError,
    LineThroughYInfinity,
    NotInternalIndex,
    WrongCongruenceClass,
)
from .gf import FieldElement, enumerate_elements
from .plane import (
    ProjLine,
    ProjPoint,
    _apply_matrix,
    mat_adjugate,
    mat_det,
    mat_scale_canonical,
    plane_of,
)

Y_INF = (0, 1, 0)


class PointClass(enum.Enum):
    ON_CONIC = "OnConic"
    INTERNAL = "Internal"
    EXTERNAL = "External"


class LineClass(enum.Enum):
    TANGENT = "Tangent"
    SECANT = "Secant"
    EXTERNAL_LINE = "ExternalLine"


class Relation(enum.Enum):
    EXTERNAL_TO = "ExternalTo"
    INTERNAL_TO = "InternalTo"


_POINT_CODES = (PointClass.ON_CONIC, PointClass.INTERNAL, PointClass.EXTERNAL)
_LINE_BY_MEETS = {1: LineClass.TANGENT, 2: LineClass.SECANT, 0: LineClass.EXTERNAL_LINE}


def _index(field, s):
    if isinstance(s, FieldElement):
        return s.value
    return field.from_int(int(s))


@dataclass(frozen=True, init=False)
class Conic:
    """A nondegenerate conic given by its symmetric form, up to scalars."""

    field: object
    form: tuple
    pencil_index: int | None = None

    def __init__(self, field, form, pencil_index=None, raw=False):
        form = tuple(int(x) if raw else _index(field, x) for x in form)
        if mat_det(field, form) == 0:
            raise GeometryError("degenerate quadratic form")
        for i in range(3):
            for j in range(i):
                if form[3 * i + j] != form[3 * j + i]:
                    raise GeometryError("form matrix must be symmetric")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "form", mat_scale_canonical(field, form))
        object.__setattr__(self, "pencil_index", pencil_index)
        if len(self.tables.points) != field.q + 1:
            raise GeometryError("form does not define an irreducible conic")

    def evaluate(self, coords):
        F, M = self.field, self.form
        total = 0
        for i in range(3):
            for j in range(3):
                term = F.mul[F.mul[coords[i], M[3 * i + j]], coords[j]]
                total = F.add[total, term]
        return int(total)

    @property
    def tables(self):
        return conic_tables(self)

    def points(self):
        plane = plane_of(self.field)
        return [plane.point(int(i)) for i in self.tables.points]

    def contains(self, P):
        return self.evaluate(P.coords) == 0

    def __repr__(self):
        if self.pencil_index is not None:
            return f"Conic(C_{self.field.format(self.pencil_index)} over {self.field!r})"
        return f"Conic(form={self.form} over {self.field!r})"


class ConicTables:
    """Per-conic classification of every point and line of the plane."""

    def __init__(self, conic):
        plane = plane_of(conic.field)
        F, M = conic.field, conic.form
        X, Y, Z = plane.coords.T
        comps = [F.add[F.add[F.mul[M[3 * i], X], F.mul[M[3 * i + 1], Y]], F.mul[M[3 * i + 2], Z]]
                 for i in range(3)]
        values = F.add[F.add[F.mul[X, comps[0]], F.mul[Y, comps[1]]], F.mul[Z, comps[2]]]
        self.on_conic = values == 0
        self.points = np.flatnonzero(self.on_conic)
        polar = np.stack(comps, axis=1)
        self.polar_ids = plane.ids_of_rows(polar)
        self.tangents = np.sort(self.polar_ids[self.points])
        tangent_mask = np.zeros(plane.n, dtype=bool)
        tangent_mask[self.tangents] = True
        self.tangent_mask = tangent_mask
        tangent_count = tangent_mask[plane.lines_through_point].sum(axis=1)
        # 0 on conic, 1 internal, 2 external
        self.point_code = np.where(self.on_conic, 0, np.where(tangent_count == 0, 1, 2))
        self.line_meets = self.on_conic[plane.points_on_line].sum(axis=1)
        self.internal_per_line = (self.point_code == 1)[plane.points_on_line].sum(axis=1)

    def ids_with_class(self, kind):
        code = _POINT_CODES.index(kind)
        return np.flatnonzero(self.point_code == code)

    def lines_with_class(self, kind):
        meets = {v: k for k, v in _LINE_BY_MEETS.items()}[kind]
        return np.flatnonzero(self.line_meets == meets)


@functools.lru_cache(maxsize=None)
def conic_tables(conic):
    return ConicTables(conic)


def pencil_conic(spec, s):
    """C_s: X^2 - s Z^2 - Y Z = 0 (affine Y = X^2 - s)."""
    s = _index(spec, s)
    half = int(spec.inv[2 % spec.p])
    mhalf = int(spec.neg[half])
    form = (1, 0, 0,
            0, 0, mhalf,
            0, mhalf, int(spec.neg[s]))
    return Conic(spec, form, pencil_index=s, raw=True)


def standard_conic(spec):
    return pencil_conic(spec, 0)


def polar_line(K, P):
    F, M = K.field, K.form
    v = P.coords
    return ProjLine(F, [int(F.add[F.add[F.mul[M[3 * i], v[0]], F.mul[M[3 * i + 1], v[1]]],
                                   F.mul[M[3 * i + 2], v[2]]]) for i in range(3)], raw=True)


def pole(K, l):
    """Inverse of :func:`polar_line`."""
    return ProjPoint(K.field, _apply_matrix(K.field, mat_adjugate(K.field, K.form), l.coords), raw=True)


def classify_point(K, P):
    return _POINT_CODES[int(K.tables.point_code[P.id])]


@dataclass(frozen=True)
class LineInfo:
    kind: LineClass
    internal_points: int


def classify_line(K, l):
    lid = l.id
    t = K.tables
    return LineInfo(_LINE_BY_MEETS[int(t.line_meets[lid])], int(t.internal_per_line[lid]))


def classify_point_by_character(K, P):
    """Second classification method, from the character of the evaluated form.

    The sign convention is calibrated on a point known to be external: the
    meet of the tangents at two distinct points of K.
    """
    F = K.field
    plane = plane_of(F)
    t = K.tables
    a, b = (int(x) for x in t.points[:2])
    ext = plane.meet_ids(int(t.polar_ids[a]), int(t.polar_ids[b]))
    sign = int(F.chi[K.evaluate(plane.triples[ext])])
    value = K.evaluate(P.coords)
    if value == 0:
        return PointClass.ON_CONIC
    return PointClass.EXTERNAL if int(F.chi[value]) == sign else PointClass.INTERNAL


def point_census(K):
    t = K.tables
    return {
        "on_conic": int(np.sum(t.point_code == 0)),
        "internal": int(np.sum(t.point_code == 1)),
        "external": int(np.sum(t.point_code == 2)),
    }


def line_census(K):
    t = K.tables
    return {
        "tangent": int(np.sum(t.line_meets == 1)),
        "secant": int(np.sum(t.line_meets == 2)),
        "external": int(np.sum(t.line_meets == 0)),
    }


def internal_counts_by_line_class(K):
    """Set of internal-point counts observed on tangents, secants and external lines."""
    t = K.tables
    out = {}
    for meets, kind in _LINE_BY_MEETS.items():
        sel = t.line_meets == meets
        out[kind] = sorted(set(int(x) for x in t.internal_per_line[sel]))
    return out


# -- the pencil ---------------------------------------------------------------

def tangent_pencil_index(l):
    """The unique s such that ``l`` is tangent to C_s, for l not through Y_inf."""
    F = l.field
    u, v, w = l.coords
    if v == 0:
        raise LineThroughYInfinity(f"line {l.label()} passes through Y_inf")
    inv_v = int(F.inv[v])
    alpha = int(F.neg[F.mul[u, inv_v]])
    beta = int(F.neg[F.mul[w, inv_v]])
    four = 4 % F.p
    num = F.add[F.mul[alpha, alpha], F.mul[four, beta]]
    s = int(F.neg[F.mul[num, F.inv[four]]])
    if pencil_conic(F, F.element(s)).tables.line_meets[l.id] != 1:
        raise GeometryError("tangency check failed")
    return FieldElement(F, s)


def pencil_relation(s, s_prime):
    """How the affine points of C_{s'} sit relative to C_s."""
    F = s.field
    if s == s_prime:
        raise EqualIndices("pencil indices must differ")
    c = int(F.chi[F.sub[s_prime.value, s.value]])
    return Relation.EXTERNAL_TO if c == 1 else Relation.INTERNAL_TO


def pencil_relation_by_points(spec, s, s_prime):
    """Classify every affine point of C_{s'} against C_s.

    Returns the common :class:`Relation`, or None if the points disagree.
    """
    s, s_prime = _index(spec, s), _index(spec, s_prime)
    if s == s_prime:
        raise EqualIndices("pencil indices must differ")
    target = pencil_conic(spec, spec.element(s)).tables
    source = pencil_conic(spec, spec.element(s_prime)).tables
    plane = plane_of(spec)
    affine = source.points[source.points != plane.id_of(Y_INF)]
    codes = set(int(c) for c in target.point_code[affine])
    if codes == {2}:
        return Relation.EXTERNAL_TO
    if codes == {1}:
        return Relation.INTERNAL_TO
    return None


@dataclass(frozen=True)
class PencilFamily:
    field: object
    internal_indices: frozenset


def pencil_family(spec):
    """The pencil members whose affine points are internal to C."""
    return PencilFamily(spec, frozenset(FieldElement(spec, a) for a in range(spec.q)
                                        if spec.chi[a] == -1))


def nonsquares(spec):
    return [e for e in enumerate_elements(spec) if spec.chi[e.value] == -1]


def _require_3_mod_4(spec):
    if spec.q % 4 != 3:
        raise WrongCongruenceClass(f"q={spec.q} is not 3 mod 4")


def internal_subfamily(s):
    F = s.field
    _require_3_mod_4(F)
    if F.chi[s.value] != -1:
        raise NotInternalIndex(f"{s} is not a non-square")
    return frozenset(t for t in nonsquares(F)
                     if t != s and F.chi[F.sub[t.value, s.value]] == -1)


@dataclass
class CharacterMatrix:
    nonsquares: list
    matrix: list
    rank: int
    nullspace: list
    minor_det: int
    minor_det_mod2: int

    @property
    def size(self):
        return len(self.matrix)


def character_matrix(spec):
    """The matrix chi(s_i - s_j) over the ordered non-squares, with diagnostics."""
    _require_3_mod_4(spec)
    ns = nonsquares(spec)
    A = [[int(spec.chi[spec.sub[a.value, b.value]]) for b in ns] for a in ns]
    rank, _ = exactla.bareiss(A)
    minor = [row[1:] for row in A[1:]]
    _, minor_det = exactla.bareiss(minor) if minor else (0, 1)
    return CharacterMatrix(
        nonsquares=ns,
        matrix=A,
        rank=rank,
        nullspace=exactla.nullspace(A),
        minor_det=minor_det,
        minor_det_mod2=exactla.det_gf2(minor),
    )
