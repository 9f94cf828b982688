"""The projective plane PG(2, q).

Points and lines are homogeneous triples of field-element indices,
normalized so that the last nonzero coordinate is 1.  Both are enumerated in
the same order (affine ``(x, y, 1)`` first, then ``(x, 1, 0)``, then
``(1, 0, 0)``), and the position in that order is the integer id used by all
search and classification code.  Ids depend only on ``(p, h, modulus)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import EqualArguments, FieldMismatch, GeometryError
from .gf import FieldElement


def _as_index(field, c):
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldMismatch("coordinate from another field")
        return c.value
    return field.from_int(int(c))


def normalize(field, triple, raw=False):
    """Scale so the last nonzero entry is 1.

    Plain integers are read as prime-subfield elements unless ``raw`` is set,
    in which case they are element indices.
    """
    triple = [int(c) for c in triple] if raw else [_as_index(field, c) for c in triple]
    for k in (2, 1, 0):
        if triple[k]:
            s = int(field.inv[triple[k]])
            return tuple(int(field.mul[c, s]) for c in triple)
    raise GeometryError("the zero vector is not a projective point")


def _cross(field, a, b):
    mul, sub = field.mul, field.sub
    return (
        int(sub[mul[a[1], b[2]], mul[a[2], b[1]]]),
        int(sub[mul[a[2], b[0]], mul[a[0], b[2]]]),
        int(sub[mul[a[0], b[1]], mul[a[1], b[0]]]),
    )


def _dot(field, a, b):
    mul, add = field.mul, field.add
    return int(add[add[mul[a[0], b[0]], mul[a[1], b[1]]], mul[a[2], b[2]]])


class _Homogeneous:
    __slots__ = ()

    def __init__(self, field, coords, raw=False):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", normalize(field, coords, raw))

    def elements(self):
        return tuple(FieldElement(self.field, c) for c in self.coords)

    def label(self):
        return "(" + ",".join(self.field.format(c) for c in self.coords) + ")"

    @property
    def id(self):
        return plane_of(self.field).id_of(self.coords)


@dataclass(frozen=True, init=False)
class ProjPoint(_Homogeneous):
    field: object
    coords: tuple

    __init__ = _Homogeneous.__init__


@dataclass(frozen=True, init=False)
class ProjLine(_Homogeneous):
    """Line ``u X + v Y + w Z = 0`` stored as the dual triple ``[u, v, w]``."""

    field: object
    coords: tuple

    __init__ = _Homogeneous.__init__

    def label(self):
        return "[" + ",".join(self.field.format(c) for c in self.coords) + "]"


def _check_same(*objs):
    f = objs[0].field
    for o in objs[1:]:
        if o.field != f:
            raise FieldMismatch("objects live over different fields")
    return f


def incident(P, l):
    field = _check_same(P, l)
    return _dot(field, P.coords, l.coords) == 0


def join(P, Q):
    field = _check_same(P, Q)
    if P == Q:
        raise EqualArguments("join of a point with itself")
    return ProjLine(field, _cross(field, P.coords, Q.coords), raw=True)


def meet(l, m):
    field = _check_same(l, m)
    if l == m:
        raise EqualArguments("meet of a line with itself")
    return ProjPoint(field, _cross(field, l.coords, m.coords), raw=True)


class Plane:
    """Point/line tables for one field, built once and shared read-only."""

    def __init__(self, field):
        self.field = field
        q = field.q
        self.q = q
        triples = [(x, y, 1) for x in range(q) for y in range(q)]
        triples += [(x, 1, 0) for x in range(q)]
        triples.append((1, 0, 0))
        self.triples = triples
        self.n = len(triples)
        self.coords = np.array(triples, dtype=np.int64)
        self.code_to_id = np.full(q ** 3, -1, dtype=np.int64)
        self.code_to_id[self._codes(self.coords)] = np.arange(self.n)
        self._build_incidence()

    def _codes(self, coords):
        q = self.q
        return (coords[:, 0] * q + coords[:, 1]) * q + coords[:, 2]

    def _build_incidence(self):
        F = self.field
        X, Y, Z = self.coords.T
        on_line = np.empty((self.n, self.q + 1), dtype=np.int64)
        chunk = max(1, 2 ** 22 // self.n)
        for start in range(0, self.n, chunk):
            U, V, W = self.coords[start:start + chunk].T
            pairing = F.add[F.add[F.mul[U[:, None], X[None, :]],
                                  F.mul[V[:, None], Y[None, :]]],
                            F.mul[W[:, None], Z[None, :]]]
            rows, cols = np.nonzero(pairing == 0)
            on_line[start:start + len(U)] = cols.reshape(len(U), self.q + 1)
        self.points_on_line = on_line
        flat = on_line.ravel()
        order = np.argsort(flat, kind="stable")
        owners = np.repeat(np.arange(self.n, dtype=np.int64), self.q + 1)
        self.lines_through_point = owners[order].reshape(self.n, self.q + 1)

    @functools.cached_property
    def point_sets(self):
        return [frozenset(int(x) for x in row) for row in self.points_on_line]

    def id_of(self, coords):
        q = self.q
        return int(self.code_to_id[(coords[0] * q + coords[1]) * q + coords[2]])

    def point(self, pid):
        return ProjPoint(self.field, self.triples[pid], raw=True)

    def line(self, lid):
        return ProjLine(self.field, self.triples[lid], raw=True)

    def incident_ids(self, pid, lid):
        return pid in self.point_sets[lid]

    def join_ids(self, a, b):
        common = set(self.lines_through_point[a]) & set(self.lines_through_point[b])
        if a == b or len(common) != 1:
            raise EqualArguments("join of a point with itself")
        return int(common.pop())

    def meet_ids(self, l, m):
        common = self.point_sets[l] & self.point_sets[m]
        if l == m or len(common) != 1:
            raise EqualArguments("meet of a line with itself")
        return int(next(iter(common)))

    def normalize_rows(self, coords):
        """Vectorized normalization of an ``(k, 3)`` array of nonzero triples."""
        F = self.field
        coords = np.asarray(coords, dtype=np.int64)
        nz = coords != 0
        last = 2 - np.argmax(nz[:, ::-1], axis=1)
        scale = F.inv[coords[np.arange(len(coords)), last]]
        return F.mul[coords, scale[:, None]]

    def ids_of_rows(self, coords):
        return self.code_to_id[self._codes(self.normalize_rows(coords))]


@functools.lru_cache(maxsize=None)
def plane_of(field):
    return Plane(field)


def all_points(spec):
    plane = plane_of(spec)
    return [plane.point(i) for i in range(plane.n)]


def all_lines(spec):
    plane = plane_of(spec)
    return [plane.line(i) for i in range(plane.n)]


# -- 3x3 matrices over GF(q), as flat 9-tuples ----------------------------------

def mat_mul(F, A, B):
    mul, add = F.mul, F.add
    out = []
    for i in range(3):
        for j in range(3):
            s = 0
            for k in range(3):
                s = add[s, mul[A[3 * i + k], B[3 * k + j]]]
            out.append(int(s))
    return tuple(out)


def _minor(F, A, r0, r1, c0, c1):
    return int(F.sub[F.mul[A[3 * r0 + c0], A[3 * r1 + c1]],
                     F.mul[A[3 * r0 + c1], A[3 * r1 + c0]]])


def mat_det(F, A):
    t0 = F.mul[A[0], _minor(F, A, 1, 2, 1, 2)]
    t1 = F.mul[A[1], _minor(F, A, 1, 2, 0, 2)]
    t2 = F.mul[A[2], _minor(F, A, 1, 2, 0, 1)]
    return int(F.add[F.sub[t0, t1], t2])


def mat_adjugate(F, A):
    cof = []
    for i in range(3):
        r = [x for x in range(3) if x != i]
        for j in range(3):
            c = [x for x in range(3) if x != j]
            m = _minor(F, A, r[0], r[1], c[0], c[1])
            cof.append(m if (i + j) % 2 == 0 else int(F.neg[m]))
    # adjugate is the transpose of the cofactor matrix
    return tuple(cof[3 * j + i] for i in range(3) for j in range(3))


def mat_transpose(A):
    return tuple(A[3 * j + i] for i in range(3) for j in range(3))


def mat_scale_canonical(F, A):
    for a in A:
        if a:
            s = int(F.inv[a])
            return tuple(int(F.mul[x, s]) for x in A)
    raise GeometryError("zero matrix")


@dataclass(frozen=True, init=False)
class Collineation:
    """An element of PGL(3, q): an invertible matrix up to scalars.

    Points are column vectors mapped by ``P -> M P``; lines map by the
    inverse-transpose so that incidence is preserved.
    """

    field: object
    matrix: tuple

    def __init__(self, field, matrix, raw=False):
        entries = [x for row in _rows(matrix) for x in row]
        flat = tuple(int(x) for x in entries) if raw else tuple(_as_index(field, x) for x in entries)
        if mat_det(field, flat) == 0:
            raise GeometryError("singular matrix does not define a collineation")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "matrix", mat_scale_canonical(field, flat))

    @classmethod
    def identity(cls, field):
        return cls(field, (1, 0, 0, 0, 1, 0, 0, 0, 1))

    def __matmul__(self, other):
        _check_same(self, other)
        return Collineation(self.field, mat_mul(self.field, self.matrix, other.matrix), raw=True)

    def inverse(self):
        return Collineation(self.field, mat_adjugate(self.field, self.matrix), raw=True)

    def dual_matrix(self):
        return mat_transpose(mat_adjugate(self.field, self.matrix))

    def point_permutation(self, plane=None):
        plane = plane or plane_of(self.field)
        return _permutation(plane, self.matrix)

    def line_permutation(self, plane=None):
        plane = plane or plane_of(self.field)
        return _permutation(plane, self.dual_matrix())

    def rows(self):
        return [list(self.matrix[3 * i:3 * i + 3]) for i in range(3)]


def _rows(matrix):
    m = list(matrix)
    if len(m) == 9 and not isinstance(m[0], (list, tuple)):
        return [m[0:3], m[3:6], m[6:9]]
    return m


def _permutation(plane, M):
    F = plane.field
    X, Y, Z = plane.coords.T
    img = np.stack([
        F.add[F.add[F.mul[M[3 * i], X], F.mul[M[3 * i + 1], Y]], F.mul[M[3 * i + 2], Z]]
        for i in range(3)
    ], axis=1)
    return plane.ids_of_rows(img)


def _apply_matrix(F, M, v):
    mul, add = F.mul, F.add
    return tuple(int(add[add[mul[M[3 * i], v[0]], mul[M[3 * i + 1], v[1]]], mul[M[3 * i + 2], v[2]]])
                 for i in range(3))


def apply(g, P):
    field = _check_same(g, P)
    return ProjPoint(field, _apply_matrix(field, g.matrix, P.coords), raw=True)


def apply_dual(g, l):
    field = _check_same(g, l)
    return ProjLine(field, _apply_matrix(field, g.dual_matrix(), l.coords), raw=True)
