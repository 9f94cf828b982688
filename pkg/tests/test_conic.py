import pytest
import sympy

from conic_partitions import (
    LineClass, PointClass, ProjLine, ProjPoint, Relation, character_matrix, classify_line,
    classify_point, internal_subfamily, make_field, pencil_conic, pencil_family, pencil_relation,
    polar_line, standard_conic, tangent_pencil_index,
)
from conic_partitions.conic import (
    classify_point_by_character, internal_counts_by_line_class, line_census, point_census,
)
from conic_partitions.errors import (
    LineThroughYInfinity, NotInternalIndex, WrongCongruenceClass,
)
from conic_partitions.exactla import bareiss, det_gf2, nullspace
from conic_partitions.gf import enumerate_elements
from conic_partitions.plane import all_lines, all_points


def test_q3_points():
    F = make_field(3)
    assert sorted(p.coords for p in standard_conic(F).points()) == sorted(
        [(0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 1, 1)])
    assert len(standard_conic(make_field(7)).points()) == 8


def test_polar_lines():
    F = make_field(7)
    C = standard_conic(F)
    assert polar_line(C, ProjPoint(F, (1, 1, 1))) == ProjLine(F, (2, -1, -1))
    # tangent to Y = X^2 - 3 at X = 0 is Y = -3 = 4
    C3 = pencil_conic(F, F.element(3))
    assert polar_line(C3, ProjPoint(F, (0, -3, 1))) == ProjLine(F, (0, 1, 3))


@pytest.mark.parametrize("p,h", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)])
def test_census(p, h):
    q = p ** h
    C = standard_conic(make_field(p, h))
    assert point_census(C) == {"on_conic": q + 1, "internal": q * (q - 1) // 2,
                               "external": q * (q + 1) // 2}
    assert line_census(C) == {"tangent": q + 1, "secant": q * (q + 1) // 2,
                              "external": q * (q - 1) // 2}
    counts = internal_counts_by_line_class(C)
    assert counts[LineClass.SECANT] == [(q - 1) // 2]
    assert counts[LineClass.EXTERNAL_LINE] == [(q + 1) // 2]
    assert counts[LineClass.TANGENT] == [0]


def test_line_examples():
    F = make_field(7)
    C = standard_conic(F)
    assert classify_line(C, ProjLine(F, (0, 1, -1))).internal_points == 3
    ext = [l for l in all_lines(F) if classify_line(C, l).kind is LineClass.EXTERNAL_LINE]
    assert {classify_line(C, l).internal_points for l in ext} == {4}


@pytest.mark.parametrize("p,h", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_classification_oracle_agrees(p, h):
    F = make_field(p, h)
    for s in enumerate_elements(F):
        K = pencil_conic(F, s)
        for P in all_points(F):
            assert classify_point(K, P) is classify_point_by_character(K, P)


def test_q5_point_example():
    F = make_field(5)
    C = standard_conic(F)
    P = ProjPoint(F, (0, 2, 1))
    assert classify_point(C, P) is classify_point_by_character(C, P) is PointClass.INTERNAL


def test_tangent_index_examples():
    F7, F5 = make_field(7), make_field(5)
    assert tangent_pencil_index(ProjLine(F7, (2, -1, 3))).value == 3
    assert tangent_pencil_index(ProjLine(F7, (0, 1, 0))).value == 0
    assert tangent_pencil_index(ProjLine(F5, (2, -1, -1))).value == 0
    with pytest.raises(LineThroughYInfinity):
        tangent_pencil_index(ProjLine(F7, (1, 0, -3)))


def test_pencil_relation_examples():
    F = make_field(7)
    assert pencil_relation(F.element(3), F.element(5)) is Relation.EXTERNAL_TO
    assert pencil_relation(F.element(5), F.element(3)) is Relation.INTERNAL_TO


def test_internal_subfamilies():
    F7 = make_field(7)
    assert {e.value for e in pencil_family(F7).internal_indices} == {3, 5, 6}
    assert {e.value for e in internal_subfamily(F7.element(3))} == {6}
    F3 = make_field(3)
    assert internal_subfamily(F3.element(2)) == frozenset()
    F11 = make_field(11)
    assert {len(internal_subfamily(s)) for s in pencil_family(F11).internal_indices} == {2}
    with pytest.raises(NotInternalIndex):
        internal_subfamily(F7.element(1))
    with pytest.raises(WrongCongruenceClass):
        internal_subfamily(make_field(5).element(2))


def test_character_matrix_q7():
    cm = character_matrix(make_field(7))
    assert cm.matrix == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    assert cm.rank == 2 and cm.minor_det == 1
    assert [[int(x) for x in v] for v in cm.nullspace] == [[1, 1, 1]]


def test_character_matrix_q3():
    cm = character_matrix(make_field(3))
    assert cm.matrix == [[0]] and cm.rank == 0


@pytest.mark.parametrize("q", [7, 11, 19, 23])
def test_character_matrix_against_sympy(q):
    cm = character_matrix(make_field(q))
    M = sympy.Matrix(cm.matrix)
    k = (q - 1) // 2
    assert M.rank() == cm.rank == k - 1
    ns = M.nullspace()
    assert len(ns) == 1 and list(ns[0] / ns[0][0]) == [1] * k
    assert M[1:, 1:].det() == cm.minor_det
    assert cm.minor_det % 2 == 1


def test_exact_linear_algebra():
    assert bareiss([[2, 4], [1, 3]]) == (2, 2)
    assert bareiss([[1, 2], [2, 4]])[0] == 1
    assert nullspace([[1, 1]]) == [[-1, 1]]
    assert det_gf2([[1, 1], [1, 0]]) == 1
