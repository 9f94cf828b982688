from collections import Counter

import pytest

from conic_partitions import Mode, brute_force_solve, build_instance, make_field, solve_all
from conic_partitions.errors import InstanceTooLarge
from conic_partitions.families import Provenance
from conic_partitions.search import CoverInstance, SolutionSet


def _multiset(sols):
    return Counter(sols.id_lists())


def test_instance_shapes():
    inst = build_instance(make_field(3))
    assert inst.n_columns == 3
    assert Counter(len(c) for c in inst.row_to_columns) == {1: 6, 2: 3}
    inst = build_instance(make_field(7))
    assert inst.n_columns == 21
    assert Counter(len(c) for c in inst.row_to_columns) == {3: 28, 4: 21}


def test_q3_counts():
    # size 3: the 4 conic-point pencils plus 4 inscribed triangles
    sols = solve_all(build_instance(make_field(3)))
    assert sols.size_counts() == {2: 6, 3: 8}


def test_q5_counts():
    assert solve_all(build_instance(make_field(5))).size_counts() == {4: 15, 5: 6}


@pytest.mark.parametrize("q", [3, 5])
def test_brute_force_agrees(q):
    inst = build_instance(make_field(q))
    assert _multiset(solve_all(inst)) == _multiset(brute_force_solve(inst))


@pytest.mark.parametrize("q,size,count", [(5, 4, 25), (7, 6, 42)])
def test_cover_mode_counts(q, size, count):
    inst = build_instance(make_field(q), Mode.AT_LEAST_ONCE, size)
    sols = solve_all(inst)
    assert len(sols) == count
    exact = {L.line_ids for L in solve_all(build_instance(make_field(q), size_filter=size)).solutions}
    assert exact < {L.line_ids for L in sols.solutions}


def test_cover_mode_matches_brute_force_q5():
    inst = build_instance(make_field(5), Mode.AT_LEAST_ONCE, 4)
    assert _multiset(solve_all(inst)) == _multiset(brute_force_solve(inst))


def test_q9_size_filter():
    from conic_partitions.classify import canonical_partition, conic_stabilizer
    from conic_partitions import baer_subplane_partition
    F = make_field(3, 2)
    sols = solve_all(build_instance(F, size_filter=9))
    assert sols.size_counts() == {9: 40}
    G = conic_stabilizer(F)
    baer = canonical_partition(baer_subplane_partition(F), G).line_ids
    assert sum(1 for L in sols.solutions if canonical_partition(L, G).line_ids == baer) == 30


def test_empty_universe():
    F = make_field(3)
    inst = CoverInstance(F, [], [], [])
    for sols in (solve_all(inst), brute_force_solve(inst)):
        assert sols.id_lists() == [()]


def test_deterministic_and_threads():
    inst = build_instance(make_field(7))
    a, b, c = solve_all(inst), solve_all(inst), solve_all(inst, threads=2)
    assert a.id_lists() == b.id_lists() == c.id_lists()
    assert a.to_json() == c.to_json() or a.stats["nodes"] != c.stats["nodes"]
    assert all(L.provenance is Provenance.SEARCH_RESULT for L in a.solutions)


def test_budget():
    with pytest.raises(InstanceTooLarge) as info:
        solve_all(build_instance(make_field(7)), node_budget=10)
    assert info.value.nodes > 10


def test_solution_json_has_no_timing_by_default():
    sols = solve_all(build_instance(make_field(3)))
    assert "elapsed_seconds" not in sols.to_json()["stats"]
    assert "elapsed_seconds" in sols.to_json(timings=True)["stats"]
    assert isinstance(sols, SolutionSet)
