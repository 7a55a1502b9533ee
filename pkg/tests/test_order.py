import random
from fractions import Fraction

import pytest

from helpers import random_distinct_points

from isoclass import ValidationError, build_dag, dominates, enumerate_up_sets, lattice_dag
from isoclass.order import iter_up_set_masks


def test_dominates_basics():
    assert dominates((0, 0), (1, 1))
    assert not dominates((0, 1), (1, 0))
    assert not dominates((1, 0), (0, 1))
    assert dominates((2, 3), (2, 3))


def test_dominates_dimension_mismatch():
    with pytest.raises(ValidationError):
        dominates((0,), (0, 1))


def test_build_dag_chain():
    dag = build_dag([(0,), (1,), (2,)])
    assert dag.cover_edges == ((0, 1), (1, 2))
    assert dag.chain_order == (0, 1, 2)


def test_build_dag_antichain():
    dag = build_dag([(0, 1), (1, 0)])
    assert dag.cover_edges == ()
    assert dag.chain_order is None


def test_build_dag_square_removes_diagonal():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    dag = build_dag(pts)
    assert len(dag.cover_edges) == 4
    assert (0, 3) not in dag.cover_edges  # implied by the two-step paths


def test_build_dag_rejects_duplicates():
    with pytest.raises(ValidationError):
        build_dag([(0, 0), (0, 0)])


def test_build_dag_handles_rational_coordinates():
    pts = [(Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 2), Fraction(1, 2)), (Fraction(2, 3), Fraction(1, 4))]
    dag = build_dag(pts)
    assert (0, 1) in dag.cover_edges
    assert all(dominates(dag.nodes[i], dag.nodes[j]) for i, j in dag.cover_edges)


def _reachable(dag, start):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in dag.successors[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def test_reachability_equals_dominance_on_random_clouds():
    rng = random.Random(41)
    for _ in range(40):
        d = rng.randint(1, 4)
        pts = random_distinct_points(rng, rng.randint(1, 50), d, grid=4)
        dag = build_dag(pts)
        for i in range(len(pts)):
            reach = _reachable(dag, i)
            for j in range(len(pts)):
                assert (j in reach) == dominates(pts[i], pts[j])


def test_up_set_count_chain_and_antichain():
    chain = build_dag([(i,) for i in range(6)])
    assert sum(1 for _ in enumerate_up_sets(chain)) == 7
    anti = build_dag([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert sum(1 for _ in enumerate_up_sets(anti)) == 8


def test_up_sets_of_empty_dag():
    dag = build_dag([])
    assert [g.members for g in enumerate_up_sets(dag)] == [()]


def test_chain_up_sets_are_suffixes():
    dag = build_dag([(0,), (1,), (2,)])
    got = sorted(g.indices for g in enumerate_up_sets(dag))
    assert got == [(), (0, 1, 2), (1, 2), (2,)]


def test_every_enumerated_set_passes_membership_check():
    rng = random.Random(4)
    for _ in range(25):
        pts = random_distinct_points(rng, rng.randint(1, 8), rng.randint(1, 3))
        dag = build_dag(pts)
        seen = set()
        for g in enumerate_up_sets(dag):
            assert dag.is_up_set(g.members)
            assert g.members not in seen
            seen.add(g.members)


def test_enumeration_refuses_large_inputs():
    dag = build_dag([(i,) for i in range(16)])
    with pytest.raises(ValidationError):
        list(enumerate_up_sets(dag))
    assert len(list(iter_up_set_masks(dag, node_limit=16))) == 17


def test_lattice_dag_matches_build_dag():
    lat = lattice_dag((2, 1))
    direct = build_dag(list(lat.nodes))
    assert set(lat.cover_edges) == set(direct.cover_edges)
    assert lat.nodes[0] == (0, 0)
    assert lat.nodes[-1] == (2, 1)


def test_lattice_dag_one_dimension_is_chain():
    lat = lattice_dag((4,))
    assert lat.chain_order == tuple(range(5))
