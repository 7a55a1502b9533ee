import random
from fractions import Fraction

import pytest

from helpers import random_distinct_points

from isoclass import (
    IsotoneProblem,
    ValidationError,
    brute_force_solve,
    build_dag,
    lattice_dag,
    solve,
)


def chain(n):
    return build_dag([(i,) for i in range(n)])


def test_solve_unconstrained_optimum_feasible():
    values, objective = solve(IsotoneProblem(chain(2), (-1, 1)))
    assert values == [-1, 1]
    assert objective == 2


def test_solve_tied_optima_return_maximal_set():
    values, objective = solve(IsotoneProblem(chain(2), (1, -1)))
    assert values == [1, 1]
    assert objective == 0


def test_solve_antichain_independent_signs():
    dag = build_dag([(0, 1), (1, 0)])
    values, objective = solve(IsotoneProblem(dag, (3, -2)))
    assert values == [1, -1]
    assert objective == 5


def test_single_negative_node():
    values, objective = solve(IsotoneProblem(build_dag([(0,)]), (-5,)))
    assert values == [-1]
    assert objective == 5


def test_all_zero_coefficients_return_full_support():
    dag = build_dag([(0, 0), (0, 1), (1, 1)])
    values, objective = solve(IsotoneProblem(dag, (0, 0, 0)))
    assert values == [1, 1, 1]
    assert objective == 0


def test_empty_problem():
    values, objective = solve(IsotoneProblem(build_dag([]), ()))
    assert values == []
    assert objective == 0


def test_brute_force_matches_examples():
    for coeffs, want in (((-1, 1), [-1, 1]), ((1, -1), [1, 1])):
        values, objective = brute_force_solve(IsotoneProblem(chain(2), coeffs))
        assert values == want
        assert objective == solve(IsotoneProblem(chain(2), coeffs))[1]


def test_brute_force_refuses_large_problems():
    with pytest.raises(ValidationError):
        brute_force_solve(IsotoneProblem(chain(16), (1,) * 16))


def _random_problem(rng):
    d = rng.randint(1, 3)
    pts = random_distinct_points(rng, rng.randint(1, 12), d, grid=4)
    dag = build_dag(pts)
    coeffs = tuple(Fraction(rng.randint(-24, 24), rng.randint(1, 6)) for _ in pts)
    return IsotoneProblem(dag, coeffs)


def test_solve_equals_brute_force_on_random_instances():
    rng = random.Random(101)
    for _ in range(150):
        problem = _random_problem(rng)
        got = solve(problem)
        want = brute_force_solve(problem)
        assert got == want


def test_solution_plus_set_is_an_up_set():
    rng = random.Random(55)
    for _ in range(50):
        problem = _random_problem(rng)
        values, _ = solve(problem)
        assert problem.dag.is_up_set([v > 0 for v in values])


def _random_feasible_vector(rng, dag):
    # monotone fractional vector: relax each node up to its predecessors
    values = [Fraction(rng.randint(-20, 20), 20) for _ in range(dag.n)]
    for _ in range(dag.n):
        for i, j in dag.cover_edges:
            if values[j] < values[i]:
                values[j] = values[i]
    return values


def test_solve_beats_random_feasible_fractional_vectors():
    rng = random.Random(77)
    for _ in range(10):
        problem = _random_problem(rng)
        _, objective = solve(problem)
        for _ in range(100):
            vec = _random_feasible_vector(rng, problem.dag)
            value = sum(c * v for c, v in zip(problem.coeffs, vec))
            assert value <= objective


def test_scaling_coefficients_preserves_solution():
    rng = random.Random(13)
    for _ in range(30):
        problem = _random_problem(rng)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        scaled = IsotoneProblem(problem.dag, tuple(lam * c for c in problem.coeffs))
        base_values, base_objective = solve(problem)
        scaled_values, scaled_objective = solve(scaled)
        assert scaled_values == base_values
        assert scaled_objective == lam * base_objective


def test_float_coefficients_give_float_objective():
    values, objective = solve(IsotoneProblem(chain(3), (0.5, -0.25, 1.5)))
    assert isinstance(objective, float)
    assert values == [-1, -1, 1] or values == [1, 1, 1]
    bf_values, bf_objective = brute_force_solve(IsotoneProblem(chain(3), (0.5, -0.25, 1.5)))
    assert (values, objective) == (bf_values, bf_objective)


def test_lattice_problems_use_exact_solver():
    rng = random.Random(19)
    for _ in range(40):
        dag = lattice_dag((rng.randint(1, 2), rng.randint(1, 2)))
        coeffs = tuple(Fraction(rng.randint(-9, 9), 3) for _ in range(dag.n))
        problem = IsotoneProblem(dag, coeffs)
        assert solve(problem) == brute_force_solve(problem)


def test_rejects_non_finite_coefficients():
    with pytest.raises(ValidationError):
        IsotoneProblem(chain(1), (float("nan"),))
