import cvxpy as cp
import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cone_solver import (
    STATUS_INFEASIBLE,
    STATUS_MAX_ITER,
    STATUS_OPTIMAL,
    STATUS_UNBOUNDED,
    ConeProblem,
    SocRow,
    classify_status,
    solve,
)
from errors import InvalidArgumentError


def projection_problem():
    # minimize t  s.t.  ||(theta1 - 1, theta2 - 2)|| <= t
    return ConeProblem(
        variable_count=3,
        cost=[0.0, 0.0, 1.0],
        lower=[-np.inf, -np.inf, 0.0],
        soc_rows=[SocRow(matrix=[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], offset=[-1.0, -2.0], epigraph=2)],
    )


def test_projection_onto_point():
    solution = solve(projection_problem())
    assert solution.status == STATUS_OPTIMAL
    npt.assert_allclose(solution.theta, [1.0, 2.0, 0.0], atol=1e-6)
    assert solution.objective_value == pytest.approx(0.0, abs=1e-6)


def test_active_box():
    solution = solve(ConeProblem(variable_count=1, cost=[1.0], lower=[3.0]))
    assert solution.is_optimal
    assert solution.theta[0] == pytest.approx(3.0, abs=1e-7)


def test_distance_to_halfline():
    problem = ConeProblem(
        variable_count=2,
        cost=[0.0, 1.0],
        lower=[-np.inf, 0.0],
        upper=[0.0, np.inf],
        soc_rows=[SocRow(matrix=[[1.0, 0.0]], offset=[-1.0], epigraph=1)],
    )
    solution = solve(problem)
    assert solution.is_optimal
    npt.assert_allclose(solution.theta, [0.0, 1.0], atol=1e-6)


def test_planted_least_squares():
    rng = np.random.default_rng(11)
    Q = rng.normal(size=(12, 4))
    planted = np.array([0.5, -1.0, 2.0, 0.25])
    problem = ConeProblem(variable_count=4, cost=np.zeros(4), quad_matrix=Q, quad_offset=-Q @ planted)
    solution = solve(problem)
    assert solution.is_optimal
    npt.assert_allclose(solution.theta, planted, atol=1e-5)
    assert solution.primal_residual <= 1e-7


def test_equality_rows_and_fixed_bounds():
    # minimize x + 2y s.t. x + y = 3, y fixed at 0.5 through equal bounds
    problem = ConeProblem(
        variable_count=2,
        cost=[1.0, 2.0],
        eq_matrix=[[1.0, 1.0]],
        eq_rhs=[3.0],
        lower=[-np.inf, 0.5],
        upper=[np.inf, 0.5],
    )
    solution = solve(problem)
    assert solution.is_optimal
    npt.assert_allclose(solution.theta, [2.5, 0.5], atol=1e-7)


def test_infeasible_reports_status():
    problem = ConeProblem(
        variable_count=2,
        cost=[1.0, 1.0],
        eq_matrix=[[1.0, 1.0]],
        eq_rhs=[1.0],
        upper=[0.0, 0.0],
    )
    solution = solve(problem)
    assert solution.status == STATUS_INFEASIBLE
    assert np.all(np.isnan(solution.theta))


def test_unbounded_reports_status():
    solution = solve(ConeProblem(variable_count=1, cost=[1.0], upper=[5.0]))
    assert solution.status == STATUS_UNBOUNDED


def test_deterministic():
    first = solve(projection_problem())
    second = solve(projection_problem())
    npt.assert_array_equal(first.theta, second.theta)
    assert first.iterations == second.iterations


def test_residual_of_planted_point():
    problem = projection_problem()
    assert problem.primal_residual(np.array([1.0, 2.0, 0.0])) == 0.0
    assert problem.primal_residual(np.array([1.0, 2.0, -0.5])) == pytest.approx(0.5)
    assert problem.objective(np.array([1.0, 2.0, 0.25])) == 0.25


@pytest.mark.parametrize("kwargs", [
    {"variable_count": 0, "cost": []},
    {"variable_count": 2, "cost": [1.0, 1.0], "lower": [1.0, 0.0], "upper": [0.0, 1.0]},
    {"variable_count": 2, "cost": [np.nan, 1.0]},
    {"variable_count": 2, "cost": [0.0, 1.0],
     "soc_rows": [SocRow(matrix=[[1.0, 0.0]], offset=[0.0], epigraph=1)]},
])
def test_invalid_problems(kwargs):
    with pytest.raises(InvalidArgumentError):
        ConeProblem(**kwargs)


def test_unknown_solver():
    with pytest.raises(InvalidArgumentError):
        solve(projection_problem(), solver="simplex")


@pytest.mark.parametrize("cvxpy_status, primal, expected", [
    (cp.OPTIMAL, 0.0, STATUS_OPTIMAL),
    (cp.OPTIMAL_INACCURATE, 5e-8, STATUS_OPTIMAL),
    (cp.OPTIMAL_INACCURATE, 1e-6, STATUS_MAX_ITER),
    ("user_limit", 2e-7, STATUS_MAX_ITER),
    (cp.OPTIMAL, float("nan"), STATUS_MAX_ITER),
    (cp.INFEASIBLE_INACCURATE, float("nan"), STATUS_INFEASIBLE),
    (cp.UNBOUNDED, float("nan"), STATUS_UNBOUNDED),
])
def test_classify_status_follows_the_tolerance(cvxpy_status, primal, expected):
    assert classify_status(cvxpy_status, primal, tol_rel=1e-8) == expected


def test_inaccurate_acceptance_scales_with_the_tolerance():
    assert classify_status(cp.OPTIMAL_INACCURATE, 1e-6, tol_rel=1e-6) == STATUS_OPTIMAL
    assert classify_status(cp.OPTIMAL_INACCURATE, 1e-6, tol_rel=1e-8) == STATUS_MAX_ITER


def planted_linear_program(seed):
    """min c @ theta, A theta = e, theta >= 0, built around a known unique optimum."""
    rng = np.random.default_rng(seed)
    D, m, active = 6, 3, 3
    A = rng.normal(size=(m, D))
    theta = np.concatenate([np.zeros(active), rng.uniform(0.5, 2.0, D - active)])
    y = rng.normal(size=m)
    s = np.concatenate([rng.uniform(0.5, 2.0, active), np.zeros(D - active)])
    problem = ConeProblem(
        variable_count=D,
        cost=A.T @ y + s,
        eq_matrix=A,
        eq_rhs=A @ theta,
        lower=np.zeros(D),
    )
    return problem, theta, float(y @ (A @ theta))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_planted_linear_programs(seed):
    tol = 1e-8
    problem, theta, optimum = planted_linear_program(seed)
    solution = solve(problem, tol_rel=tol)
    assert solution.status == STATUS_OPTIMAL
    assert solution.primal_residual <= 10 * tol
    assert solution.objective_value == pytest.approx(optimum, abs=1e-6 * (1.0 + abs(optimum)))
    npt.assert_allclose(solution.theta, theta, atol=1e-4)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_planted_projection_onto_orthant(seed):
    # min t  s.t.  ||theta - a|| <= t, theta >= 0  ->  theta = max(a, 0)
    tol = 1e-8
    rng = np.random.default_rng(seed)
    a = rng.normal(size=5)
    problem = ConeProblem(
        variable_count=6,
        cost=np.append(np.zeros(5), 1.0),
        lower=np.zeros(6),
        soc_rows=[SocRow(matrix=np.hstack([np.eye(5), np.zeros((5, 1))]), offset=-a, epigraph=5)],
    )
    solution = solve(problem, tol_rel=tol)
    assert solution.status == STATUS_OPTIMAL
    assert solution.primal_residual <= 10 * tol
    assert solution.objective_value == pytest.approx(np.linalg.norm(np.minimum(a, 0.0)), abs=1e-6)
    npt.assert_allclose(solution.theta[:5], np.maximum(a, 0.0), atol=1e-5)
