"""
Small dense cone programs on top of cvxpy

    minimize    cost @ theta (+ ||Q theta + r||^2)
    subject to  A theta = e
                lower <= theta <= upper
                ||G_j theta + g_j||_2 <= theta[t_j]
"""

import time
from dataclasses import dataclass, field

import cvxpy as cp
import numpy as np

from errors import InvalidArgumentError

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"
STATUS_UNBOUNDED = "unbounded"
STATUS_MAX_ITER = "max_iterations"

DEFAULT_SOLVER = "CLARABEL"
SUPPORTED_SOLVERS = ("CLARABEL", "SCS", "ECOS")

# An "optimal_inaccurate" answer is still accepted when its scaled primal
# residual stays within this many multiples of tol_rel.
INACCURATE_ACCEPT_FACTOR = 10.0


@dataclass
class SocRow:
    """||matrix @ theta + offset||_2 <= theta[epigraph]"""

    matrix: np.ndarray
    offset: np.ndarray
    epigraph: int


@dataclass
class ConeProblem:
    variable_count: int
    cost: np.ndarray
    eq_matrix: np.ndarray = None
    eq_rhs: np.ndarray = None
    lower: np.ndarray = None
    upper: np.ndarray = None
    soc_rows: list = field(default_factory=list)
    quad_matrix: np.ndarray = None
    quad_offset: np.ndarray = None

    def __post_init__(self):
        D = int(self.variable_count)
        if D < 1:
            raise InvalidArgumentError("a cone problem needs at least one variable")
        self.variable_count = D
        self.cost = np.asarray(self.cost, dtype=float).reshape(D)

        if self.eq_matrix is None:
            self.eq_matrix = np.zeros((0, D))
            self.eq_rhs = np.zeros(0)
        self.eq_matrix = np.asarray(self.eq_matrix, dtype=float).reshape(-1, D)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=float).reshape(len(self.eq_matrix))

        self.lower = np.full(D, -np.inf) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.full(D, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)
        if self.lower.shape != (D,) or self.upper.shape != (D,):
            raise InvalidArgumentError("bounds must have one entry per variable")
        if np.any(self.lower > self.upper):
            raise InvalidArgumentError("lower bound above upper bound")

        for name in ("cost", "eq_matrix", "eq_rhs"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise InvalidArgumentError(f"{name} must be finite")

        for row in self.soc_rows:
            row.matrix = np.atleast_2d(np.asarray(row.matrix, dtype=float))
            row.offset = np.asarray(row.offset, dtype=float).reshape(len(row.matrix))
            if row.matrix.shape[1] != D:
                raise InvalidArgumentError("cone row width does not match the variable count")
            if not 0 <= row.epigraph < D or self.lower[row.epigraph] < 0:
                raise InvalidArgumentError(
                    f"cone row epigraph variable {row.epigraph} must exist and be bounded below by 0"
                )

        if self.quad_matrix is not None:
            self.quad_matrix = np.atleast_2d(np.asarray(self.quad_matrix, dtype=float))
            if self.quad_matrix.shape[1] != D:
                raise InvalidArgumentError("quadratic term width does not match the variable count")
            if self.quad_offset is None:
                self.quad_offset = np.zeros(len(self.quad_matrix))
            self.quad_offset = np.asarray(self.quad_offset, dtype=float).reshape(len(self.quad_matrix))

    def objective(self, theta):
        value = float(self.cost @ theta)
        if self.quad_matrix is not None:
            value += float(np.sum((self.quad_matrix @ theta + self.quad_offset) ** 2))
        return value

    def primal_residual(self, theta):
        """Largest constraint violation, scaled by the size of the data it involves."""
        worst = 0.0
        if len(self.eq_matrix):
            scale = 1.0 + np.max(np.abs(self.eq_rhs), initial=0.0)
            worst = max(worst, np.max(np.abs(self.eq_matrix @ theta - self.eq_rhs)) / scale)
        worst = max(worst, np.max(self.lower - theta, initial=0.0))
        worst = max(worst, np.max(theta - self.upper, initial=0.0))
        for row in self.soc_rows:
            gap = np.linalg.norm(row.matrix @ theta + row.offset) - theta[row.epigraph]
            scale = 1.0 + np.max(np.abs(row.offset), initial=0.0)
            worst = max(worst, gap / scale)
        return float(worst)


@dataclass
class ConeSolution:
    theta: np.ndarray
    objective_value: float
    status: str
    iterations: int
    primal_residual: float
    dual_residual: float
    solver: str
    solve_time: float

    @property
    def is_optimal(self):
        return self.status == STATUS_OPTIMAL


def _solver_options(solver, tol_rel, max_iter):
    if solver == "CLARABEL":
        return {"tol_gap_rel": tol_rel, "tol_gap_abs": tol_rel, "tol_feas": tol_rel, "max_iter": max_iter}
    if solver == "SCS":
        return {"eps_rel": tol_rel, "eps_abs": tol_rel, "max_iters": max_iter}
    if solver == "ECOS":
        return {"reltol": tol_rel, "abstol": tol_rel, "feastol": tol_rel, "max_iters": max_iter}
    raise InvalidArgumentError(f"unsupported solver {solver!r}; choose one of {SUPPORTED_SOLVERS}")


def _soc_constraints(theta, rows):
    """Group cone rows by dimension into stacked cvxpy SOC constraints."""
    by_dim = {}
    for row in rows:
        by_dim.setdefault(len(row.offset), []).append(row)

    constraints = []
    for dim, group in by_dim.items():
        stacked = np.stack([row.matrix for row in group])   # (n, dim, D)
        offsets = np.stack([row.offset for row in group])   # (n, dim)
        epigraph = [row.epigraph for row in group]
        components = [stacked[:, c, :] @ theta + offsets[:, c] for c in range(dim)]
        constraints.append(cp.SOC(theta[epigraph], cp.vstack(components), axis=0))
    return constraints


def _dual_residual(stats):
    extra = getattr(stats, "extra_stats", None)
    if extra is None:
        return float("nan")
    if isinstance(extra, dict):
        info = extra.get("info", extra)
        return float(info.get("res_dual", float("nan")))
    return float(getattr(extra, "r_dual", float("nan")))


def build_cvxpy_problem(problem):
    """cvxpy variable and problem for a ConeProblem."""
    theta = cp.Variable(problem.variable_count)
    objective = problem.cost @ theta
    if problem.quad_matrix is not None:
        objective = objective + cp.sum_squares(problem.quad_matrix @ theta + problem.quad_offset)

    constraints = []
    if len(problem.eq_matrix):
        constraints.append(problem.eq_matrix @ theta == problem.eq_rhs)
    fixed = problem.lower == problem.upper
    fixed_idx = np.flatnonzero(fixed)
    if len(fixed_idx):
        constraints.append(theta[fixed_idx] == problem.lower[fixed_idx])
    lower_idx = np.flatnonzero(np.isfinite(problem.lower) & ~fixed)
    upper_idx = np.flatnonzero(np.isfinite(problem.upper) & ~fixed)
    if len(lower_idx):
        constraints.append(theta[lower_idx] >= problem.lower[lower_idx])
    if len(upper_idx):
        constraints.append(theta[upper_idx] <= problem.upper[upper_idx])
    constraints.extend(_soc_constraints(theta, problem.soc_rows))
    return theta, cp.Problem(cp.Minimize(objective), constraints)


def classify_status(cvxpy_status, primal_residual, tol_rel):
    """Map a cvxpy status and the scaled primal residual onto our four statuses."""
    if cvxpy_status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE):
        return STATUS_INFEASIBLE
    if cvxpy_status in (cp.UNBOUNDED, cp.UNBOUNDED_INACCURATE):
        return STATUS_UNBOUNDED
    if not np.isfinite(primal_residual):
        return STATUS_MAX_ITER
    if cvxpy_status == cp.OPTIMAL:
        return STATUS_OPTIMAL
    # optimal_inaccurate or a user-limit stop with a usable point
    if primal_residual <= INACCURATE_ACCEPT_FACTOR * tol_rel:
        return STATUS_OPTIMAL
    return STATUS_MAX_ITER


def solve(problem, tol_rel=1e-8, max_iter=50000, solver=None):
    """Solve a ConeProblem; infeasibility is reported through the status, not raised."""
    solver = (solver or DEFAULT_SOLVER).upper()
    options = _solver_options(solver, tol_rel, max_iter)
    theta, prob = build_cvxpy_problem(problem)

    start = time.time()
    try:
        prob.solve(solver=solver, **options)
    except cp.error.SolverError:
        return ConeSolution(
            theta=np.full(problem.variable_count, np.nan),
            objective_value=float("nan"),
            status=STATUS_MAX_ITER,
            iterations=max_iter,
            primal_residual=float("nan"),
            dual_residual=float("nan"),
            solver=solver,
            solve_time=time.time() - start,
        )
    elapsed = time.time() - start

    stats = prob.solver_stats
    iterations = int(stats.num_iters) if stats is not None and stats.num_iters is not None else 0
    dual = _dual_residual(stats) if stats is not None else float("nan")

    if theta.value is None:
        values = np.full(problem.variable_count, np.nan)
        primal = float("nan")
        objective = float("nan")
    else:
        values = np.asarray(theta.value, dtype=float)
        primal = problem.primal_residual(values)
        objective = problem.objective(values)
    status = classify_status(prob.status, primal, tol_rel)

    return ConeSolution(
        theta=values,
        objective_value=objective,
        status=status,
        iterations=iterations,
        primal_residual=primal,
        dual_residual=dual,
        solver=solver,
        solve_time=elapsed,
    )
