"""
Constrained quasi-Herglotz approximation

Builds the weighted L^p(w, Omega) approximation problem for a Scenario,
solves it as a cone program, and runs parameter sweeps and convergence
studies over scenario families.
"""

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

import cone_solver
import config
import spline_basis
from cone_solver import ConeProblem, SocRow
from errors import AssemblyError, InvalidArgumentError, SolverFailedError
from representation import (
    QuasiHerglotzRep,
    boundary_design,
    eval_boundary_many,
    mass_at_zero,
)
from sum_rules import SumRuleConstraint, mass_row, moments_row, passive_bound

NORMS = (1, 2, math.inf)
SWEEP_AXES = ("B", "x_u", "eps_s")
CHEBYSHEV_NODES = 16


# ---------------------------------------------------------------------------
# Targets and weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantPermittivity:
    """F(x) = x * eps_t, so that ||q - F||_{L^inf(1/x)} = ||eps - eps_t||_inf."""

    eps_t: float

    def __call__(self, x):
        return np.asarray(x, dtype=float) * self.eps_t + 0j

    def to_dict(self):
        return {"kind": "constant_permittivity", "eps_t": self.eps_t}


@dataclass(frozen=True, eq=False)
class SampledTarget:
    """Linear interpolation of tabulated complex samples."""

    x: np.ndarray
    values: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.x[0], self.x[-1]
        if np.any(x < lo) or np.any(x > hi):
            raise AssemblyError(f"target table covers [{lo}, {hi}] only")
        re = np.interp(x, self.x, self.values.real)
        im = np.interp(x, self.x, self.values.imag)
        return re + 1j * im

    def to_dict(self):
        return {
            "kind": "samples",
            "x": self.x.tolist(),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }


@dataclass(frozen=True, eq=False)
class RepresentationTarget:
    """Boundary values of a given representation (planted-solution problems)."""

    rep: QuasiHerglotzRep

    def __call__(self, x):
        return eval_boundary_many(self.rep, x)

    def to_dict(self):
        return {"kind": "representation"}


@dataclass(frozen=True)
class InverseWeight:
    def __call__(self, x):
        return 1.0 / np.asarray(x, dtype=float)

    def to_dict(self):
        return {"kind": "inverse"}


@dataclass(frozen=True)
class UnitWeight:
    def __call__(self, x):
        return np.ones_like(np.asarray(x, dtype=float))

    def to_dict(self):
        return {"kind": "unit"}


@dataclass(frozen=True, eq=False)
class SampledWeight:
    """Linear interpolation of a positive weight table."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or len(x) < 2 or values.shape != x.shape:
            raise InvalidArgumentError("a weight table needs matching x and w with at least 2 rows")
        if np.any(np.diff(x) <= 0):
            raise InvalidArgumentError("weight table abscissae must increase")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise InvalidArgumentError("weight table values must be finite and positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", values)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.x[0], self.x[-1]
        if np.any(x < lo) or np.any(x > hi):
            raise AssemblyError(f"weight table covers [{lo}, {hi}] only")
        return np.interp(x, self.x, self.values)

    def to_dict(self):
        return {"kind": "samples", "x": self.x.tolist(), "w": self.values.tolist()}


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Union of closed intervals and isolated points."""

    intervals: tuple = ()
    points: tuple = ()

    def __post_init__(self):
        intervals = tuple(sorted((float(lo), float(hi)) for lo, hi in self.intervals))
        for lo, hi in intervals:
            if not hi > lo:
                raise InvalidArgumentError(f"empty region interval [{lo}, {hi}]")
        object.__setattr__(self, "intervals", intervals)
        object.__setattr__(self, "points", tuple(sorted(float(p) for p in self.points)))

    @property
    def is_empty(self):
        return not self.intervals and not self.points

    def interval_containing(self, lo, hi, tol=1e-9):
        for a, b in self.intervals:
            scale = tol * max(1.0, abs(a), abs(b))
            if a - scale <= lo and hi <= b + scale:
                return (a, b)
        return None

    def overlaps(self, other):
        """True when the two regions share an interval piece or a point."""
        for a, b in self.intervals:
            if any(min(b, d) > max(a, c) for c, d in other.intervals):
                return True
            if any(a <= p <= b for p in other.points):
                return True
        if any(a <= p <= b for a, b in other.intervals for p in self.points):
            return True
        return bool(set(self.points) & set(other.points))

    def to_dict(self):
        return {"intervals": [list(iv) for iv in self.intervals], "points": list(self.points)}


@dataclass(frozen=True)
class BasisSpec:
    count: int
    order: int = 2
    support: tuple = None   # defaults to the hull of the continuum parts of Omega_opt


@dataclass(frozen=True)
class Scenario:
    label: str
    omega: tuple
    target: object
    weight: object = InverseWeight()
    norm_p: float = math.inf
    region_pos: Region = Region()
    region_neg: Region = Region()
    basis_spec: BasisSpec = None
    symmetric: bool = True
    b_fixed: float = None
    b_bounds: tuple = (-math.inf, math.inf)
    density_lower: float = None
    density_upper: float = None
    sum_rule_rows: tuple = ()
    samples_per_cell: int = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        omega = tuple(sorted((float(lo), float(hi)) for lo, hi in self.omega))
        if not omega:
            raise InvalidArgumentError("approximation domain is empty")
        for lo, hi in omega:
            if not hi > lo:
                raise InvalidArgumentError(f"empty approximation interval [{lo}, {hi}]")
        object.__setattr__(self, "omega", omega)
        if self.norm_p not in NORMS:
            raise InvalidArgumentError(f"norm index must be 1, 2 or inf, got {self.norm_p}")
        rows = tuple(
            r if isinstance(r, SumRuleConstraint) else SumRuleConstraint(*r)
            for r in self.sum_rule_rows
        )
        object.__setattr__(self, "sum_rule_rows", rows)

    @property
    def mass_specs(self):
        """(location, lower, upper) for every isolated point of the sign regions."""
        specs = [(p, 0.0, math.inf) for p in self.region_pos.points]
        specs += [(p, -math.inf, 0.0) for p in self.region_neg.points]
        return specs

    @property
    def mass_locations(self):
        return [loc for loc, _, _ in self.mass_specs]

    def continuum_hull(self):
        intervals = self.region_pos.intervals + self.region_neg.intervals
        if not intervals:
            return None
        return min(a for a, _ in intervals), max(b for _, b in intervals)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Assembly:
    problem: ConeProblem
    basis: object
    mass_locations: list
    symmetric: bool
    parameter_count: int
    x: np.ndarray
    quad_weights: np.ndarray
    design: np.ndarray
    target_values: np.ndarray
    weight_values: np.ndarray
    norm_p: float

    def rep_from(self, theta):
        return QuasiHerglotzRep.from_parameters(
            theta[: self.parameter_count], self.mass_locations, self.basis, self.symmetric
        )


def build_basis(scenario):
    spec = scenario.basis_spec
    if spec is None or spec.count == 0:
        return None
    support = spec.support or scenario.continuum_hull()
    if support is None:
        raise AssemblyError("a spline basis needs continuum sign regions or an explicit support")
    try:
        return spline_basis.make_uniform_basis(support[0], support[1], spec.count, spec.order)
    except InvalidArgumentError as e:
        raise AssemblyError(str(e)) from e


def _check_scenario(scenario):
    if scenario.region_pos.overlaps(scenario.region_neg):
        raise AssemblyError("the non-negative and non-positive regions overlap")
    if scenario.symmetric:
        if any(lo < 0 for lo, _ in scenario.omega):
            raise AssemblyError("symmetric scenarios give the x >= 0 half of Omega only")
    for loc in scenario.mass_locations:
        for lo, hi in scenario.omega:
            if lo <= loc <= hi or (scenario.symmetric and lo <= -loc <= hi):
                raise AssemblyError(f"point mass at {loc} lies inside Omega")
    if isinstance(scenario.weight, InverseWeight):
        if any(lo <= 0.0 <= hi for lo, hi in scenario.omega):
            raise AssemblyError("w(x) = 1/x needs 0 outside Omega")


def sample_grid(scenario, basis=None):
    """Sample abscissae in Omega with trapezoid weights.

    samples_per_cell points in every spline cell (or in every 1/64 of the
    interval without splines) plus Chebyshev nodes clustered at the ends.
    """
    per_cell = scenario.samples_per_cell or config.SAMPLES_PER_CELL
    xs, ws = [], []
    for lo, hi in scenario.omega:
        if basis is not None:
            inner = basis.breakpoints[(basis.breakpoints > lo) & (basis.breakpoints < hi)]
        else:
            inner = np.linspace(lo, hi, 65)[1:-1]
        edges = np.concatenate([[lo], inner, [hi]])
        pieces = [np.linspace(a, b, per_cell + 1) for a, b in zip(edges[:-1], edges[1:])]
        k = np.arange(CHEBYSHEV_NODES)
        cheb = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * k / (CHEBYSHEV_NODES - 1)))
        # interior nodes only; the end points come from the cell pieces
        x = np.unique(np.concatenate(pieces + [cheb[1:-1]]))
        w = np.zeros_like(x)
        gaps = np.diff(x)
        w[:-1] += 0.5 * gaps
        w[1:] += 0.5 * gaps
        xs.append(x)
        ws.append(w)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    order = np.argsort(x, kind="stable")
    return x[order], w[order]


def _density_boxes(scenario, basis):
    lower = np.zeros(basis.count)
    upper = np.zeros(basis.count)
    for n in range(1, basis.count + 1):
        lo, hi = spline_basis.support(basis, n)
        in_pos = scenario.region_pos.interval_containing(lo, hi)
        in_neg = scenario.region_neg.interval_containing(lo, hi)
        if in_pos is not None:
            lower[n - 1], upper[n - 1] = 0.0, math.inf
        elif in_neg is not None:
            lower[n - 1], upper[n - 1] = -math.inf, 0.0
        else:
            continue

        if scenario.density_lower is not None:
            lower[n - 1] = max(lower[n - 1], scenario.density_lower)
        if scenario.density_upper is not None:
            upper[n - 1] = min(upper[n - 1], scenario.density_upper)
        if lower[n - 1] > upper[n - 1]:
            raise AssemblyError(
                f"density bounds contradict the sign region of basis function {n}"
            )
    return lower, upper


def assemble(scenario):
    """Turn a Scenario into a cone problem over theta = [a_check?, b, masses, c, aux]."""
    _check_scenario(scenario)
    basis = build_basis(scenario)
    specs = scenario.mass_specs
    locations = [loc for loc, _, _ in specs]
    symmetric = scenario.symmetric

    x, quad_w = sample_grid(scenario, basis)
    if set(float(v) for v in x) & set(locations):
        raise AssemblyError("sample grid contains a point-mass location")
    design = boundary_design(x, locations, basis, symmetric)
    F = np.asarray(scenario.target(x), dtype=complex)
    w = np.asarray(scenario.weight(x), dtype=float)
    if not np.all(np.isfinite(F)) or not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise AssemblyError("target and weight must be finite with w > 0 on Omega")

    head = 1 if symmetric else 2
    count = 0 if basis is None else basis.count
    P = head + len(locations) + count

    lower = np.full(P, -np.inf)
    upper = np.full(P, np.inf)
    b_index = head - 1
    if scenario.b_fixed is not None:
        lower[b_index] = upper[b_index] = scenario.b_fixed
    else:
        lower[b_index], upper[b_index] = scenario.b_bounds
    for i, (_, lo, hi) in enumerate(specs):
        lower[head + i], upper[head + i] = lo, hi
    if basis is not None:
        lower[head + len(locations):], upper[head + len(locations):] = _density_boxes(scenario, basis)

    eq_rows, eq_rhs = [], []
    for row in scenario.sum_rule_rows:
        coeffs = np.zeros(P)
        coeffs[head : head + len(locations)] = mass_row(locations, row.power, symmetric)
        if basis is not None:
            if row.power < 0 and basis.support_lo <= 0.0 <= basis.support_hi:
                raise AssemblyError(f"sum rule of power {row.power} needs the density away from 0")
            coeffs[head + len(locations):] = moments_row(basis, row.power, symmetric)
        eq_rows.append(coeffs)
        eq_rhs.append(row.rhs)

    scaled = design * w[:, None]
    shift = F * w
    M = len(x)
    if scenario.norm_p == math.inf:
        D = P + 1
        cost = np.zeros(D)
        cost[P] = 1.0
        soc = [
            SocRow(
                matrix=np.vstack([np.append(scaled[j].real, 0.0), np.append(scaled[j].imag, 0.0)]),
                offset=np.array([-shift[j].real, -shift[j].imag]),
                epigraph=P,
            )
            for j in range(M)
        ]
        quad_matrix = quad_offset = None
        lower, upper = np.append(lower, 0.0), np.append(upper, np.inf)
    elif scenario.norm_p == 1:
        D = P + M
        cost = np.concatenate([np.zeros(P), quad_w])
        pad = np.zeros(M)
        soc = [
            SocRow(
                matrix=np.vstack([np.concatenate([scaled[j].real, pad]),
                                  np.concatenate([scaled[j].imag, pad])]),
                offset=np.array([-shift[j].real, -shift[j].imag]),
                epigraph=P + j,
            )
            for j in range(M)
        ]
        quad_matrix = quad_offset = None
        lower, upper = np.append(lower, np.zeros(M)), np.append(upper, np.full(M, np.inf))
    else:
        D = P
        cost = np.zeros(D)
        soc = []
        root = np.sqrt(quad_w)[:, None]
        quad_matrix = np.vstack([root * scaled.real, root * scaled.imag])
        quad_offset = -np.concatenate([root[:, 0] * shift.real, root[:, 0] * shift.imag])

    eq_matrix = np.zeros((len(eq_rows), D))
    if eq_rows:
        eq_matrix[:, :P] = np.array(eq_rows)

    problem = ConeProblem(
        variable_count=D,
        cost=cost,
        eq_matrix=eq_matrix,
        eq_rhs=np.array(eq_rhs),
        lower=lower,
        upper=upper,
        soc_rows=soc,
        quad_matrix=quad_matrix,
        quad_offset=quad_offset,
    )
    return Assembly(
        problem=problem,
        basis=basis,
        mass_locations=locations,
        symmetric=symmetric,
        parameter_count=P,
        x=x,
        quad_weights=quad_w,
        design=design,
        target_values=F,
        weight_values=w,
        norm_p=scenario.norm_p,
    )


# ---------------------------------------------------------------------------
# Solving and reporting
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ApproxResult:
    scenario: Scenario
    rep: QuasiHerglotzRep
    error: float
    solution: object
    x: np.ndarray
    quad_weights: np.ndarray
    q_values: np.ndarray
    target_values: np.ndarray
    weight_values: np.ndarray


def weighted_norm(residual, quad_weights, norm_p):
    """Discrete L^p norm of already weighted complex residuals."""
    magnitude = np.abs(residual)
    if norm_p == math.inf:
        return float(np.max(magnitude))
    if norm_p == 1:
        return float(np.sum(quad_weights * magnitude))
    return float(np.sqrt(np.sum(quad_weights * magnitude ** 2)))


def solve_approximation(scenario, tol_rel=None, max_iter=None, solver=None, verbose=False):
    """Solve the scenario; raises SolverFailedError unless the solver reports optimal."""
    assembly = assemble(scenario)
    solution = cone_solver.solve(
        assembly.problem,
        tol_rel=tol_rel or config.SOLVER_TOL,
        max_iter=max_iter or config.SOLVER_MAX_ITER,
        solver=solver or config.SOLVER,
    )
    if not solution.is_optimal:
        raise SolverFailedError(
            f"{scenario.label}: solver finished with status '{solution.status}'",
            status=solution.status,
        )

    rep = assembly.rep_from(solution.theta)
    q = assembly.design @ rep.parameter_vector()
    residual = assembly.weight_values * (q - assembly.target_values)
    error = weighted_norm(residual, assembly.quad_weights, scenario.norm_p)
    if verbose:
        print(f"📊 {scenario.label}: error={error:.6g} status={solution.status} "
              f"iterations={solution.iterations} time={solution.solve_time:.2f}s")
    return ApproxResult(
        scenario=scenario,
        rep=rep,
        error=error,
        solution=solution,
        x=assembly.x,
        quad_weights=assembly.quad_weights,
        q_values=q,
        target_values=assembly.target_values,
        weight_values=assembly.weight_values,
    )


def residuals_frame(result):
    return pd.DataFrame({
        "x": result.x,
        "re_q": result.q_values.real,
        "im_q": result.q_values.imag,
        "re_F": result.target_values.real,
        "im_F": result.target_values.imag,
        "w": result.weight_values,
        "abs_residual": result.weight_values * np.abs(result.q_values - result.target_values),
    })


def reference_bound(scenario):
    """Passive physical bound for constant-permittivity scenarios, else None."""
    meta = scenario.metadata
    if not all(key in meta for key in ("eps_inf", "eps_t", "B")):
        return None
    return passive_bound(meta["eps_inf"], meta["eps_t"], meta["B"])


def display_amplitudes(rep, reference_spacing):
    """Mass amplitudes in reporting units.

    The mass at 0 in angular-frequency units (2 pi)^2 p_0; a mass at xi != 0
    as the coefficient of one order-2 basis function of the reference
    spacing carrying the same area, pi p / delta_ref.
    """
    shown = []
    for m in rep.masses:
        if m.location == 0.0:
            shown.append((2.0 * math.pi) ** 2 * m.amplitude)
        else:
            shown.append(math.pi * m.amplitude / reference_spacing)
    return shown


def summarize(result):
    scenario = result.scenario
    rep = result.rep
    reference_spacing = scenario.metadata.get(
        "reference_spacing", rep.basis.spacing if rep.basis is not None else None
    )
    summary = {
        "label": scenario.label,
        "norm": "inf" if scenario.norm_p == math.inf else int(scenario.norm_p),
        "error": result.error,
        "bound": reference_bound(scenario),
        "status": result.solution.status,
        "iterations": result.solution.iterations,
        "solve_time": result.solution.solve_time,
        "b": rep.b,
        "a_check": rep.a_check,
        "p0": mass_at_zero(rep),
        "masses": [
            {"location": m.location, "amplitude": m.amplitude} for m in rep.masses
        ],
    }
    if reference_spacing:
        shown = display_amplitudes(rep, reference_spacing)
        for m, value in zip(summary["masses"], shown):
            m["display_amplitude"] = value
        summary["reference_spacing"] = reference_spacing
    nonzero = [m for m in summary["masses"] if m["location"] != 0.0]
    zero = [m for m in summary["masses"] if m["location"] == 0.0]
    if zero:
        summary["p0_display"] = zero[0].get("display_amplitude")
    for i, m in enumerate(nonzero[:2], start=1):
        summary[f"p{i}"] = m["amplitude"]
        summary[f"p{i}_display"] = m.get("display_amplitude")
    return summary


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def _move_edge(value, old_omega, new_omega):
    if math.isclose(value, old_omega[0], abs_tol=1e-12):
        return new_omega[0]
    if math.isclose(value, old_omega[1], abs_tol=1e-12):
        return new_omega[1]
    return value


def _resize_region(region, old_omega, new_omega):
    intervals = []
    for lo, hi in region.intervals:
        lo, hi = _move_edge(lo, old_omega, new_omega), _move_edge(hi, old_omega, new_omega)
        if hi > lo:
            intervals.append((lo, hi))
    return Region(intervals=tuple(intervals), points=region.points)


def scenario_at(template, parameter, value):
    """Copy of the template with one sweep axis set to value."""
    if parameter == "B":
        if not 0 < value < 2:
            raise InvalidArgumentError(f"relative bandwidth must lie in (0, 2), got {value}")
        if len(template.omega) != 1:
            raise InvalidArgumentError("the B axis needs a single-interval Omega")
        old = template.omega[0]
        centre = 0.5 * (old[0] + old[1])
        new = (centre - value / 2.0, centre + value / 2.0)
        return replace(
            template,
            omega=(new,),
            region_pos=_resize_region(template.region_pos, old, new),
            region_neg=_resize_region(template.region_neg, old, new),
            metadata={**template.metadata, "B": value},
        )
    if parameter == "x_u":
        centre = template.metadata.get("centre", 1.0)
        points = (2.0 * centre - value, value)
        return replace(
            template,
            region_neg=Region(intervals=template.region_neg.intervals, points=points),
            metadata={**template.metadata, "x_u": value},
        )
    if parameter == "eps_s":
        eps_inf = template.metadata.get("eps_inf", template.b_fixed)
        if eps_inf is None:
            raise InvalidArgumentError("the eps_s axis needs eps_inf in the scenario metadata")
        rows = tuple(r for r in template.sum_rule_rows if r.power != -2)
        rows += (SumRuleConstraint(-2, value - eps_inf),)
        return replace(
            template,
            sum_rule_rows=rows,
            metadata={**template.metadata, "eps_s": value},
        )
    raise InvalidArgumentError(f"unknown sweep axis {parameter!r}; choose one of {SWEEP_AXES}")


@dataclass
class SweepPoint:
    value: float
    error: float
    status: str
    summary: dict
    message: str = ""


def _sweep_point(template, parameter, value, tol_rel, max_iter, solver):
    try:
        scenario = scenario_at(template, parameter, value)
        result = solve_approximation(scenario, tol_rel=tol_rel, max_iter=max_iter, solver=solver)
        return SweepPoint(value=value, error=result.error, status=result.solution.status,
                          summary=summarize(result))
    except SolverFailedError as e:
        return SweepPoint(value=value, error=float("nan"), status=e.status or "failed",
                          summary={}, message=str(e))
    except ValueError as e:
        return SweepPoint(value=value, error=float("nan"), status="failed",
                          summary={}, message=str(e))


def sweep(template, parameter, values, n_jobs=None, tol_rel=None, max_iter=None, solver=None):
    """One solve per axis value; failed points are recorded and the sweep continues."""
    if parameter not in SWEEP_AXES:
        raise InvalidArgumentError(f"unknown sweep axis {parameter!r}; choose one of {SWEEP_AXES}")
    values = sorted(float(v) for v in values)
    n_jobs = config.SWEEP_JOBS if n_jobs is None else n_jobs
    return Parallel(n_jobs=n_jobs)(
        delayed(_sweep_point)(template, parameter, v, tol_rel, max_iter, solver) for v in values
    )


def sweep_frame(points):
    rows = []
    for point in points:
        rows.append({
            "value": point.value,
            "error": point.error,
            "status": point.status,
            "p0": point.summary.get("p0"),
            "p1": point.summary.get("p1"),
            "p2": point.summary.get("p2"),
            "b": point.summary.get("b"),
            "message": point.message,
        })
    return pd.DataFrame(rows, columns=["value", "error", "status", "p0", "p1", "p2", "b", "message"])


# ---------------------------------------------------------------------------
# Convergence harness
# ---------------------------------------------------------------------------

def convergence_study(template, counts, length_scale=None, verbose=False):
    """d_N for growing N with |supp| = length_scale * sqrt(N) around the support centre.

    With the default length_scale the template's own N keeps its support;
    the spacing then shrinks like 1/sqrt(N).
    """
    if template.basis_spec is None:
        raise InvalidArgumentError("convergence study needs a spline basis")
    hull = template.basis_spec.support or template.continuum_hull()
    pos, neg = template.region_pos.intervals, template.region_neg.intervals
    if hull is None or (pos and neg):
        raise InvalidArgumentError("convergence study needs the density in a single sign region")
    centre = 0.5 * (hull[0] + hull[1])
    if length_scale is None:
        length_scale = (hull[1] - hull[0]) / math.sqrt(template.basis_spec.count)

    rows = []
    for N in counts:
        half = 0.5 * length_scale * math.sqrt(N)
        lo, hi = centre - half, centre + half
        if template.symmetric:
            lo = max(lo, 0.0)
        support = (lo, hi)
        scenario = replace(
            template,
            label=f"{template.label}-N{N}",
            basis_spec=BasisSpec(count=int(N), order=template.basis_spec.order, support=support),
            region_pos=Region(intervals=(support,), points=template.region_pos.points) if pos else template.region_pos,
            region_neg=Region(intervals=(support,), points=template.region_neg.points) if neg else template.region_neg,
        )
        start = time.time()
        try:
            result = solve_approximation(scenario, verbose=verbose)
            error, status = result.error, result.solution.status
            spacing = result.rep.basis.spacing
        except ValueError as e:
            error, status, spacing = float("nan"), f"failed: {e}", float("nan")
        except SolverFailedError as e:
            error, status, spacing = float("nan"), e.status, float("nan")
        rows.append({
            "N": int(N),
            "support_lo": lo,
            "support_hi": hi,
            "spacing": spacing,
            "error": error,
            "status": status,
            "seconds": time.time() - start,
        })
    return pd.DataFrame(rows)
