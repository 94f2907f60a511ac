"""
Finite quasi-Herglotz representation: point masses plus a B-spline density

    q(z) = a_check + b*z + sum_i p_i / (xi_i - z) + (1/pi) sum_n c_n int p_n(xi) / (xi - z) dxi

On the real axis the density part is sum_n c_n (p_hat_n(x) + i p_n(x)).
Symmetric representations store only the x >= 0 half; the mirror image
(mass p_i at -xi_i, density c_n p_n(-x)) is added at evaluation time and
a_check is 0.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.polynomial import Polynomial

import spline_basis
from errors import (
    DivergentMomentError,
    DomainError,
    InvalidArgumentError,
    PoleError,
    SchemaError,
    UnavailableExpansionError,
)
from spline_basis import SplineBasis

REP_FORMAT = "quasi-herglotz-rep/1"


@dataclass(frozen=True)
class PointMass:
    location: float
    amplitude: float

    def __post_init__(self):
        if not (math.isfinite(self.location) and math.isfinite(self.amplitude)):
            raise InvalidArgumentError(
                f"point mass must be finite, got ({self.location}, {self.amplitude})"
            )


@dataclass(frozen=True, eq=False)
class QuasiHerglotzRep:
    a_check: float = 0.0
    b: float = 0.0
    masses: tuple = ()
    density_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    basis: SplineBasis = None
    symmetric: bool = False

    def __post_init__(self):
        masses = tuple(
            m if isinstance(m, PointMass) else PointMass(*m) for m in self.masses
        )
        object.__setattr__(self, "masses", masses)
        coeffs = np.asarray(self.density_coeffs, dtype=float).ravel()
        object.__setattr__(self, "density_coeffs", coeffs)

        expected = 0 if self.basis is None else self.basis.count
        if len(coeffs) != expected:
            raise InvalidArgumentError(
                f"{len(coeffs)} density coefficients for a basis of {expected} functions"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidArgumentError("density coefficients must be finite")
        if not (math.isfinite(self.a_check) and math.isfinite(self.b)):
            raise InvalidArgumentError("a_check and b must be finite")
        if self.symmetric:
            if self.a_check != 0.0:
                raise InvalidArgumentError("symmetric representations have a_check = 0")
            if any(m.location < 0 for m in masses):
                raise InvalidArgumentError(
                    "symmetric representations store masses at locations >= 0 only"
                )
            if self.basis is not None and self.basis.support_lo < 0:
                raise InvalidArgumentError(
                    "symmetric representations store the density on x >= 0 only"
                )

    @property
    def mass_locations(self):
        return np.array([m.location for m in self.masses], dtype=float)

    @property
    def mass_amplitudes(self):
        return np.array([m.amplitude for m in self.masses], dtype=float)

    def parameter_vector(self):
        """theta = [a_check (general mode only), b, mass amplitudes..., c_1..c_N]."""
        head = [self.b] if self.symmetric else [self.a_check, self.b]
        return np.concatenate([head, self.mass_amplitudes, self.density_coeffs])

    @classmethod
    def from_parameters(cls, theta, mass_locations, basis, symmetric):
        theta = np.asarray(theta, dtype=float)
        offset = 1 if symmetric else 2
        n_mass = len(mass_locations)
        count = 0 if basis is None else basis.count
        if len(theta) != offset + n_mass + count:
            raise InvalidArgumentError(
                f"parameter vector of length {len(theta)} does not match the layout"
            )
        masses = tuple(
            PointMass(float(loc), float(theta[offset + i]))
            for i, loc in enumerate(mass_locations)
        )
        return cls(
            a_check=0.0 if symmetric else float(theta[0]),
            b=float(theta[offset - 1]),
            masses=masses,
            density_coeffs=theta[offset + n_mass :],
            basis=basis,
            symmetric=symmetric,
        )


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """at_zero = [a_-1, a_0, ..., a_M]; at_infinity = [b_1, b_0, b_-1, ..., b_-K]."""

    at_zero: tuple
    at_infinity: tuple

    @property
    def order_zero(self):
        return len(self.at_zero) - 2

    @property
    def order_infinity(self):
        return len(self.at_infinity) - 2

    def a(self, j):
        if not -1 <= j <= self.order_zero:
            raise UnavailableExpansionError(
                f"a_{j} not available (expansion at 0 has order {self.order_zero})"
            )
        return self.at_zero[j + 1]

    def b(self, k):
        if not -self.order_infinity <= k <= 1:
            raise UnavailableExpansionError(
                f"b_{k} not available (expansion at infinity has order {self.order_infinity})"
            )
        return self.at_infinity[1 - k]


# ---------------------------------------------------------------------------
# Design matrices: q(x_j) = D[j] @ theta
# ---------------------------------------------------------------------------

def _mass_columns_boundary(locations, x, symmetric):
    cols = np.empty((len(x), len(locations)))
    for i, loc in enumerate(locations):
        if symmetric and loc == 0.0:
            cols[:, i] = -1.0 / x
        elif symmetric:
            cols[:, i] = 1.0 / (loc - x) - 1.0 / (loc + x)
        else:
            cols[:, i] = 1.0 / (loc - x)
    return cols


def _check_poles(locations, x, symmetric):
    poles = set(float(loc) for loc in locations)
    if symmetric:
        poles |= {-p for p in poles}
    hit = [float(v) for v in x if float(v) in poles]
    if hit:
        raise PoleError(f"boundary evaluation at point-mass location {hit[0]}")


def boundary_design(x, mass_locations, basis, symmetric):
    """Complex matrix mapping the parameter vector to boundary values q(x_j)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("evaluation points must be finite")
    mass_locations = np.asarray(mass_locations, dtype=float)
    _check_poles(mass_locations, x, symmetric)

    head = [x.astype(complex)] if symmetric else [np.ones_like(x, dtype=complex), x.astype(complex)]
    blocks = [np.column_stack(head), _mass_columns_boundary(mass_locations, x, symmetric)]
    if basis is not None:
        real = spline_basis.hilbert_all(basis, x)
        imag = spline_basis.eval_all(basis, x)
        if symmetric:
            real = real - spline_basis.hilbert_all(basis, -x)
            imag = imag + spline_basis.eval_all(basis, -x)
        blocks.append((real + 1j * imag).T)
    return np.hstack(blocks)


def upper_design(z, mass_locations, basis, symmetric):
    """Complex matrix mapping the parameter vector to q(z_j), Im z_j > 0."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z.imag <= 0):
        raise DomainError("evaluation needs Im z > 0")
    mass_locations = np.asarray(mass_locations, dtype=float)

    head = [z] if symmetric else [np.ones_like(z), z]
    mass_cols = np.empty((len(z), len(mass_locations)), dtype=complex)
    for i, loc in enumerate(mass_locations):
        if symmetric and loc == 0.0:
            mass_cols[:, i] = -1.0 / z
        elif symmetric:
            mass_cols[:, i] = 1.0 / (loc - z) - 1.0 / (loc + z)
        else:
            mass_cols[:, i] = 1.0 / (loc - z)
    blocks = [np.column_stack(head), mass_cols]
    if basis is not None:
        cauchy = spline_basis.cauchy_all(basis, z)
        if symmetric:
            # mirrored density p_n(-xi): -(1/pi) int p_n(eta) / (eta + z) d eta
            cauchy = cauchy - np.conj(spline_basis.cauchy_all(basis, -np.conj(z)))
        blocks.append(cauchy.T)
    return np.hstack(blocks)


def eval_boundary_many(rep, x):
    design = boundary_design(x, rep.mass_locations, rep.basis, rep.symmetric)
    return design @ rep.parameter_vector()


def eval_boundary(rep, x):
    """q(x) on the real axis (boundary value from above)."""
    return complex(eval_boundary_many(rep, [x])[0])


def eval_upper(rep, z):
    """q(z) for Im z > 0 from the exact Cauchy integral of the density."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"evaluation needs Im z > 0, got {z}")
    design = upper_design([z], rep.mass_locations, rep.basis, rep.symmetric)
    return complex((design @ rep.parameter_vector())[0])


def permittivity(rep, x):
    """epsilon(x) = q(x) / x on the real axis."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x == 0):
        raise PoleError("permittivity is undefined at x = 0")
    return eval_boundary_many(rep, x) / x


# ---------------------------------------------------------------------------
# Measure moments and asymptotic expansions
# ---------------------------------------------------------------------------

def mass_at_zero(rep):
    return float(sum(m.amplitude for m in rep.masses if m.location == 0.0))


def measure_moment(rep, k, include_zero_mass=True):
    """int xi^k d beta over the full (mirrored) measure."""
    k = int(k)
    total = 0.0
    for m in rep.masses:
        if m.location == 0.0:
            if not include_zero_mass or k > 0:
                continue
            if k < 0:
                raise DivergentMomentError(f"power {k} diverges on the mass at 0")
            total += m.amplitude
            continue
        total += m.amplitude * m.location ** k
        if rep.symmetric:
            total += m.amplitude * (-m.location) ** k

    if rep.basis is not None and np.any(rep.density_coeffs != 0):
        lo, hi = rep.basis.support_lo, rep.basis.support_hi
        if k < 0 and (lo <= 0.0 <= hi):
            raise DivergentMomentError(
                f"power {k} diverges: density support [{lo}, {hi}] contains 0"
            )
        mirror = (1.0 + (-1.0) ** k) if rep.symmetric else 1.0
        moments = spline_basis.moments_all(rep.basis, k)
        total += mirror * float(rep.density_coeffs @ moments) / math.pi
    return total


def _touches_zero(rep):
    if rep.basis is not None and np.any(rep.density_coeffs != 0):
        if rep.basis.support_lo <= 0.0 <= rep.basis.support_hi:
            return True
    return False


def asymptotic_coeffs(rep, max_order_zero, max_order_inf):
    """Expansion coefficients at 0 (a_-1..a_M) and at infinity (b_1, b_0, ..., b_-K).

    The mass at 0 only enters a_-1 = -p_0; higher orders at 0 need the rest
    of the measure to stay away from the origin.
    """
    if max_order_zero < -1 or max_order_inf < -1:
        raise InvalidArgumentError("expansion orders start at -1")
    if max_order_zero > -1 and _touches_zero(rep):
        raise UnavailableExpansionError(
            "expansion at 0 beyond order -1 needs the density to avoid the origin"
        )

    at_zero = [-mass_at_zero(rep)]
    for j in range(0, max_order_zero + 1):
        value = measure_moment(rep, -j - 1, include_zero_mass=False)
        if j == 0:
            value += rep.a_check
        elif j == 1:
            value += rep.b
        at_zero.append(value)

    at_inf = [rep.b]
    if max_order_inf >= 0:
        at_inf.append(rep.a_check)
    for k in range(1, max_order_inf + 1):
        at_inf.append(-measure_moment(rep, k - 1))
    return AsymptoticCoeffs(at_zero=tuple(at_zero), at_infinity=tuple(at_inf))


# ---------------------------------------------------------------------------
# Conversions and summaries
# ---------------------------------------------------------------------------

def beta_to_sigma_amplitude(amplitude, location):
    return amplitude / (1.0 + location ** 2)


def sigma_to_beta_amplitude(amplitude, location):
    return amplitude * (1.0 + location ** 2)


def _rational_cell_integral(poly, lo, hi):
    """int_lo^hi poly(x) * x / (1 + x^2) dx in closed form."""
    quotient, remainder = divmod(poly * Polynomial([0.0, 1.0]), Polynomial([1.0, 0.0, 1.0]))
    r = np.zeros(2)
    r[: len(remainder.coef)] = remainder.coef[:2]
    antiderivative = quotient.integ()
    value = antiderivative(hi) - antiderivative(lo)
    value += 0.5 * r[1] * (math.log1p(hi ** 2) - math.log1p(lo ** 2))
    value += r[0] * (math.atan(hi) - math.atan(lo))
    return float(value)


def recover_a(rep):
    """Constant a of the unabsorbed integral form: a_check + int xi/(1+xi^2) d beta_ac."""
    if rep.basis is None or rep.symmetric:
        # the mirrored density makes the integrand odd
        return rep.a_check
    total = 0.0
    for n, c in enumerate(rep.density_coeffs, start=1):
        if c == 0:
            continue
        for lo, hi, poly in spline_basis.cell_polynomials(rep.basis, n):
            total += c * _rational_cell_integral(poly, lo, hi)
    return rep.a_check + total / math.pi


def measure_sign_summary(rep):
    """Positive and negative mass carried by the masses and the density coefficients."""
    mirror = 2.0 if rep.symmetric else 1.0
    positive = negative = 0.0
    for m in rep.masses:
        weight = 1.0 if m.location == 0.0 else mirror
        if m.amplitude >= 0:
            positive += weight * m.amplitude
        else:
            negative += weight * m.amplitude
    if rep.basis is not None:
        areas = spline_basis.moments_all(rep.basis, 0) * mirror / math.pi
        c = rep.density_coeffs
        positive += float(np.sum(np.where(c > 0, c, 0.0) * areas))
        negative += float(np.sum(np.where(c < 0, c, 0.0) * areas))
    is_herglotz = (
        rep.b >= 0
        and all(m.amplitude >= 0 for m in rep.masses)
        and bool(np.all(rep.density_coeffs >= 0))
    )
    return {
        "positive_mass": positive,
        "negative_mass": negative,
        "is_herglotz": is_herglotz,
    }


# ---------------------------------------------------------------------------
# JSON persistence
# ---------------------------------------------------------------------------

def to_dict(rep):
    return {
        "format": REP_FORMAT,
        "symmetric": bool(rep.symmetric),
        "a_check": float(rep.a_check),
        "b": float(rep.b),
        "masses": [
            {"location": float(m.location), "amplitude": float(m.amplitude)}
            for m in rep.masses
        ],
        "basis": None if rep.basis is None else rep.basis.to_dict(),
        "density_coeffs": [float(c) for c in rep.density_coeffs],
    }


def _require(data, key, kind, where=""):
    path = f"{where}{key}"
    if key not in data:
        raise SchemaError("missing required field", field=path)
    value = data[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"expected a number, got {value!r}", field=path)
        return float(value)
    if not isinstance(value, kind):
        raise SchemaError(f"expected {kind.__name__}, got {type(value).__name__}", field=path)
    return value


def from_dict(data):
    if not isinstance(data, dict):
        raise SchemaError("representation document must be an object")
    if data.get("format") != REP_FORMAT:
        raise SchemaError(f"unsupported format {data.get('format')!r}", field="format")

    symmetric = _require(data, "symmetric", bool)
    a_check = _require(data, "a_check", float)
    b = _require(data, "b", float)
    masses = []
    for i, item in enumerate(_require(data, "masses", list)):
        if not isinstance(item, dict):
            raise SchemaError("mass entry must be an object", field=f"masses[{i}]")
        masses.append(PointMass(
            _require(item, "location", float, f"masses[{i}]."),
            _require(item, "amplitude", float, f"masses[{i}]."),
        ))

    basis = None
    if data.get("basis") is not None:
        spec = _require(data, "basis", dict)
        try:
            basis = spline_basis.make_uniform_basis(
                _require(spec, "support_lo", float, "basis."),
                _require(spec, "support_hi", float, "basis."),
                int(_require(spec, "count", float, "basis.")),
                int(_require(spec, "order", float, "basis.")),
            )
        except InvalidArgumentError as e:
            raise SchemaError(str(e), field="basis") from e

    coeffs = _require(data, "density_coeffs", list)
    for i, c in enumerate(coeffs):
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise SchemaError(f"expected a number, got {c!r}", field=f"density_coeffs[{i}]")
    try:
        return QuasiHerglotzRep(
            a_check=a_check,
            b=b,
            masses=tuple(masses),
            density_coeffs=np.array(coeffs, dtype=float),
            basis=basis,
            symmetric=symmetric,
        )
    except InvalidArgumentError as e:
        raise SchemaError(str(e)) from e


def read_json_document(path):
    """Parse a JSON file, turning syntax errors into SchemaError with line/column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, line=e.lineno, column=e.colno) from e


def save_rep(rep, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(to_dict(rep), f, indent=2)
    return path


def load_rep(path):
    return from_dict(read_json_document(path))
