"""
Uniform B-spline basis for the density of a quasi-Herglotz representation
Values, principal-value Hilbert transforms, Cauchy integrals and power moments
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad
from scipy.interpolate import BSpline

from errors import DivergentMomentError, DomainError, InvalidArgumentError

EQUIDISTANCE_RTOL = 1e-12

# Beyond this distance from the support centre (in units of the order) the
# transform is summed from its centred-moment series instead of the log form.
FAR_FIELD_RADIUS = 8.0
FAR_FIELD_TERMS = 18


@dataclass(frozen=True, eq=False)
class SplineBasis:
    """N uniform B-splines of order m (degree m-1) on N + m equidistant breakpoints.

    Basis function n (1-based) lives on breakpoints[n-1 : n+m].
    """

    order: int
    breakpoints: np.ndarray
    count: int
    spacing: float

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 2:
            raise InvalidArgumentError(f"order must be an integer >= 2, got {self.order}")
        if int(self.count) != self.count or self.count < 1:
            raise InvalidArgumentError(f"count must be a positive integer, got {self.count}")
        bp = np.asarray(self.breakpoints, dtype=float)
        if bp.ndim != 1 or len(bp) != self.count + self.order:
            raise InvalidArgumentError(
                f"expected {self.count + self.order} breakpoints, got {bp.size}"
            )
        if not np.all(np.isfinite(bp)):
            raise InvalidArgumentError("breakpoints must be finite")
        if not (self.spacing > 0) or not np.all(np.diff(bp) > 0):
            raise InvalidArgumentError("breakpoints must be strictly increasing")
        scale = max(float(np.max(np.abs(bp))), float(bp[-1] - bp[0]))
        if np.max(np.abs(np.diff(bp) - self.spacing)) > EQUIDISTANCE_RTOL * scale:
            raise InvalidArgumentError("breakpoints are not equidistant")
        object.__setattr__(self, "breakpoints", bp)

    @property
    def support_lo(self):
        return float(self.breakpoints[0])

    @property
    def support_hi(self):
        return float(self.breakpoints[-1])

    @property
    def starts(self):
        """Left end of every basis function's support (0-based array)."""
        return self.breakpoints[: self.count]

    def knots(self, n):
        _check_index(self, n)
        return self.breakpoints[n - 1 : n + self.order]

    def to_dict(self):
        return {
            "order": int(self.order),
            "support_lo": self.support_lo,
            "support_hi": self.support_hi,
            "count": int(self.count),
        }

    @classmethod
    def from_dict(cls, data):
        return make_uniform_basis(
            data["support_lo"], data["support_hi"], data["count"], data["order"]
        )


def make_uniform_basis(support_lo, support_hi, count, order=2):
    """Build N uniform B-splines of order m living on [support_lo, support_hi].

    The grid carries N + m breakpoints, so delta = (hi - lo) / (N + m - 1);
    for hats (m = 2) that is (hi - lo) / (N + 1) with peaks at lo + k*delta.
    """
    if not (np.isfinite(support_lo) and np.isfinite(support_hi)):
        raise InvalidArgumentError("support bounds must be finite")
    if not support_hi > support_lo:
        raise InvalidArgumentError(
            f"support_hi ({support_hi}) must exceed support_lo ({support_lo})"
        )
    if int(count) != count or count < 1:
        raise InvalidArgumentError(f"count must be a positive integer, got {count}")
    if int(order) != order or order < 2:
        raise InvalidArgumentError(f"order must be an integer >= 2, got {order}")
    count, order = int(count), int(order)

    spacing = (support_hi - support_lo) / (count + order - 1)
    breakpoints = support_lo + spacing * np.arange(count + order)
    breakpoints[-1] = support_hi
    return SplineBasis(order=order, breakpoints=breakpoints, count=count, spacing=spacing)


def _check_index(basis, n):
    if int(n) != n or not 1 <= n <= basis.count:
        raise InvalidArgumentError(f"basis index {n} outside 1..{basis.count}")


def support(basis, n):
    knots = basis.knots(n)
    return float(knots[0]), float(knots[-1])


def peaks(basis):
    """Support centres mu_n of all basis functions."""
    return basis.starts + 0.5 * basis.order * basis.spacing


# ---------------------------------------------------------------------------
# Cardinal B-spline on knots 0..m; every basis function is a shifted, stretched copy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Cardinal:
    element: BSpline
    pieces: tuple        # P_j(u) on cell [j, j+1]
    jumps: tuple         # P_{i-1} - P_i, multiplying log|i - v|
    regular: Polynomial  # sum over cells of int (P_j(u) - P_j(v)) / (u - v) du
    centred_moments: np.ndarray


@lru_cache(maxsize=None)
def _cardinal(order):
    scale = 1.0 / math.factorial(order - 1)
    shifted = [
        ((-1) ** i) * math.comb(order, i) * scale * Polynomial([-float(i), 1.0]) ** (order - 1)
        for i in range(order + 1)
    ]

    pieces = []
    running = Polynomial([0.0])
    for j in range(order):
        running = running + shifted[j]
        pieces.append(running)

    regular = Polynomial([0.0])
    for j, piece in enumerate(pieces):
        regular = regular + _cell_quotient_integral(piece, j)

    centre = 0.5 * order
    centred = np.zeros(FAR_FIELD_TERMS)
    for k in range(FAR_FIELD_TERMS):
        shift = Polynomial([-centre, 1.0]) ** k
        centred[k] = sum(
            (piece * shift).integ()(j + 1) - (piece * shift).integ()(j)
            for j, piece in enumerate(pieces)
        )

    element = BSpline.basis_element(np.arange(order + 1, dtype=float), extrapolate=False)
    return _Cardinal(
        element=element,
        pieces=tuple(pieces),
        jumps=tuple(-s for s in shifted),
        regular=regular,
        centred_moments=centred,
    )


def _cell_quotient_integral(piece, j):
    """Polynomial in v equal to int_j^{j+1} (P(u) - P(v)) / (u - v) du."""
    a = piece.coef
    out = np.zeros(max(len(a) - 1, 1))
    for k in range(1, len(a)):
        for l in range(k):
            out[k - 1 - l] += a[k] * ((j + 1) ** (l + 1) - j ** (l + 1)) / (l + 1)
    return Polynomial(out)


def _cardinal_values(order, u):
    values = _cardinal(order).element(np.asarray(u, dtype=float))
    return np.nan_to_num(values, nan=0.0)


def _cardinal_transform(order, v):
    """(1/pi) p.v. int_0^m N(u) / (u - v) du for real v, or the Cauchy integral for Im v > 0."""
    card = _cardinal(order)
    v = np.asarray(v)
    is_complex = np.iscomplexobj(v)
    out = np.empty(v.shape, dtype=complex if is_complex else float)

    s = v - 0.5 * order
    far = np.abs(s) > FAR_FIELD_RADIUS * order
    near = ~far

    if np.any(near):
        vn = v[near]
        total = card.regular(vn).astype(out.dtype)
        for i, jump in enumerate(card.jumps):
            gap = i - vn
            if is_complex:
                total = total + jump(vn) * np.log(gap)
            else:
                with np.errstate(divide="ignore", invalid="ignore"):
                    term = jump(vn) * np.log(np.abs(gap))
                # (v - i)^(m-1) log|v - i| -> 0 at the breakpoint itself
                total = total + np.where(gap == 0, 0.0, term)
        out[near] = total

    if np.any(far):
        sf = s[far]
        series = np.zeros(sf.shape, dtype=out.dtype)
        for k in range(FAR_FIELD_TERMS - 1, -1, -1):
            series = series / sf + card.centred_moments[k]
        out[far] = -series / sf

    return out / np.pi


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def eval(basis, n, x):
    """Value of p_n at x (0 outside its support)."""
    _check_index(basis, n)
    u = (np.asarray(x, dtype=float) - basis.breakpoints[n - 1]) / basis.spacing
    value = _cardinal_values(basis.order, u)
    return float(value) if np.ndim(value) == 0 else value


def eval_all(basis, x):
    """Matrix of shape (N, len(x)) with p_n(x_j)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    u = (x[None, :] - basis.starts[:, None]) / basis.spacing
    return _cardinal_values(basis.order, u)


def hilbert_eval(basis, n, x):
    """p_hat_n(x) = (1/pi) p.v. int p_n(xi) / (xi - x) dxi, closed form."""
    _check_index(basis, n)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("evaluation point must be finite")
    v = (np.asarray(x, dtype=float) - basis.breakpoints[n - 1]) / basis.spacing
    value = _cardinal_transform(basis.order, v)
    return float(value) if np.ndim(value) == 0 else value


def hilbert_all(basis, x):
    """Matrix of shape (N, len(x)) with p_hat_n(x_j)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    v = (x[None, :] - basis.starts[:, None]) / basis.spacing
    return _cardinal_transform(basis.order, v)


def cauchy_eval(basis, n, z):
    """(1/pi) int p_n(xi) / (xi - z) dxi for z in the open upper half-plane."""
    _check_index(basis, n)
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("Cauchy integral needs Im z > 0")
    w = (z - basis.breakpoints[n - 1]) / basis.spacing
    value = _cardinal_transform(basis.order, w)
    return complex(value) if np.ndim(value) == 0 else value


def cauchy_all(basis, z):
    """Matrix of shape (N, len(z)) of Cauchy integrals at upper half-plane points."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z.imag <= 0):
        raise DomainError("Cauchy integral needs Im z > 0")
    w = (z[None, :] - basis.starts[:, None]) / basis.spacing
    return _cardinal_transform(basis.order, w)


def _power_integral(a, b, r):
    if r == -1:
        return math.log(abs(b) / abs(a))
    return (b ** (r + 1) - a ** (r + 1)) / (r + 1)


def moment(basis, n, k):
    """int x^k p_n(x) dx, exact for every integer k (logarithms for the x^-1 terms)."""
    _check_index(basis, n)
    if int(k) != k:
        raise InvalidArgumentError(f"moment power must be an integer, got {k}")
    k = int(k)
    lo, hi = support(basis, n)
    if k < 0 and lo <= 0.0 <= hi:
        raise DivergentMomentError(
            f"moment of power {k} diverges: support [{lo}, {hi}] contains 0"
        )

    total = 0.0
    for a, b, in_x in cell_polynomials(basis, n):
        for power, coef in enumerate(in_x.coef):
            total += coef * _power_integral(a, b, power + k)
    return float(total)


def cell_polynomials(basis, n):
    """(cell_lo, cell_hi, polynomial in x) for each of the m cells of p_n."""
    _check_index(basis, n)
    lo = float(basis.breakpoints[n - 1])
    to_local = Polynomial([-lo / basis.spacing, 1.0 / basis.spacing])
    return [
        (lo + j * basis.spacing, lo + (j + 1) * basis.spacing, piece(to_local))
        for j, piece in enumerate(_cardinal(basis.order).pieces)
    ]


def moments_all(basis, k):
    return np.array([moment(basis, n, k) for n in range(1, basis.count + 1)])


def hilbert_quadrature(basis, n, x):
    """Adaptive-quadrature value of p_hat_n(x), used to cross-check the closed form.

    Subtracts p_n(x) so the integrand stays bounded; the removed part is
    p_n(x) * log|(hi - x) / (lo - x)|.
    """
    _check_index(basis, n)
    lo, hi = support(basis, n)
    x = float(x)
    px = eval(basis, n, x)

    def integrand(xi):
        if xi == x:
            return 0.0
        return (eval(basis, n, xi) - px) / (xi - x)

    inner = [float(t) for t in basis.knots(n)[1:-1]]
    if lo < x < hi:
        inner.append(x)
    points = sorted(set(inner)) or None
    value, _ = quad(integrand, lo, hi, points=points, limit=400, epsabs=1e-14, epsrel=1e-13)
    if px != 0.0:
        value += px * math.log(abs(hi - x) / abs(x - lo))
    return value / math.pi
