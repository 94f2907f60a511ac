"""
Sum rules for finite quasi-Herglotz representations

    (1/pi) int_{|x|>eps} x^k Im q(x) dx  ==  identity_rhs(rep, k)

with the right side taken from the expansions at 0 and infinity:
a_{-k-1} for k <= -3, a_{-k-1} - b_{-k-1} for -2 <= k <= 0, -b_{-k-1} for k >= 1.
The eps-truncation drops a point mass located exactly at 0 from the left side.
"""

import math
from dataclasses import dataclass

import numpy as np

import spline_basis
from errors import InvalidArgumentError
from representation import asymptotic_coeffs, measure_moment


@dataclass(frozen=True)
class SumRuleConstraint:
    """One optimizer equality row: int x^k d beta (mass at 0 excluded) = rhs."""

    power: int
    rhs: float

    def __post_init__(self):
        if int(self.power) != self.power or self.power % 2 != 0:
            raise InvalidArgumentError(f"sum-rule power must be an even integer, got {self.power}")
        if not math.isfinite(self.rhs):
            raise InvalidArgumentError("sum-rule right-hand side must be finite")
        object.__setattr__(self, "power", int(self.power))
        object.__setattr__(self, "rhs", float(self.rhs))


def sum_rule_integral(rep, k):
    """(1/pi) lim int x^k Im q(x + iy) dx: density moments plus p_i xi_i^k for masses off 0."""
    if int(k) != k:
        raise InvalidArgumentError(f"power must be an integer, got {k}")
    return measure_moment(rep, int(k), include_zero_mass=False)


def identity_rhs(rep, k):
    k = int(k)
    if k <= -3:
        coeffs = asymptotic_coeffs(rep, -k - 1, -1)
        return coeffs.a(-k - 1)
    if k <= 0:
        coeffs = asymptotic_coeffs(rep, -k - 1, k + 1)
        return coeffs.a(-k - 1) - coeffs.b(-k - 1)
    coeffs = asymptotic_coeffs(rep, -1, k + 1)
    return -coeffs.b(-k - 1)


def verify_sum_rule(rep, k):
    """|left side - right side| of the sum rule of power k."""
    return abs(sum_rule_integral(rep, k) - identity_rhs(rep, k))


def moments_row(basis, k, symmetric):
    """Coefficients of c_1..c_N in int x^k d beta_ac, i.e. (1/pi) times the moments (mirrored when symmetric)."""
    mirror = (1.0 + (-1.0) ** k) if symmetric else 1.0
    return mirror * spline_basis.moments_all(basis, k) / math.pi


def mass_row(locations, k, symmetric):
    """Coefficients of the mass amplitudes in int_{|x|>eps} x^k d beta."""
    row = np.zeros(len(locations))
    for i, loc in enumerate(locations):
        if loc == 0.0:
            continue
        row[i] = loc ** k
        if symmetric:
            row[i] += (-loc) ** k
    return row


def herglotz_bandwidth_bound(b1, b1_target, omega_length):
    """Lower bound (b1 + b1_target) |Omega| / 2 on the sup error of passive approximation."""
    if omega_length <= 0:
        raise InvalidArgumentError("approximation domain length must be positive")
    return (b1 + b1_target) * omega_length / 2.0


def passive_bound(eps_inf, eps_t, B):
    """Physical bound Delta = (eps_inf - eps_t) B / (2 + B) on ||eps - eps_t||_inf for passive media."""
    if not 0 < B < 2:
        raise InvalidArgumentError(f"relative bandwidth must lie in (0, 2), got {B}")
    if eps_inf < eps_t:
        raise InvalidArgumentError("eps_inf must not be below the target permittivity")
    return (eps_inf - eps_t) * B / (2.0 + B)
