import math

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

import spline_basis
from errors import DivergentMomentError, DomainError, InvalidArgumentError


def test_single_hat_layout(unit_hat):
    npt.assert_allclose(unit_hat.breakpoints, [0.0, 1.0, 2.0])
    assert unit_hat.spacing == 1.0
    assert spline_basis.support(unit_hat, 1) == (0.0, 2.0)


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (0.5, 0.5), (3.0, 0.0), (-0.1, 0.0)])
def test_hat_values(unit_hat, x, expected):
    assert spline_basis.eval(unit_hat, 1, x) == pytest.approx(expected, abs=1e-15)


def test_hat_peaks_on_grid():
    basis = spline_basis.make_uniform_basis(0.0, 1.0, 10, 2)
    assert basis.spacing == pytest.approx(1.0 / 11.0)
    npt.assert_allclose(spline_basis.peaks(basis), np.arange(1, 11) / 11.0, atol=1e-15)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_partition_of_unity(order):
    basis = spline_basis.make_uniform_basis(0.0, 1.0, 10, order)
    lo = basis.breakpoints[order - 1]
    hi = basis.breakpoints[basis.count]
    x = np.linspace(lo, hi, 301)
    npt.assert_allclose(spline_basis.eval_all(basis, x).sum(axis=0), 1.0, atol=1e-12)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_values_nonnegative_and_local(order):
    basis = spline_basis.make_uniform_basis(-1.0, 2.0, 6, order)
    x = np.linspace(-2.0, 3.0, 1001)
    values = spline_basis.eval_all(basis, x)
    assert np.all(values >= 0.0)
    for n in range(1, basis.count + 1):
        lo, hi = spline_basis.support(basis, n)
        outside = (x < lo) | (x > hi)
        assert np.all(values[n - 1, outside] == 0.0)


def test_hat_is_linear_between_breakpoints():
    basis = spline_basis.make_uniform_basis(0.0, 1.0, 4, 2)
    for a, b in zip(basis.breakpoints[:-1], basis.breakpoints[1:]):
        x = np.linspace(a, b, 7)[1:-1]
        slopes = np.diff(spline_basis.eval_all(basis, x), axis=1) / np.diff(x)
        npt.assert_allclose(slopes, slopes[:, :1].repeat(slopes.shape[1], axis=1), atol=1e-9)


def test_cell_polynomials_match_values():
    basis = spline_basis.make_uniform_basis(0.5, 2.0, 3, 3)
    for n in range(1, basis.count + 1):
        for lo, hi, poly in spline_basis.cell_polynomials(basis, n):
            x = np.linspace(lo, hi, 9)[1:-1]
            npt.assert_allclose(poly(x), spline_basis.eval(basis, n, x), atol=1e-12)


@pytest.mark.parametrize("args", [
    (0.0, 0.0, 3, 2),
    (1.0, 0.0, 3, 2),
    (0.0, math.inf, 3, 2),
    (0.0, 1.0, 0, 2),
    (0.0, 1.0, 3, 1),
])
def test_make_uniform_basis_rejects_bad_arguments(args):
    with pytest.raises(InvalidArgumentError):
        spline_basis.make_uniform_basis(*args)


def test_non_equidistant_breakpoints_rejected():
    with pytest.raises(InvalidArgumentError):
        spline_basis.SplineBasis(order=2, breakpoints=np.array([0.0, 1.0, 2.5]), count=1, spacing=1.0)


@pytest.mark.parametrize("n", [0, 2])
def test_index_out_of_range(unit_hat, n):
    with pytest.raises(InvalidArgumentError):
        spline_basis.eval(unit_hat, n, 0.5)
    with pytest.raises(InvalidArgumentError):
        spline_basis.hilbert_eval(unit_hat, n, 0.5)


# --- Hilbert transform ------------------------------------------------------

def test_hilbert_vanishes_at_symmetric_peak():
    basis = spline_basis.make_uniform_basis(-1.0, 1.0, 1, 2)
    assert spline_basis.hilbert_eval(basis, 1, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_hilbert_far_value(unit_hat):
    # -(10 ln 10) + 18 ln 9 - 8 ln 8, divided by pi
    expected = (-10 * math.log(10) + 18 * math.log(9) - 8 * math.log(8)) / math.pi
    value = spline_basis.hilbert_eval(unit_hat, 1, 10.0)
    assert value == pytest.approx(expected, abs=1e-13)
    assert value == pytest.approx(-0.03544, abs=1e-4)


def test_hilbert_at_peak_matches_quadrature(unit_hat):
    closed = spline_basis.hilbert_eval(unit_hat, 1, 1.0)
    oracle = spline_basis.hilbert_quadrature(unit_hat, 1, 1.0)
    assert closed == pytest.approx(oracle, abs=1e-8)
    # antisymmetric about the peak
    assert closed == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("order", [2, 3])
def test_hilbert_matches_quadrature_oracle(order):
    basis = spline_basis.make_uniform_basis(0.0, 1.5, 3, order)
    for n in range(1, basis.count + 1):
        lo, hi = spline_basis.support(basis, n)
        width = hi - lo
        x = np.linspace(lo - width, hi + width, 200)
        closed = spline_basis.hilbert_eval(basis, n, x)
        oracle = np.array([spline_basis.hilbert_quadrature(basis, n, v) for v in x])
        npt.assert_allclose(closed, oracle, atol=1e-8)


def test_hilbert_at_breakpoints_is_finite():
    basis = spline_basis.make_uniform_basis(0.0, 3.0, 2, 2)
    values = spline_basis.hilbert_eval(basis, 1, basis.breakpoints)
    assert np.all(np.isfinite(values))


@pytest.mark.parametrize("order", [2, 3, 4])
def test_hilbert_far_field_decay(order):
    basis = spline_basis.make_uniform_basis(0.0, 1.0, 3, order)
    mu = spline_basis.peaks(basis)[1]
    area = spline_basis.moment(basis, 2, 0)
    for side in (1.0, -1.0):
        value = spline_basis.hilbert_eval(basis, 2, mu + side * 1e3)
        assert abs(value) * 1e3 == pytest.approx(area / math.pi, rel=1e-2)
        assert np.sign(value) == -side


def test_hilbert_is_odd_about_hat_centre():
    basis = spline_basis.make_uniform_basis(0.0, 2.0, 1, 2)
    t = np.linspace(0.0, 40.0, 401)
    npt.assert_allclose(
        spline_basis.hilbert_eval(basis, 1, 1.0 + t),
        -spline_basis.hilbert_eval(basis, 1, 1.0 - t),
        atol=1e-12,
    )


@pytest.mark.parametrize("order", [2, 3, 4])
def test_log_and_series_branches_agree(order, monkeypatch):
    # same abscissae just past the switch, once through each branch
    edge = 0.5 * order + spline_basis.FAR_FIELD_RADIUS * order
    v = np.array([edge + 0.5, edge + 3.0, 0.5 * order - (edge - 0.5 * order) - 0.5])
    series = spline_basis._cardinal_transform(order, v)
    monkeypatch.setattr(spline_basis, "FAR_FIELD_RADIUS", 1e6)
    closed_form = spline_basis._cardinal_transform(order, v)
    # the log form loses about edge**(order - 1) ulps to cancellation
    npt.assert_allclose(series, closed_form, rtol=0, atol=1e-13 * edge ** (order - 1))


def test_hilbert_all_matches_single_evaluations():
    basis = spline_basis.make_uniform_basis(0.9, 1.1, 5, 2)
    x = np.linspace(0.8, 1.2, 17)
    table = spline_basis.hilbert_all(basis, x)
    for n in range(1, basis.count + 1):
        npt.assert_allclose(table[n - 1], spline_basis.hilbert_eval(basis, n, x), atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=-3.0, max_value=5.0, allow_nan=False))
def test_hilbert_oracle_property(x):
    basis = spline_basis.make_uniform_basis(0.0, 2.0, 1, 2)
    assert spline_basis.hilbert_eval(basis, 1, x) == pytest.approx(
        spline_basis.hilbert_quadrature(basis, 1, x), abs=1e-8
    )


# --- Cauchy integral -------------------------------------------------------

def test_cauchy_tends_to_boundary_values():
    basis = spline_basis.make_uniform_basis(0.0, 2.0, 1, 2)
    for x in (0.3, 1.0, 1.7, 2.5, -1.0):
        z = complex(x, 1e-9)
        expected = spline_basis.hilbert_eval(basis, 1, x) + 1j * spline_basis.eval(basis, 1, x)
        assert spline_basis.cauchy_eval(basis, 1, z) == pytest.approx(expected, abs=1e-6)


def test_cauchy_matches_quadrature_off_axis():
    basis = spline_basis.make_uniform_basis(0.0, 2.0, 1, 2)
    z = complex(0.7, 0.4)
    re, _ = quad(lambda t: (spline_basis.eval(basis, 1, t) / (t - z)).real, 0.0, 2.0, points=[1.0])
    im, _ = quad(lambda t: (spline_basis.eval(basis, 1, t) / (t - z)).imag, 0.0, 2.0, points=[1.0])
    assert spline_basis.cauchy_eval(basis, 1, z) == pytest.approx((re + 1j * im) / math.pi, abs=1e-10)


def test_cauchy_rejects_lower_half_plane(unit_hat):
    with pytest.raises(DomainError):
        spline_basis.cauchy_eval(unit_hat, 1, complex(1.0, 0.0))


# --- Moments ---------------------------------------------------------------

def test_moments_of_unit_hat(unit_hat):
    assert spline_basis.moment(unit_hat, 1, 0) == pytest.approx(1.0, abs=1e-14)
    assert spline_basis.moment(unit_hat, 1, 1) == pytest.approx(1.0, abs=1e-14)


def test_negative_moment_closed_form(shifted_hat):
    assert spline_basis.moment(shifted_hat, 1, -2) == pytest.approx(math.log(4.0 / 3.0), abs=1e-12)


def test_negative_moment_diverges_at_origin(unit_hat):
    with pytest.raises(DivergentMomentError):
        spline_basis.moment(unit_hat, 1, -1)


def test_hat_area_equals_spacing():
    basis = spline_basis.make_uniform_basis(0.97, 1.03, 100, 2)
    npt.assert_allclose(spline_basis.moments_all(basis, 0), basis.spacing, rtol=1e-9)


@pytest.mark.parametrize("order", [2, 3, 4])
@pytest.mark.parametrize("k", [-3, -2, -1, 0, 1, 2, 3])
def test_moments_match_quadrature(order, k):
    basis = spline_basis.make_uniform_basis(0.5, 2.0, 4, order)
    for n in range(1, basis.count + 1):
        lo, hi = spline_basis.support(basis, n)
        knots = list(basis.knots(n)[1:-1])
        expected, _ = quad(lambda t: t ** k * spline_basis.eval(basis, n, t), lo, hi,
                           points=knots, epsabs=1e-14, epsrel=1e-12)
        assert spline_basis.moment(basis, n, k) == pytest.approx(expected, rel=1e-9, abs=1e-13)
