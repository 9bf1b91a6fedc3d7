import functools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewens_ldp.core import ModelParams
from ewens_ldp.errors import DomainError
from ewens_ldp.ldp import d_factor
from ewens_ldp.mgf import (
    METHODS,
    MgfBounds,
    gf_closed_form,
    gf_radius,
    gf_series_radius,
    gf_taylor_coeff,
    log_sandwich_theta0,
    mgf,
    mgf_bounds_general,
    mgf_integral_general,
    mgf_ml_form_theta0,
    mgf_sandwich_theta0,
    mgf_series_general,
    mgf_series_theta0,
    mgf_series_theta0_deriv,
    mgf_sharp_theta0,
    remainder_bound,
)
from ewens_ldp.partition import exact_mgf_enumeration, kn_distribution

E = math.e
M2 = 0.5 * E * E + 0.5 * E  # m_2(1) at alpha = 1/2
ENGINE_GRID = [(a, n, t) for a in (0.3, 0.5, 0.7) for n in range(2, 13) for t in (0.5, 1.0, 2.0)]


def rel(a, b):
    return abs(a - b) / abs(b)


@functools.lru_cache(maxsize=None)
def sharp(a, n, t):
    return mgf_sharp_theta0(a, n, t)


def test_series_examples():
    for a in (0.2, 0.5, 0.9):
        assert mgf_series_theta0(a, 1, 0.7).value == pytest.approx(math.exp(0.7), rel=1e-14)
        # m_n(t) = 1 + t E[K_n] + O(t^2) near zero
        small = mgf_series_theta0(a, 9, 1e-8)
        assert small.value == pytest.approx(1.0, abs=1e-7)
        mean = kn_distribution(ModelParams(a), 9).mean()
        assert math.expm1(small.log_value) / 1e-8 == pytest.approx(mean, rel=1e-6)
    assert mgf_series_theta0(0.5, 2, 1.0).value == pytest.approx(M2, rel=1e-14)


def test_ml_form_examples():
    assert rel(mgf_ml_form_theta0(0.5, 2, 1.0).value, M2) <= 1e-8
    assert rel(mgf_ml_form_theta0(0.4, 1, 0.5).value, math.exp(0.5)) <= 1e-8
    assert rel(mgf_ml_form_theta0(0.3, 5, 2.0).value, mgf_series_theta0(0.3, 5, 2.0).value) <= 1e-8


def test_sharp_examples():
    r = mgf_sharp_theta0(0.5, 5, 1.0)
    assert rel(r.value, mgf_series_theta0(0.5, 5, 1.0).value) <= 1e-6
    assert r.method == "Sharp" and r.remainder > 0


@pytest.mark.parametrize("a,n,t", ENGINE_GRID)
def test_engines_agree(a, n, t):
    p = ModelParams(a)
    ref = exact_mgf_enumeration(p, n, t)
    s = mgf_series_theta0(a, n, t).value
    assert rel(s, ref) <= 1e-10
    others = [
        mgf_ml_form_theta0(a, n, t).value,
        sharp(a, n, t).value,
        gf_taylor_coeff(a, t, n)[-1],
        mgf_series_general(p, n, t).value,
    ]
    for v in others:
        assert rel(v, s) <= 1e-6


@pytest.mark.parametrize("a,n,t", ENGINE_GRID)
def test_remainder_positive_and_bounded(a, n, t):
    rem = sharp(a, n, t).remainder
    assert 0 < rem <= remainder_bound(a, n, t)


@pytest.mark.parametrize("a,n,t", ENGINE_GRID)
def test_remainder_identity(a, n, t):
    lead = d_factor(a, t) ** -n / a
    rem = sharp(a, n, t).remainder
    from_series = lead - mgf_series_theta0(a, n, t).value
    # Subtracting two values of size ~lead leaves an absolute rounding floor of
    # a few ulps of lead, which is the limit when lead/R_n is very large.
    floor = 64 * np.finfo(float).eps * lead
    assert abs(from_series - rem) <= max(1e-6 * rem, floor)


@pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_recurrence(a, t):
    for n in range(1, 12):
        m_n = mgf_series_theta0(a, n, t).value
        lhs = mgf_series_theta0(a, n + 1, t).value
        rhs = m_n + (a / n) * math.expm1(t) * mgf_series_theta0_deriv(a, n, t)
        assert rel(rhs, lhs) <= 1e-9


def test_derivative_matches_exact_law():
    for a, n, t in [(0.4, 6, 0.8), (0.7, 12, 2.0)]:
        d = kn_distribution(ModelParams(a), n)
        k = np.arange(1, n + 1)
        expected = math.fsum(d.probs * k * np.exp(t * k))
        assert rel(mgf_series_theta0_deriv(a, n, t), expected) <= 1e-12


def test_sandwich_examples():
    # at n = 50 the bracket is only ~5e-13 wide, so allow rounding slack
    b = mgf_sandwich_theta0(0.5, 50, 1.0)
    assert b.lower < b.upper
    assert b.contains(mgf_series_theta0(0.5, 50, 1.0).value, rel=1e-13)
    t = math.log(2.0)
    assert d_factor(0.5, t) == pytest.approx(0.75, rel=1e-15)
    for n in (10, 30, 200):
        assert mgf_sandwich_theta0(0.5, n, t).upper == pytest.approx(2 * (4 / 3) ** n, rel=1e-12)


@pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_sandwich_tightens(a, t):
    gaps = []
    for n in (10, 100, 1000):
        lo, hi = log_sandwich_theta0(a, n, t)
        v = mgf_series_theta0(a, n, t).log_value
        slack = 1e-12 * abs(v)
        assert lo - slack <= v <= hi + slack
        gaps.append(hi - lo)
    assert gaps[0] >= gaps[1] >= gaps[2] and gaps[2] < 1e-6


def test_general_examples():
    for a, n, t in [(0.3, 4, 0.5), (0.6, 50, 2.0), (0.5, 300, 1.0)]:
        assert rel(mgf_series_general(ModelParams(a, 0.0), n, t).value, mgf_series_theta0(a, n, t).value) <= 1e-12
    for th in (-0.2, 0.5, 3.0):
        assert rel(mgf_series_general(ModelParams(0.4, th), 1, 0.9).value, math.exp(0.9)) <= 1e-14
    p = ModelParams(0.5, 1.0)
    assert rel(mgf_series_general(p, 4, 0.7).value, exact_mgf_enumeration(p, 4, 0.7)) <= 1e-10


def test_general_integral_examples():
    p = ModelParams(0.5, 1.0)
    assert rel(mgf_integral_general(p, 4, 0.7).value, mgf_series_general(p, 4, 0.7).value) <= 1e-7
    assert mgf_integral_general(ModelParams(0.5, 0.5), 1, 1.0).value == pytest.approx(E, abs=1e-8)
    assert rel(mgf_integral_general(ModelParams(0.5), 7, 1.3).value, mgf_ml_form_theta0(0.5, 7, 1.3).value) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(0.05, 0.95),
    theta_off=st.floats(1e-3, 4.0),
    n=st.integers(1, 200),
    t=st.floats(0.01, 4.0),
)
def test_general_series_matches_exact_law(alpha, theta_off, n, t):
    p = ModelParams(alpha, -alpha + theta_off)
    exact = kn_distribution(p, n).log_mgf(t)
    assert mgf_series_general(p, n, t).log_value == pytest.approx(exact, abs=1e-10 * max(1.0, abs(exact)))


@pytest.mark.parametrize("theta", [-0.25, 0.5, 1.0])
@pytest.mark.parametrize("t", [0.5, 1.0])
def test_general_quadrature_matches_series(theta, t):
    p = ModelParams(0.5, theta)
    for n in (2, 6, 12):
        assert rel(mgf_integral_general(p, n, t).value, mgf_series_general(p, n, t).value) <= 1e-7


def test_bracket_examples():
    for th in (1.0, -0.25):
        p = ModelParams(0.5, th)
        assert mgf_bounds_general(p, 8, 1.0).contains(exact_mgf_enumeration(p, 8, 1.0))
    for p in (ModelParams(0.3, -0.1), ModelParams(0.5, 1.0), ModelParams(0.7, 0.0)):
        for n in range(1, 11):
            for t in (-2.0, -0.5):
                assert mgf_bounds_general(p, n, t).contains(exact_mgf_enumeration(p, n, t), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("theta", [0.2, 0.5, 1.0, 2.5])
def test_bracket_positive_theta_from_n2(alpha, theta):
    p = ModelParams(alpha, theta)
    for n in range(2, 61):
        for t in (0.1, 0.5, 1.0, 2.0, 4.0):
            assert mgf_bounds_general(p, n, t).contains(math.exp(kn_distribution(p, n).log_mgf(t)), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("theta", [-0.1, -0.2])
def test_bracket_negative_theta_large_n(alpha, theta):
    # the upper end fails while P(K_n = 1) ~ n**-alpha is still large; see below
    p = ModelParams(alpha, theta)
    for n in (40, 100, 150):
        for t in (0.1, 0.5, 1.0, 2.0, 4.0):
            assert mgf_bounds_general(p, n, t).contains(math.exp(kn_distribution(p, n).log_mgf(t)), rel=1e-12)


def test_bracket_negative_theta_small_n_counterexample():
    # For theta_a < 0 the weight Gamma(theta_a + K)/Gamma(K) exceeds 1 only at K = 1,
    # so the upper end can fail while the atom at K_n = 1 dominates.
    p = ModelParams(0.5, -0.25)
    v = exact_mgf_enumeration(p, 2, 1.0)
    assert v > mgf_bounds_general(p, 2, 1.0).upper


def test_bracket_fails_at_n1_for_small_positive_theta_alpha():
    # m_1 = e^t but the lower end is e^t / Gamma(theta_a + 1) > e^t when 0 < theta_a < 1
    p = ModelParams(0.5, 0.2)
    b = mgf_bounds_general(p, 1, 1.0)
    assert b.lower == pytest.approx(E / math.gamma(1.4), rel=1e-12)
    assert not b.contains(E)


def test_gf_examples():
    for a in (0.3, 0.8):
        assert gf_closed_form(a, 1.3, 0.0) == pytest.approx(math.exp(1.3), rel=1e-14)
    assert gf_closed_form(0.5, 1e-300, 0.5) == pytest.approx(2.0, rel=1e-12)
    assert gf_radius(0.5, math.log(2.0)) == pytest.approx(1.25, rel=1e-15)
    # the coefficients grow like d(t)**-n, so the series radius is d(t) = 0.75
    assert gf_series_radius(0.5, math.log(2.0)) == pytest.approx(0.75, rel=1e-15)
    assert gf_series_radius(0.5, -1.0) == 1.0
    with pytest.raises(DomainError):
        gf_closed_form(0.5, math.log(2.0), 0.8)


@pytest.mark.parametrize("a,t", [(0.3, 0.5), (0.5, 1.0), (0.7, 2.0)])
def test_gf_series_radius_is_growth_rate(a, t):
    c = gf_taylor_coeff(a, t, 30)
    assert (c[-1] / c[-2]) == pytest.approx(1 / gf_series_radius(a, t), rel=0.05)


def test_gf_coeffs_examples():
    c = gf_taylor_coeff(0.5, 1.0, 30)
    assert c[0] == pytest.approx(E, rel=1e-15)
    assert c[1] == pytest.approx(M2, rel=1e-14)
    assert (np.diff(c) > 0).all()
    with pytest.raises(DomainError):
        gf_taylor_coeff(0.5, 1.0, 31)


@pytest.mark.parametrize("a,t", [(0.3, 0.5), (0.5, 1.0), (0.7, 2.0)])
def test_gf_closed_form_taylor_coefficients(a, t):
    # Cauchy integral of F(t, .) on a circle inside the disc, by the trapezoid rule
    rho, m = 0.5 * gf_series_radius(a, t), 256
    z = rho * np.exp(2j * np.pi * np.arange(m) / m)
    f = np.array([gf_closed_form(a, t, complex(zz)) for zz in z])
    coeffs = (np.fft.fft(f) / m).real / rho ** np.arange(m)
    np.testing.assert_allclose(coeffs[:12], gf_taylor_coeff(a, t, 12), rtol=1e-9)


def test_dispatcher():
    p = ModelParams(0.5)
    for method in METHODS:
        r = mgf(p, 2, 1.0, method)
        assert r.value == pytest.approx(M2, rel=1e-8)
        assert r.value == pytest.approx(math.exp(r.log_value), rel=1e-12)
    assert mgf(p, 5, -1.0, "Series").method == "Exact"
    assert mgf(ModelParams(0.5, 1.0), 4, 0.0).value == 1.0
    with pytest.raises(DomainError):
        mgf(p, 2, 1.0, "Newton")
    with pytest.raises(DomainError):
        mgf(ModelParams(0.5, 1.0), 4, 1.0, "Sharp")
    with pytest.raises(DomainError):
        mgf(ModelParams(0.0, 1.0), 4, 1.0)


def test_sandwich_overflows_to_inf():
    b = mgf_sandwich_theta0(0.5, 5000, 2.0)
    assert b.upper == math.inf


def test_bounds_type():
    assert MgfBounds(1.0, 2.0).contains(1.5)
    assert not MgfBounds(1.0, 2.0).contains(2.5)
