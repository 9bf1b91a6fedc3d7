"""Moment-generating function ``m_n(t) = E exp(t K_n)`` and its bounds.

Engines (all for ``t > 0``):

* ``Series``     rising-factorial-moment series, any ``theta``
* ``MlIntegral`` Laguerre quadrature of the Mittag-Leffler representation
* ``Sharp``      leading term ``d(t)**-n / alpha`` minus a quadrature remainder
* ``GfCoeff``    Taylor coefficients of the closed-form generating function
* ``Enumeration`` brute force over partitions, ``n <= 12``

For ``t <= 0`` the exact law of ``K_n`` is summed directly (``Exact``).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln, roots_genlaguerre

from ._series import log_sum_positive
from .core import ModelParams, log_c_factor
from .errors import DomainError, NumericError
from .ldp import d_factor, log1mexp, log_d
from .mittag import (
    DEFAULT_QUAD,
    DEFAULT_SERIES,
    QuadratureConfig,
    SeriesConfig,
    g_tail_integral,
    ml3_series_log,
    ml_series_log,
)
from .partition import MAX_EXACT_N, exact_mgf_enumeration, kn_distribution

__all__ = [
    "MgfResult",
    "MgfBounds",
    "METHODS",
    "mgf",
    "mgf_series_theta0",
    "mgf_series_theta0_deriv",
    "mgf_ml_form_theta0",
    "mgf_sharp_theta0",
    "remainder_bound",
    "mgf_sandwich_theta0",
    "log_sandwich_theta0",
    "mgf_series_general",
    "mgf_integral_general",
    "mgf_bounds_general",
    "log_i_n",
    "gf_radius",
    "gf_closed_form",
    "gf_taylor_coeff",
]

METHODS = ("Series", "MlIntegral", "Sharp", "GfCoeff", "Enumeration", "Exact")
# Gamma(n) overflows the Laguerre weights past this
MAX_QUAD_N = 150
GF_MAX_N = 30
_NEGLIGIBLE_WEIGHT = 1e-20
_LOG_MAX = 709.78


@dataclass(frozen=True)
class MgfResult:
    value: float
    log_value: float
    method: str
    terms_used: int = 0
    remainder: Optional[float] = None


@dataclass(frozen=True)
class MgfBounds:
    lower: float
    upper: float

    def contains(self, v: float, rel: float = 0.0) -> bool:
        slack = rel * abs(v)
        return self.lower - slack <= v <= self.upper + slack


def _result(log_value, method, terms=0, remainder=None):
    value = math.exp(log_value) if log_value < _LOG_MAX else math.inf
    return MgfResult(value, float(log_value), method, int(terms), remainder)


def _check_t(t):
    if not t > 0:
        raise DomainError(f"this engine needs t > 0, got {t}")


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def _check_n(n, lo=1):
    if int(n) != n or n < lo:
        raise DomainError(f"n must be an integer >= {lo}, got {n}")


_HEAD_END = 1.0
_HEAD_POWER = 6
_HEAD_NODES = 48


@functools.lru_cache(maxsize=256)
def _laguerre(nodes: int, power: float):
    """Nodes and log weights for ``int_0^inf s**power e**-s f(s) ds / Gamma(power+1)``.

    Composite rule: Gauss-Laguerre on ``[1, inf)`` after the shift ``s = 1 + v``,
    and Gauss-Legendre on ``[0, 1]`` after ``s = w**6``. The head substitution
    lifts the ``s**(power + a l)`` endpoint behaviour of Mittag-Leffler
    integrands to a high power of ``w``; plain Laguerre converges only
    algebraically on it.
    """
    a, k = _HEAD_END, _HEAD_POWER
    v, wl = roots_genlaguerre(nodes, 0.0)
    tail_s = a + v
    with np.errstate(divide="ignore"):
        tail_logw = np.log(wl) - a + power * np.log(tail_s)
    x, wg = np.polynomial.legendre.leggauss(_HEAD_NODES)
    w = 0.5 * (x + 1.0)
    head_s = a * w**k
    head_logw = (
        np.log(0.5 * wg) + math.log(k) + (power + 1.0) * math.log(a)
        + (k * (power + 1.0) - 1.0) * np.log(w) - head_s
    )
    s = np.concatenate([head_s, tail_s])
    logw = np.concatenate([head_logw, tail_logw]) - math.lgamma(power + 1.0)
    keep = logw > math.log(_NEGLIGIBLE_WEIGHT)
    s, logw = s[keep], logw[keep]
    s.setflags(write=False)
    logw.setflags(write=False)
    return s, logw


def _logsumexp(v):
    v = np.asarray(v, dtype=np.float64)
    m = v.max()
    return float(m + math.log(np.exp(v - m).sum()))


# --- theta = 0 ---------------------------------------------------------------


def mgf_series_theta0(alpha: float, n: int, t: float, cfg: SeriesConfig = DEFAULT_SERIES) -> MgfResult:
    """Series ``sum_l r**l Gamma(n + a l) / (Gamma(a l + 1) (n-1)!)``, ``r = 1 - e**-t``."""
    _check_alpha(alpha)
    _check_n(n)
    if t == 0:
        return _result(0.0, "Series", 1)
    _check_t(t)
    lr, lgn = log1mexp(t), math.lgamma(n)

    def terms(l):
        al = alpha * l
        return l * lr + gammaln(n + al) - gammaln(al + 1.0) - lgn

    lv, used = log_sum_positive(terms, cfg.rel_tol, cfg.max_terms)
    return _result(lv, "Series", used)


def mgf_series_theta0_deriv(alpha: float, n: int, t: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """``m_n'(t)`` from the termwise derivative of the series."""
    _check_alpha(alpha)
    _check_n(n)
    _check_t(t)
    lr, lgn = log1mexp(t), math.lgamma(n)

    def terms(l):
        l = l + 1
        al = alpha * l
        return np.log(l) + (l - 1) * lr - t + gammaln(n + al) - gammaln(al + 1.0) - lgn

    lv, _ = log_sum_positive(terms, cfg.rel_tol, cfg.max_terms)
    return math.exp(lv)


def mgf_ml_form_theta0(alpha: float, n: int, t: float, quad: QuadratureConfig = DEFAULT_QUAD,
                       cfg: SeriesConfig = DEFAULT_SERIES) -> MgfResult:
    """``(1/(n-1)!) int y**(n-1) e**-y E_a((1 - e**-t) y**a) dy`` by Gauss-Laguerre.

    Substituting ``y = s / d(t)`` folds the ``exp(y (1 - d))`` growth of the
    Mittag-Leffler factor into the weight, leaving an integrand that tends
    to the constant ``1/a``.
    """
    _check_alpha(alpha)
    _check_n(n)
    _check_t(t)
    if n > MAX_QUAD_N:
        raise NumericError(f"quadrature engines support n <= {MAX_QUAD_N}")
    lr, ld = log1mexp(t), log_d(alpha, t)
    d = math.exp(ld)
    s, logw = _laguerre(quad.laguerre_nodes, float(n - 1))
    vals = np.empty(s.size)
    for j, sj in enumerate(s):
        z = math.exp(lr + alpha * (math.log(sj) - ld))
        le, _ = ml_series_log(alpha, z, cfg)
        vals[j] = logw[j] - sj * (1.0 - d) / d + le
    return _result(-n * ld + _logsumexp(vals), "MlIntegral", s.size)


def mgf_sharp_theta0(alpha: float, n: int, t: float, quad: QuadratureConfig = DEFAULT_QUAD) -> MgfResult:
    """Leading term ``d(t)**-n / a`` minus the remainder ``R_n(t)``.

    ``R_n(t) = E[T((1 - e**-t) Y**a)]`` with ``Y ~ Gamma(n, 1)`` and ``T`` the
    kernel tail integral, evaluated by Gauss-Laguerre over ``Y``.
    """
    _check_alpha(alpha)
    _check_n(n, lo=2)
    _check_t(t)
    if n > MAX_QUAD_N:
        raise NumericError(f"quadrature engines support n <= {MAX_QUAD_N}")
    r = -math.expm1(-t)
    y, logw = _laguerre(quad.laguerre_nodes, float(n - 1))
    tails = np.array([g_tail_integral(alpha, r * yj**alpha, quad) for yj in y])
    rem = float(np.dot(np.exp(logw), tails))
    lead = math.exp(-n * log_d(alpha, t)) / alpha
    value = lead - rem
    if not value > 0:
        raise NumericError("sharp expansion produced a nonpositive value")
    return MgfResult(value, math.log(value), "Sharp", y.size, rem)


def remainder_bound(alpha: float, n: int, t: float) -> float:
    """``n**(1-a) Gamma(a) / ((n - a) pi sin(pi a) (1 - e**-t))``."""
    return n ** (1.0 - alpha) * math.gamma(alpha) / (
        (n - alpha) * math.pi * math.sin(math.pi * alpha) * -math.expm1(-t)
    )


def log_sandwich_theta0(alpha: float, n: int, t: float):
    """``(log lower, log upper)`` of the closed-form bracket; lower is -inf when vacuous."""
    _check_alpha(alpha)
    _check_n(n, lo=2)
    _check_t(t)
    ld = log_d(alpha, t)
    log_upper = -n * ld - math.log(alpha)
    eps = n ** (1.0 - alpha) * math.gamma(1.0 + alpha) * math.exp(n * ld) / (
        (n - alpha) * math.pi * math.sin(math.pi * alpha) * -math.expm1(-t)
    )
    log_lower = log_upper + math.log1p(-eps) if eps < 1.0 else -math.inf
    return log_lower, log_upper


def mgf_sandwich_theta0(alpha: float, n: int, t: float) -> MgfBounds:
    """Closed-form bracket on ``m_n(t)`` at ``theta = 0``; lower may be negative.

    Entries overflow to ``inf`` past the double range; use
    :func:`log_sandwich_theta0` there.
    """
    _check_alpha(alpha)
    _check_n(n, lo=2)
    _check_t(t)
    ld = log_d(alpha, t)
    log_upper = -n * ld - math.log(alpha)
    upper = math.exp(log_upper) if log_upper < _LOG_MAX else math.inf
    eps = n ** (1.0 - alpha) * math.gamma(1.0 + alpha) * math.exp(n * ld) / (
        (n - alpha) * math.pi * math.sin(math.pi * alpha) * -math.expm1(-t)
    )
    return MgfBounds(upper * (1.0 - eps), upper)


# --- general theta -----------------------------------------------------------


def mgf_series_general(params: ModelParams, n: int, t: float, cfg: SeriesConfig = DEFAULT_SERIES) -> MgfResult:
    """Series for ``m_n(t)`` under ``(alpha, theta)``, ``t > 0``."""
    a, th = params.alpha, params.theta
    _check_alpha(a)
    _check_n(n)
    if t == 0:
        return _result(0.0, "Series", 1)
    _check_t(t)
    ta = params.theta_alpha
    lr = log1mexp(t)
    lg0 = gammaln(ta + 1.0)

    def terms(l):
        al = a * l
        return (
            gammaln(ta + 1.0 + l) - lg0 - gammaln(l + 1.0)
            + l * lr + gammaln(n + th + al) - gammaln(th + al + 1.0)
        )

    lv, used = log_sum_positive(terms, cfg.rel_tol, cfg.max_terms)
    lv += math.lgamma(th + 1.0) - t * ta - math.lgamma(n + th)
    return _result(lv, "Series", used)


def mgf_integral_general(params: ModelParams, n: int, t: float, quad: QuadratureConfig = DEFAULT_QUAD,
                         cfg: SeriesConfig = DEFAULT_SERIES) -> MgfResult:
    """Laguerre quadrature of the three-parameter Mittag-Leffler representation."""
    a, th = params.alpha, params.theta
    _check_alpha(a)
    _check_n(n)
    _check_t(t)
    if n > MAX_QUAD_N:
        raise NumericError(f"quadrature engines support n <= {MAX_QUAD_N}")
    ta = params.theta_alpha
    lr, ld = log1mexp(t), log_d(a, t)
    d = math.exp(ld)
    power = n + th - 1.0
    s, logw = _laguerre(quad.laguerre_nodes, power)
    vals = np.empty(s.size)
    for j, sj in enumerate(s):
        z = math.exp(lr + a * (math.log(sj) - ld))
        le, _ = ml3_series_log(a, th + 1.0, ta + 1.0, z, cfg)
        vals[j] = logw[j] - sj * (1.0 - d) / d + le
    lv = math.lgamma(th + 1.0) - t * ta - (power + 1.0) * ld + _logsumexp(vals)
    return _result(lv, "MlIntegral", s.size)


def log_i_n(params: ModelParams, n: int, t: float) -> float:
    """``log E_{a,0}[exp(t K_n) Gamma(theta_a + K_n) / Gamma(K_n)]`` from the exact law."""
    base = kn_distribution(ModelParams(params.alpha, 0.0), n)
    k = np.arange(1, n + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        v = np.log(base.probs) + t * k + gammaln(params.theta_alpha + k) - gammaln(k)
    return _logsumexp(v)


def mgf_bounds_general(params: ModelParams, n: int, t: float, cfg: SeriesConfig = DEFAULT_SERIES) -> MgfBounds:
    """Brackets on ``m_n(t)``.

    ``t <= 0``: ``[exp(t E K_n), e**t]``. ``t > 0``: the theta = 0 MGF scaled
    by ``c_n`` and, for ``theta > 0``, by ``(floor(theta_a) + n)**theta_a``
    (upper), for ``theta < 0`` by ``n**theta_a`` (lower).
    """
    _check_alpha(params.alpha)
    _check_n(n)
    if t <= 0:
        if n > MAX_EXACT_N:
            raise DomainError(f"exact mean needs n <= {MAX_EXACT_N}")
        mean = kn_distribution(params, n).mean()
        return MgfBounds(math.exp(t * mean), math.exp(t))
    base = mgf_series_theta0(params.alpha, n, t, cfg).log_value + log_c_factor(params, n)
    ta = params.theta_alpha
    if params.theta > 0:
        return MgfBounds(math.exp(base), math.exp(base + ta * math.log(math.floor(ta) + n)))
    return MgfBounds(math.exp(base + ta * math.log(n)), math.exp(base))


# --- generating function -----------------------------------------------------


def gf_radius(alpha: float, t: float) -> float:
    """The quantity ``1 + |1 - e**-t|**(1/a)``.

    This is not the radius of convergence of ``sum_n m_n(t) z**(n-1)`` when
    ``t != 0``: the closed form has a pole at ``z = d(t) < 1`` for ``t > 0``,
    and for ``t < 0`` the coefficients decay only polynomially. Use
    :func:`gf_series_radius` for the actual radius.
    """
    _check_alpha(alpha)
    return 1.0 + abs(-math.expm1(-t)) ** (1.0 / alpha)


def gf_series_radius(alpha: float, t: float) -> float:
    """Radius of convergence of ``F(t, .)``: ``d(t)`` for ``t > 0``, else 1."""
    _check_alpha(alpha)
    return d_factor(alpha, t) if t > 0 else 1.0


def gf_closed_form(alpha: float, t: float, z):
    """``F(t, z) = sum_n m_n(t) z**(n-1)`` at ``theta = 0``.

    Defined for ``|z| < gf_series_radius(a, t)``. Real ``z`` gives a float;
    complex ``z`` uses the principal branch of ``(1 - z)**a``.
    """
    radius = gf_series_radius(alpha, t)
    if not abs(z) < radius:
        raise DomainError(f"|z| = {abs(z)} outside the radius of convergence {radius}")
    em1 = math.expm1(t)
    if isinstance(z, (int, float)) and z < 1:
        w = (1.0 - z) ** alpha
        return (1.0 - em1 / (em1 - math.exp(t) * w)) / (1.0 - z)
    z = complex(z)
    w = (1.0 - z) ** alpha
    return (1.0 - em1 / (em1 - math.exp(t) * w)) / (1.0 - z)


def gf_taylor_coeff(alpha: float, t: float, n_max: int, cfg: SeriesConfig = DEFAULT_SERIES) -> np.ndarray:
    """``[m_1(t), ..., m_{n_max}(t)]`` from the binomial expansion of the generating function.

    Increments ``m_{j+1} - m_j = (1/j!) sum_k r**k (a k)^{(j)}``, ``r = 1 - e**-t``.
    """
    _check_alpha(alpha)
    _check_t(t)
    if not 1 <= n_max <= GF_MAX_N:
        raise DomainError(f"n_max must lie in [1, {GF_MAX_N}], got {n_max}")
    lr = log1mexp(t)
    out = np.empty(n_max)
    out[0] = math.exp(t)
    for j in range(1, n_max):
        lgj = math.lgamma(j + 1)

        def terms(k, j=j, lgj=lgj):
            k = k + 1
            ak = alpha * k
            return k * lr + gammaln(ak + j) - gammaln(ak) - lgj

        lv, _ = log_sum_positive(terms, cfg.rel_tol, cfg.max_terms)
        out[j] = out[j - 1] + math.exp(lv)
    return out


# --- dispatcher --------------------------------------------------------------


def mgf(params: ModelParams, n: int, t: float, method: str = "Series",
        cfg: SeriesConfig = DEFAULT_SERIES, quad: QuadratureConfig = DEFAULT_QUAD) -> MgfResult:
    """Evaluate ``m_n(t)`` with the named engine.

    ``t <= 0`` always goes to the exact law, whatever ``method`` says.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
    _check_n(n)
    if method == "Enumeration":
        v = exact_mgf_enumeration(params, n, t)
        return MgfResult(v, math.log(v), "Enumeration", 0)
    if t <= 0 or method == "Exact":
        if n > MAX_EXACT_N:
            raise DomainError(f"exact law needs n <= {MAX_EXACT_N}")
        return _result(kn_distribution(params, n).log_mgf(t), "Exact", n)
    if params.alpha == 0.0:
        raise DomainError("the series and quadrature engines need alpha > 0")
    theta0 = params.theta == 0.0
    if method == "Series":
        return mgf_series_general(params, n, t, cfg)
    if method == "MlIntegral":
        if theta0:
            return mgf_ml_form_theta0(params.alpha, n, t, quad, cfg)
        return mgf_integral_general(params, n, t, quad, cfg)
    if not theta0:
        raise DomainError(f"method {method} is only available at theta = 0")
    if method == "Sharp":
        if n == 1:
            return _result(t, "Sharp")
        return mgf_sharp_theta0(params.alpha, n, t, quad)
    coeffs = gf_taylor_coeff(params.alpha, t, n, cfg)
    return _result(math.log(coeffs[-1]), "GfCoeff", n)
