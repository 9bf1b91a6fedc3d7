"""Mittag-Leffler functions for real arguments.

The one-parameter function comes two ways: the power series and the
integral representation ``E_a(z) = exp(z**(1/a))/a - int_0^inf G_a(x, z) dx``
valid for ``z > 0``. The three-parameter function has only the series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from ._series import log_sum_positive, sum_alternating
from .errors import DomainError, NumericError

__all__ = [
    "SeriesConfig",
    "QuadratureConfig",
    "ml_series",
    "ml_series_log",
    "ml_kernel_g",
    "g_tail_integral",
    "g_tail_bound",
    "ml_integral",
    "ml3_series",
    "ml3_series_log",
]


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-14
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.rel_tol > 0 or self.max_terms < 1:
            raise DomainError("SeriesConfig needs rel_tol > 0 and max_terms >= 1")


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_subdivisions: int = 2000
    laguerre_nodes: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.max_subdivisions > 0 and self.laguerre_nodes > 0):
            raise DomainError("QuadratureConfig fields must be positive")


DEFAULT_SERIES = SeriesConfig()
DEFAULT_QUAD = QuadratureConfig()


def _check_alpha(alpha, upper_closed=False):
    ok = 0.0 < alpha <= 1.0 if upper_closed else 0.0 < alpha < 1.0
    if not ok:
        raise DomainError(f"alpha out of range: {alpha}")


def ml_series_log(alpha: float, z: float, cfg: SeriesConfig = DEFAULT_SERIES):
    """``(log E_a(z), terms_used)`` for ``z >= 0``; no overflow for large z."""
    _check_alpha(alpha, upper_closed=True)
    if z < 0:
        raise DomainError("ml_series_log needs z >= 0")
    if z == 0:
        return 0.0, 1
    lz = math.log(z)
    return log_sum_positive(lambda l: l * lz - gammaln(alpha * l + 1.0), cfg.rel_tol, cfg.max_terms)


def ml_series(alpha: float, z: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """One-parameter Mittag-Leffler function ``sum z**l / Gamma(a l + 1)``."""
    if z >= 0:
        lv, _ = ml_series_log(alpha, z, cfg)
        return math.exp(lv) if lv < 709.0 else math.inf
    _check_alpha(alpha, upper_closed=True)
    la = math.log(-z)
    s, _ = sum_alternating(
        lambda l: l * la - gammaln(alpha * l + 1.0),
        lambda l: np.where(l % 2 == 0, 1.0, -1.0),
        cfg.rel_tol,
        cfg.max_terms,
    )
    return s


def ml_kernel_g(alpha: float, x: float, y: float) -> float:
    """Kernel ``G_a(x, y)`` of the integral representation."""
    _check_alpha(alpha)
    if not (x > 0 and y > 0):
        raise DomainError("ml_kernel_g needs x > 0 and y > 0")
    s, c = math.sin(math.pi * alpha), math.cos(math.pi * alpha)
    return math.exp(-(x ** (1.0 / alpha))) * y * s / (x * x - 2.0 * x * y * c + y * y) / (math.pi * alpha)


def g_tail_bound(alpha: float, y: float) -> float:
    """Closed-form upper bound ``Gamma(a) / (pi sin(pi a) y)`` on the kernel integral."""
    return math.gamma(alpha) / (math.pi * math.sin(math.pi * alpha) * y)


def g_tail_integral(alpha: float, y: float, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``int_0^inf G_a(x, y) dx`` by adaptive quadrature in ``u = x**(1/a)``.

    After the substitution the integrand is
    ``exp(-u) u**(a-1) y sin(pi a) / (pi (u**(2a) - 2 u**a y cos(pi a) + y**2))``.
    The ``u**(a-1)`` endpoint singularity goes to an algebraic-weight rule.
    """
    _check_alpha(alpha)
    if not y > 0:
        raise DomainError("g_tail_integral needs y > 0")
    s, c = math.sin(math.pi * alpha), math.cos(math.pi * alpha)
    pre = y * s / math.pi

    def smooth(u):
        ua = u**alpha
        return pre * math.exp(-u) / (ua * ua - 2.0 * ua * y * c + y * y)

    def full(u):
        return smooth(u) * u ** (alpha - 1.0)

    # the Lorentzian bump sits near x = y, i.e. u = y**(1/a)
    peak = y ** (1.0 / alpha)
    split = min(peak, 1.0)
    lim = quad.max_subdivisions
    eps = quad.abs_tol / 4
    pieces = [
        integrate.quad(smooth, 0.0, split, weight="alg", wvar=(alpha - 1.0, 0.0), epsabs=eps, epsrel=0.0, limit=lim)
    ]
    if split < 1.0:
        # from a tiny bump up to u = 1 the scale spans decades: integrate in log u
        pieces.append(
            integrate.quad(lambda v: full(math.exp(v)) * math.exp(v), math.log(split), 0.0,
                           epsabs=eps, epsrel=0.0, limit=lim)
        )
    # e**-u is below 1e-34 past this point
    lo = max(split, 1.0)
    upper = lo + 80.0
    points = [p for p in (peak, 2.0 * peak) if lo < p < upper]
    pieces.append(integrate.quad(full, lo, upper, points=points or None, epsabs=eps, epsrel=0.0, limit=lim))
    total = math.fsum(v for v, _ in pieces)
    err = sum(e for _, e in pieces)
    if not (math.isfinite(total) and err <= 10 * quad.abs_tol):
        raise NumericError(f"kernel integral quadrature failed (est. error {err:.3g})")
    return total


def ml_integral(alpha: float, z: float, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``E_a(z)`` for real ``z > 0`` from the integral representation."""
    _check_alpha(alpha)
    if not z > 0:
        raise DomainError("ml_integral needs real z > 0")
    return math.exp(z ** (1.0 / alpha)) / alpha - g_tail_integral(alpha, z, quad)


def _ml3_log_mag(alpha, beta, gamma, la):
    lg0 = gammaln(gamma)

    def f(l):
        return gammaln(gamma + l) - lg0 - gammaln(l + 1.0) + l * la - gammaln(alpha * l + beta)

    return f


def ml3_series_log(alpha: float, beta: float, gamma: float, z: float, cfg: SeriesConfig = DEFAULT_SERIES):
    """``(log E^g_{a,b}(z), terms_used)`` for ``z >= 0``."""
    if not (0.0 < alpha < 1.0 and beta > 0 and gamma > 0):
        raise DomainError("ml3 needs 0 < alpha < 1, beta > 0, gamma > 0")
    if z < 0:
        raise DomainError("ml3_series_log needs z >= 0")
    if z == 0:
        return -math.lgamma(beta), 1
    return log_sum_positive(_ml3_log_mag(alpha, beta, gamma, math.log(z)), cfg.rel_tol, cfg.max_terms)


def ml3_series(alpha: float, beta: float, gamma: float, z: float, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Three-parameter Mittag-Leffler ``sum (g)^{(l)} z**l / (l! Gamma(a l + b))``."""
    if z >= 0:
        lv, _ = ml3_series_log(alpha, beta, gamma, z, cfg)
        return math.exp(lv) if lv < 709.0 else math.inf
    if not (0.0 < alpha < 1.0 and beta > 0 and gamma > 0):
        raise DomainError("ml3 needs 0 < alpha < 1, beta > 0, gamma > 0")
    s, _ = sum_alternating(
        _ml3_log_mag(alpha, beta, gamma, math.log(-z)),
        lambda l: np.where(l % 2 == 0, 1.0, -1.0),
        cfg.rel_tol,
        cfg.max_terms,
    )
    return s
