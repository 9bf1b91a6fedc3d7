"""Model parameters and gamma-ratio numerics shared by the other modules.

Everything here works in the log domain. Rising factorials with a base in
(-1, 0) never appear: the two-parameter model is always rewritten so the
bases are ``theta_alpha + 1`` and ``theta + 1``, both strictly positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "ModelParams",
    "log_rising",
    "rising",
    "log_a_factor",
    "a_factor",
    "log_c_factor",
    "c_factor",
    "p_prefactor",
    "log_martingale_weight",
    "martingale_weight",
]

_DIRECT_PRODUCT_MAX = 8


@dataclass(frozen=True)
class ModelParams:
    """Ewens-Pitman parameters ``(alpha, theta)``.

    Valid when ``0 <= alpha < 1`` and ``theta > -alpha``.
    """

    alpha: float
    theta: float = 0.0

    def __post_init__(self):
        a, t = float(self.alpha), float(self.theta)
        if not (math.isfinite(a) and math.isfinite(t)):
            raise DomainError(f"non-finite parameters alpha={a}, theta={t}")
        if not 0.0 <= a < 1.0:
            raise DomainError(f"alpha must lie in [0, 1), got {a}")
        if not t > -a:
            raise DomainError(f"theta must exceed -alpha={-a}, got {t}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "theta", t)

    @property
    def theta_alpha(self) -> float:
        if self.alpha == 0.0:
            raise DomainError("theta_alpha is undefined when alpha == 0")
        return self.theta / self.alpha


def _require_pitman(params: ModelParams) -> None:
    if params.alpha <= 0.0:
        raise DomainError("this quantity needs alpha > 0")


def log_rising(a: float, n: int) -> float:
    """Log of the rising factorial ``a (a+1) ... (a+n-1)``, with ``a > 0``.

    Small orders use the direct product, which stays accurate as ``a -> 0+``.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"order must be nonnegative, got {n}")
    if n == 0:
        return 0.0
    if not a > 0.0:
        raise DomainError(f"rising factorial base must be positive, got {a}")
    if n <= _DIRECT_PRODUCT_MAX:
        return math.fsum(math.log(a + i) for i in range(n))
    return math.lgamma(a + n) - math.lgamma(a)


def rising(a: float, n: int) -> float:
    return math.exp(log_rising(a, n))


def log_a_factor(theta: float, n: int) -> float:
    """``log a_n = log Gamma(n) + log Gamma(theta+1) - log Gamma(n+theta)``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    # a_n = (n-1)! / (theta+1)^{(n-1)}
    return math.lgamma(n) - log_rising(theta + 1.0, n - 1)


def a_factor(theta: float, n: int) -> float:
    return math.exp(log_a_factor(theta, n))


def log_c_factor(params: ModelParams, n: int) -> float:
    _require_pitman(params)
    return log_a_factor(params.theta, n) - math.lgamma(params.theta_alpha + 1.0)


def c_factor(params: ModelParams, n: int) -> float:
    """``Gamma(n) Gamma(theta+1) / (Gamma(theta_alpha+1) Gamma(n+theta))``."""
    return math.exp(log_c_factor(params, n))


def p_prefactor(params: ModelParams, n: int) -> float:
    """Polynomial prefactor of the concentration bound.

    ``(floor(theta_alpha) + n) ** theta_alpha`` for ``theta > 0``, else 1.
    """
    _require_pitman(params)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if params.theta <= 0.0:
        return 1.0
    ta = params.theta_alpha
    return float(math.floor(ta) + n) ** ta


def log_martingale_weight(params: ModelParams, n: int, k: int) -> float:
    _require_pitman(params)
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in [1, {n}], got {k}")
    # Gamma(ta+k) / (Gamma(ta+1) Gamma(k)) = (ta+1)^{(k-1)} / (k-1)!
    return (
        log_a_factor(params.theta, n)
        + log_rising(params.theta_alpha + 1.0, k - 1)
        - math.lgamma(k)
    )


def martingale_weight(params: ModelParams, n: int, k: int) -> float:
    """Change-of-measure weight from ``theta = 0`` to ``theta`` at ``K_n = k``."""
    return math.exp(log_martingale_weight(params, n, k))
