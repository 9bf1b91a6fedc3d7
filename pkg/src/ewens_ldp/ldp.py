"""Limit scaled log-MGF, its Legendre transform, and the Ewens rate function."""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, NumericError

__all__ = [
    "RateResult",
    "RateEvalConfig",
    "log1mexp",
    "log_d",
    "d_factor",
    "limit_log_mgf",
    "limit_log_mgf_deriv",
    "rate_alpha",
    "rate_ewens",
]


@dataclass(frozen=True)
class RateResult:
    x: float
    t_x: float
    rate: float
    iterations: int = 0


@dataclass(frozen=True)
class RateEvalConfig:
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.tol > 0 and self.max_iter > 0):
            raise DomainError("RateEvalConfig fields must be positive")


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def log1mexp(t):
    """``log(1 - e**-t)`` for ``t > 0``, accurate at both ends."""
    return math.log(-math.expm1(-t)) if t < 1.0 else math.log1p(-math.exp(-t))


def log_d(alpha: float, t: float) -> float:
    """``log d(t)`` with ``d(t) = 1 - (1 - e**-t)**(1/a)``; 0 for ``t <= 0``."""
    if t <= 0:
        return 0.0
    # 1 - (1 - s)**(1/a) written with log1p/expm1 so t -> 0 and t -> inf stay exact
    return math.log(-math.expm1(log1mexp(t) / alpha))


def d_factor(alpha: float, t: float) -> float:
    _check_alpha(alpha)
    return math.exp(log_d(alpha, t))


def limit_log_mgf(alpha: float, t: float) -> float:
    """``L_a(t) = -log(1 - (1 - e**-t)**(1/a))`` for ``t > 0``, else 0."""
    _check_alpha(alpha)
    return -log_d(alpha, t)


def limit_log_mgf_deriv(alpha: float, t: float) -> float:
    """``L_a'(t)``; increases from 0 to 1 on ``t > 0``."""
    _check_alpha(alpha)
    if t <= 0:
        return 0.0
    lr = log1mexp(t)
    return math.exp((1.0 / alpha - 1.0) * lr - t - log_d(alpha, t)) / alpha


def rate_alpha(alpha: float, x: float, cfg: RateEvalConfig = RateEvalConfig()) -> RateResult:
    """Legendre transform ``sup_t {x t - L_a(t)}`` through the root of ``L_a'(t) = x``.

    ``x = 1`` returns the limit ``log(1/a)`` and ``x > 1`` returns ``inf``
    (``K_n <= n``), both with ``t_x = inf``.
    """
    _check_alpha(alpha)
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be nonnegative, got {x}")
    if x == 0:
        return RateResult(0.0, 0.0, 0.0, 0)
    if x >= 1:
        return RateResult(x, math.inf, -math.log(alpha) if x == 1 else math.inf, 0)

    # solve in u = log t: t_x spans ~1e-14 (x -> 0, alpha near 1) to ~30 (x -> 1)
    def f(u):
        return limit_log_mgf_deriv(alpha, math.exp(u)) - x

    lo, hi, it = 0.0, 0.0, 0
    step = 1.0 if f(0.0) < 0 else -1.0
    while (f(hi) < 0) == (step > 0):
        lo, hi = hi, hi + step
        it += 1
        if it > cfg.max_iter or hi > 7.0:
            raise NumericError(f"could not bracket t_x for x={x}")
    lo, hi = min(lo, hi), max(lo, hi)
    try:
        u, info = brentq(f, lo, hi, xtol=cfg.tol, rtol=8.9e-16, maxiter=cfg.max_iter, full_output=True)
    except RuntimeError as exc:
        raise NumericError(str(exc)) from exc
    t_x = math.exp(u)
    rate = x * t_x + log_d(alpha, t_x)
    return RateResult(x, t_x, max(rate, 0.0), it + info.iterations)


def rate_ewens(theta: float, x: float) -> float:
    """``x log(x/theta) - x + theta``; equals ``theta`` at ``x = 0``."""
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"rate is infinite for x < 0, got {x}")
    if x == 0:
        return theta
    return x * math.log(x / theta) - x + theta
