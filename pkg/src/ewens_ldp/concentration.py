"""Concentration bound on ``P(K_n >= n x)`` and the exact quantities it dominates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import ModelParams, log_c_factor, p_prefactor
from .errors import DomainError, NumericError
from .ldp import RateEvalConfig, rate_alpha
from .mgf import mgf_series_general
from .mittag import DEFAULT_SERIES, SeriesConfig
from .partition import MAX_EXACT_N, kn_distribution

__all__ = [
    "BoundReport",
    "threshold",
    "paper_bound",
    "log_paper_bound",
    "exact_tail",
    "exact_chernoff",
    "bound_report",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
# beyond this t the series needs ~e**t terms
_T_MAX = 9.0
_T_MIN = 1e-8


@dataclass(frozen=True)
class BoundReport:
    x: float
    n: int
    paper_bound: float
    exact_tail: Optional[float] = None
    exact_chernoff: Optional[float] = None


def threshold(n: int, x: float) -> int:
    """Smallest integer ``k`` with ``k >= n x``; guards ``n * x`` rounding just above an integer."""
    return math.ceil(round(n * x, 9))


def _check_x(x):
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")


def log_paper_bound(params: ModelParams, n: int, x: float, cfg: RateEvalConfig = RateEvalConfig()) -> float:
    _check_x(x)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rate = rate_alpha(params.alpha, x, cfg).rate
    return math.log(p_prefactor(params, n)) + log_c_factor(params, n) - math.log(params.alpha) - n * rate


def paper_bound(params: ModelParams, n: int, x: float, cfg: RateEvalConfig = RateEvalConfig()) -> float:
    """``P_n c_n / alpha * exp(-n I_alpha(x))``; may exceed 1."""
    return math.exp(log_paper_bound(params, n, x, cfg))


def exact_tail(params: ModelParams, n: int, x: float) -> float:
    """``P(K_n >= ceil(n x))`` from the exact law."""
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    if n > MAX_EXACT_N:
        raise DomainError(f"exact tail needs n <= {MAX_EXACT_N}")
    return kn_distribution(params, n).tail(threshold(n, x))


def _golden_min(f, lo, hi, tol):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def exact_chernoff(params: ModelParams, n: int, x: float, cfg: SeriesConfig = DEFAULT_SERIES,
                   tol: float = 1e-10) -> float:
    """``inf_{t > 0} exp(-n x t) m_n(t)`` by golden-section search over ``log t``.

    The search runs over ``t`` in ``[1e-8, 9]``; past ``t = 9`` the series
    needs more than ``e**9`` terms, and by then the exponent is flat to
    well under a percent for any ``x < 1 - 1e-4``.
    """
    _check_x(x)

    def objective(u):
        t = math.exp(u)
        return mgf_series_general(params, n, t, cfg).log_value - n * x * t

    try:
        _, best = _golden_min(objective, math.log(_T_MIN), math.log(_T_MAX), tol)
    except NumericError as exc:
        raise NumericError(f"Chernoff optimisation failed: {exc}") from exc
    # t -> 0 gives the trivial value 1
    return math.exp(min(best, 0.0))


def bound_report(params: ModelParams, n: int, x: float, exact: bool = True, chernoff: bool = True) -> BoundReport:
    tail = exact_tail(params, n, x) if exact and n <= MAX_EXACT_N else None
    ch = exact_chernoff(params, n, x) if chernoff else None
    return BoundReport(x, n, paper_bound(params, n, x), tail, ch)
