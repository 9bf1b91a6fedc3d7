"""Summation of slowly varying series in log-magnitude form."""
from __future__ import annotations

import math

import numpy as np

from .errors import NumericError

_FIRST_CHUNK = 256
_MAX_CHUNK = 1 << 16


def log_sum_positive(log_terms, rel_tol: float, max_terms: int):
    """Return ``(log S, terms_used)`` for ``S = sum_l exp(log_terms(l))``.

    ``log_terms`` maps an int array of indices to log term values. The
    sequence is assumed log-concave in ``l``: terms may rise before they
    fall, and once falling their ratio keeps shrinking, so the geometric
    tail estimate ``term * rho / (1 - rho)`` bounds what is left.
    """
    total = -math.inf
    start = 0
    size = _FIRST_CHUNK
    prev_last = None
    while True:
        if start >= max_terms:
            raise NumericError(f"series did not converge within {max_terms} terms", terms_used=start)
        stop = min(start + size, max_terms)
        lt = np.asarray(log_terms(np.arange(start, stop)), dtype=np.float64)
        m = lt.max()
        if np.isfinite(m):
            total = np.logaddexp(total, m + math.log(np.exp(lt - m).sum()))
        last = lt[-1]
        before = lt[-2] if lt.size > 1 else prev_last
        start = stop
        prev_last = last
        size = min(2 * size, _MAX_CHUNK)
        if last == -math.inf:
            return float(total), start
        if before is None:
            continue
        rho = last - before
        if rho < 0.0:
            tail = last + rho - math.log(-math.expm1(rho))
            if tail < math.log(rel_tol) + total:
                return float(total), start


def sum_alternating(log_mag, sign, rel_tol: float, max_terms: int):
    """Sum ``sign(l) * exp(log_mag(l))`` with exact float accumulation.

    Stops once the magnitudes are falling and the current one is below
    ``rel_tol`` times the partial sum. Raises when cancellation has eaten
    more than ten digits.
    """
    parts = []
    biggest = -math.inf
    start = 0
    size = _FIRST_CHUNK
    while True:
        if start >= max_terms:
            raise NumericError(f"series did not converge within {max_terms} terms", terms_used=start)
        stop = min(start + size, max_terms)
        idx = np.arange(start, stop)
        lm = np.asarray(log_mag(idx), dtype=np.float64)
        biggest = max(biggest, float(lm.max()))
        parts.extend((sign(idx) * np.exp(lm)).tolist())
        s = math.fsum(parts)
        start = stop
        size = min(2 * size, _MAX_CHUNK)
        falling = lm.size < 2 or lm[-1] < lm[-2]
        if falling and (lm[-1] == -math.inf or math.exp(lm[-1]) < rel_tol * abs(s)):
            if s == 0.0 or biggest - math.log(abs(s)) > math.log(1e10):
                raise NumericError("alternating series lost too many digits to cancellation", terms_used=start)
            return s, start
