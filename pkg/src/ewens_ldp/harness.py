"""Monte Carlo tail estimates and bound-verification reports.

Replicates are split into fixed-size chunks, each drawing from its own
``(seed, replicate)`` substreams, so counts do not depend on how many
workers run the chunks.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .concentration import exact_chernoff, paper_bound, threshold
from .core import ModelParams
from .errors import DomainError
from .partition import MAX_EXACT_N, crp_sample_batch, kn_distribution

__all__ = [
    "Z95",
    "McEstimate",
    "VerifyRow",
    "VerifyReport",
    "wilson_interval",
    "default_workers",
    "mc_tail",
    "verify_bound",
]

Z95 = 1.959963984540054
CHUNK = 1 << 15


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    reps: int
    ci_upper_95: float
    seed: int
    ci_lower_95: float = 0.0
    hits: int = 0


@dataclass(frozen=True)
class VerifyRow:
    x: float
    mc: McEstimate
    paper_bound: float
    exact_tail: Optional[float] = None
    exact_chernoff: Optional[float] = None

    @property
    def violation(self) -> bool:
        """The whole 95% interval sits above the bound."""
        return self.mc.ci_lower_95 > self.paper_bound

    @property
    def confirmed(self) -> bool:
        """The Monte Carlo resolution is fine enough to confirm the bound."""
        return self.mc.ci_upper_95 <= self.paper_bound

    @property
    def covers_exact(self) -> Optional[bool]:
        if self.exact_tail is None:
            return None
        return self.mc.ci_lower_95 <= self.exact_tail <= self.mc.ci_upper_95


@dataclass
class VerifyReport:
    params: ModelParams
    n: int
    reps: int
    seed: int
    rows: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def violations(self) -> int:
        return sum(r.violation for r in self.rows)


def wilson_interval(hits: int, reps: int, z: float = Z95):
    """Wilson score interval ``(lower, upper)`` for a binomial proportion."""
    if reps < 1 or not 0 <= hits <= reps:
        raise DomainError(f"need 0 <= hits <= reps, reps >= 1; got {hits}/{reps}")
    p = hits / reps
    z2 = z * z
    denom = 1.0 + z2 / reps
    centre = p + z2 / (2.0 * reps)
    half = z * math.sqrt(p * (1.0 - p) / reps + z2 / (4.0 * reps * reps))
    lower = 0.0 if hits == 0 else (centre - half) / denom
    upper = 1.0 if hits == reps else (centre + half) / denom
    return max(lower, 0.0), min(upper, 1.0)


def default_workers() -> int:
    env = os.environ.get("EWENS_LDP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"EWENS_LDP_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _count_hits(params, n, k0, seed, start, size):
    return int((crp_sample_batch(params, n, size, seed, start) >= k0).sum())


def mc_tail(params: ModelParams, n: int, x: float, reps: int, seed: int, workers: Optional[int] = None) -> McEstimate:
    """Fraction of ``reps`` simulated ``K_n`` with ``K_n >= ceil(n x)``, plus its Wilson interval."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}")
    k0 = threshold(n, x)
    chunks = [(s, min(CHUNK, reps - s)) for s in range(0, reps, CHUNK)]
    workers = workers or default_workers()
    if workers == 1 or len(chunks) == 1:
        hits = sum(_count_hits(params, n, k0, seed, s, c) for s, c in chunks)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda sc: _count_hits(params, n, k0, seed, *sc), chunks))
    lo, hi = wilson_interval(hits, reps)
    return McEstimate(hits / reps, reps, hi, seed, lo, hits)


def verify_bound(params: ModelParams, n: int, xs: Sequence[float], reps: int, seed: int,
                 workers: Optional[int] = None, chernoff: bool = True) -> VerifyReport:
    """Compare simulation, exact tail, concentration bound and Chernoff bound at each ``x``."""
    t0 = time.perf_counter()
    report = VerifyReport(params, n, reps, seed)
    dist = kn_distribution(params, n) if n <= MAX_EXACT_N else None
    for x in xs:
        mc = mc_tail(params, n, x, reps, seed, workers)
        tail = dist.tail(threshold(n, x)) if dist is not None else None
        ch = exact_chernoff(params, n, x) if chernoff else None
        report.rows.append(VerifyRow(x, mc, paper_bound(params, n, x), tail, ch))
    report.wall_time = time.perf_counter() - t0
    return report
