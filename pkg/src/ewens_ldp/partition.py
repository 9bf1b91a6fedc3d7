"""The Ewens-Pitman partition model: EPPF, enumeration, exact law of K_n, samplers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._backend import kernels
from .core import ModelParams, log_rising
from .errors import DomainError

__all__ = [
    "PartitionCounts",
    "KnDistribution",
    "SampleResult",
    "eppf_log_prob",
    "enumerate_partitions",
    "kn_distribution",
    "crp_sample",
    "crp_sample_batch",
    "ewens_bernoulli_sample",
    "ewens_bernoulli_sample_batch",
    "bernoulli_sum_distribution",
    "exact_mgf_enumeration",
    "MAX_ENUM_N",
    "MAX_MGF_ENUM_N",
    "MAX_EXACT_N",
]

MAX_ENUM_N = 25
MAX_MGF_ENUM_N = 12
MAX_EXACT_N = 10**5


@dataclass(frozen=True)
class PartitionCounts:
    """Multiplicity vector: ``k[i-1]`` blocks of size ``i``."""

    n: int
    k: tuple

    def __post_init__(self):
        k = tuple(int(v) for v in self.k)
        if self.n < 1 or len(k) != self.n:
            raise DomainError(f"need n >= 1 and len(k) == n, got n={self.n}, len={len(k)}")
        if any(v < 0 for v in k):
            raise DomainError("multiplicities must be nonnegative")
        if sum((i + 1) * v for i, v in enumerate(k)) != self.n:
            raise DomainError(f"sum of i*k_i must equal n={self.n}")
        object.__setattr__(self, "k", k)

    @property
    def num_blocks(self) -> int:
        return sum(self.k)

    @classmethod
    def from_block_sizes(cls, sizes: Sequence[int]) -> "PartitionCounts":
        n = int(sum(sizes))
        k = [0] * n
        for s in sizes:
            k[s - 1] += 1
        return cls(n, tuple(k))


@dataclass(frozen=True)
class KnDistribution:
    """Exact law of K_n; ``probs[k-1] = P(K_n = k)``."""

    n: int
    probs: np.ndarray

    def pmf(self, k: int) -> float:
        return float(self.probs[k - 1]) if 1 <= k <= self.n else 0.0

    def mean(self) -> float:
        return float(np.dot(np.arange(1, self.n + 1), self.probs))

    def tail(self, k0: int) -> float:
        """``P(K_n >= k0)``."""
        if k0 <= 1:
            return 1.0
        if k0 > self.n:
            return 0.0
        return float(math.fsum(self.probs[k0 - 1 :]))

    def log_mgf(self, t: float) -> float:
        ks = np.arange(1, self.n + 1, dtype=np.float64)
        with np.errstate(divide="ignore"):
            logp = np.log(self.probs)
        return float(_logsumexp(logp + t * ks))


@dataclass(frozen=True)
class SampleResult:
    k_n: int
    seed: int
    counts: Optional[PartitionCounts] = None


def _logsumexp(v: np.ndarray) -> float:
    m = np.max(v)
    if not np.isfinite(m):
        return float(m)
    return float(m + np.log(np.sum(np.exp(v - m))))


def eppf_log_prob(params: ModelParams, counts: PartitionCounts) -> float:
    """Log probability of a block-size multiplicity vector."""
    n, kk = counts.n, counts.k
    K = counts.num_blocks
    a, theta = params.alpha, params.theta
    out = math.lgamma(n + 1)
    if a == 0.0:
        out += K * math.log(theta) - log_rising(theta, n)
        for i, ki in enumerate(kk, start=1):
            if ki:
                out -= ki * math.log(i) + math.lgamma(ki + 1)
        return out
    # (theta/a)^{(K)} a^K / (theta)^{(n)} with the 0/0 at theta = 0 cancelled
    out += (K - 1) * math.log(a)
    out += log_rising(params.theta_alpha + 1.0, K - 1) - log_rising(theta + 1.0, n - 1)
    for i, ki in enumerate(kk, start=1):
        if ki:
            out += ki * (log_rising(1.0 - a, i - 1) - math.lgamma(i + 1)) - math.lgamma(ki + 1)
    return out


def _partitions_desc(n, max_part):
    if n == 0:
        yield []
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield [first] + rest


def enumerate_partitions(n: int) -> list:
    """All integer partitions of ``n`` as multiplicity vectors.

    Ordered reverse-lexicographically by block sizes, starting from ``(n,)``.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise DomainError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    return [PartitionCounts.from_block_sizes(p) for p in _partitions_desc(n, n)]


def kn_distribution(params: ModelParams, n: int) -> KnDistribution:
    """Exact law of K_n by forward recursion on the new-block probability."""
    if not 1 <= n <= MAX_EXACT_N:
        raise DomainError(f"kn_distribution supports 1 <= n <= {MAX_EXACT_N}, got {n}")
    probs = kernels.kn_recursion(params.alpha, params.theta, int(n))
    return KnDistribution(int(n), probs)


def bernoulli_sum_distribution(probs: Sequence[float]) -> np.ndarray:
    """Law of a sum of independent Bernoullis by convolution.

    ``out[j] = P(sum = j)`` for ``j = 0..len(probs)``.
    """
    out = np.zeros(len(probs) + 1)
    out[0] = 1.0
    for i, p in enumerate(probs):
        shifted = out[: i + 1] * p
        out[: i + 1] *= 1.0 - p
        out[1 : i + 2] += shifted
    return out


def _check_seed(seed):
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def crp_sample_batch(params: ModelParams, n: int, reps: int, seed: int, start: int = 0) -> np.ndarray:
    """K_n for replicates ``start .. start+reps-1`` of the sequential construction."""
    if n < 1 or reps < 0:
        raise DomainError("need n >= 1 and reps >= 0")
    return kernels.crp_chain_batch(params.alpha, params.theta, int(n), _check_seed(seed), int(start), int(reps))


def crp_sample(params: ModelParams, n: int, seed: int) -> SampleResult:
    k = crp_sample_batch(params, n, 1, seed)
    return SampleResult(int(k[0]), _check_seed(seed))


def ewens_bernoulli_sample_batch(theta: float, n: int, reps: int, seed: int, start: int = 0) -> np.ndarray:
    if not theta > 0.0:
        raise DomainError(f"theta must be positive, got {theta}")
    if n < 1 or reps < 0:
        raise DomainError("need n >= 1 and reps >= 0")
    return kernels.bernoulli_chain_batch(float(theta), int(n), _check_seed(seed), int(start), int(reps))


def ewens_bernoulli_sample(theta: float, n: int, seed: int) -> SampleResult:
    """K_n at ``alpha = 0`` as a sum of independent Bernoulli(theta/(theta+i-1))."""
    k = ewens_bernoulli_sample_batch(theta, n, 1, seed)
    return SampleResult(int(k[0]), _check_seed(seed))


def exact_mgf_enumeration(params: ModelParams, n: int, t: float) -> float:
    """``E exp(t K_n)`` by summing over every partition of ``n``."""
    if not 1 <= n <= MAX_MGF_ENUM_N:
        raise DomainError(f"enumeration MGF supports 1 <= n <= {MAX_MGF_ENUM_N}, got {n}")
    return math.fsum(
        math.exp(t * c.num_blocks + eppf_log_prob(params, c)) for c in enumerate_partitions(n)
    )
