"""Pure numpy versions of the hot loops; same results as ``_kernels``."""
from __future__ import annotations

import numpy as np

from .rng import stream_keys, uniform_array


def kn_recursion(alpha: float, theta: float, n: int) -> np.ndarray:
    probs = np.zeros(n, dtype=np.float64)
    probs[0] = 1.0
    ks = alpha * np.arange(1, n + 1, dtype=np.float64)
    for m in range(1, n):
        # after m elements, K_m in [1, m]
        q = (theta + ks[:m]) / (theta + m)
        moved = probs[:m] * q
        probs[:m] -= moved
        probs[1 : m + 1] += moved
    return probs


def crp_chain_batch(alpha: float, theta: float, n: int, seed: int, start: int, reps: int) -> np.ndarray:
    keys = stream_keys(seed, start, reps)
    k = np.ones(reps, dtype=np.int64)
    for m in range(1, n):
        u = uniform_array(keys, m)
        q = (theta + alpha * k.astype(np.float64)) / (theta + m)
        k += u < q
    return k


def bernoulli_chain_batch(theta: float, n: int, seed: int, start: int, reps: int) -> np.ndarray:
    keys = stream_keys(seed, start, reps)
    k = np.ones(reps, dtype=np.int64)
    for i in range(1, n):
        u = uniform_array(keys, i)
        k += u < theta / (theta + i)
    return k
