"""Counter-based random numbers keyed by ``(seed, replicate, step)``.

Every uniform is a pure function of its key, so a replicate draws the same
numbers whichever worker runs it, and in whatever order. The mixer is the
SplitMix64 finalizer. ``uniform`` and ``uniform_array`` return bit-identical
values; the compiled kernels reproduce the same arithmetic.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
STREAM_SALT = 0xD1B54A32D192ED03
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 1.0 / (1 << 53)

DEFAULT_SEED = 0x45574E53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, index: int) -> int:
    """Key of replicate ``index`` under master ``seed``."""
    return mix64((seed & MASK64) ^ mix64((index + STREAM_SALT) & MASK64))


def uniform(key: int, step: int) -> float:
    """Uniform on [0, 1) for draw number ``step`` of stream ``key``."""
    return (mix64(key + (step + 1) * GOLDEN) >> 11) * _INV53


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def stream_keys(seed: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64_array(np.uint64(seed & MASK64) ^ _mix64_array(idx + np.uint64(STREAM_SALT)))


def uniform_array(keys: np.ndarray, step: int) -> np.ndarray:
    offset = np.uint64(((step + 1) * GOLDEN) & MASK64)
    with np.errstate(over="ignore"):
        z = _mix64_array(keys + offset)
    return (z >> np.uint64(11)).astype(np.float64) * _INV53
