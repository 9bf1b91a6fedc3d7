# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Results match ``_kernels_py`` bit for bit."""
import numpy as np

from libc.stdint cimport uint64_t, int64_t

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t STREAM_SALT = 0xD1B54A32D192ED03ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL
cdef double INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


cdef inline double uniform(uint64_t key, uint64_t step) noexcept nogil:
    return <double>(mix64(key + (step + 1) * GOLDEN) >> 11) * INV53


# replicates advanced together so their independent dependency chains overlap
DEF BLOCK = 16


cdef void _transfer(double* p, double* moved, const double* num, Py_ssize_t top,
                    double denom) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(top):
        moved[k] = p[k] * (num[k] / denom)
    for k in range(1, top):
        p[k] = (p[k] - moved[k]) + moved[k - 1]
    p[0] = p[0] - moved[0]


def kn_recursion(double alpha, double theta, Py_ssize_t n):
    out = np.zeros(n, dtype=np.float64)
    moved_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] p = out
    cdef double[::1] moved = moved_arr
    # theta + alpha * K for K = 1..n, rounded exactly as in the numpy version
    cdef double[::1] num = theta + alpha * np.arange(1, n + 1, dtype=np.float64)
    cdef Py_ssize_t m, top, hi = 0
    p[0] = 1.0
    with nogil:
        for m in range(1, n):
            # entries above ``hi`` are exactly zero and stay zero: (0 - 0) + 0
            top = min(m, hi + 1)
            # new values are read from ``moved`` only, so the ascending update
            # matches the numpy version's two-slice update exactly
            _transfer(&p[0], &moved[0], &num[0], top, theta + <double>m)
            if top == m:
                p[m] = moved[m - 1]
            elif top < m:
                p[top] = (p[top] - 0.0) + moved[top - 1]
            hi = top if p[top] != 0.0 else top - 1
            while hi > 0 and p[hi] == 0.0:
                hi -= 1
    return out


def crp_chain_batch(double alpha, double theta, Py_ssize_t n, uint64_t seed,
                    uint64_t start, Py_ssize_t reps):
    out = np.empty(reps, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef Py_ssize_t i0, j, width, m
    cdef uint64_t keys[BLOCK]
    cdef int64_t ks[BLOCK]
    cdef double denom
    with nogil:
        for i0 in range(0, reps, BLOCK):
            width = min(BLOCK, reps - i0)
            for j in range(width):
                keys[j] = mix64(seed ^ mix64(start + <uint64_t>(i0 + j) + STREAM_SALT))
                ks[j] = 1
            for m in range(1, n):
                denom = theta + <double>m
                for j in range(width):
                    if uniform(keys[j], <uint64_t>m) < (theta + alpha * <double>ks[j]) / denom:
                        ks[j] += 1
            for j in range(width):
                res[i0 + j] = ks[j]
    return out


def bernoulli_chain_batch(double theta, Py_ssize_t n, uint64_t seed,
                          uint64_t start, Py_ssize_t reps):
    out = np.empty(reps, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef Py_ssize_t i, m
    cdef uint64_t key
    cdef int64_t k
    cdef double[::1] q = np.empty(max(n, 1), dtype=np.float64)
    with nogil:
        for m in range(1, n):
            q[m] = theta / (theta + <double>m)
        for i in range(reps):
            key = mix64(seed ^ mix64(start + <uint64_t>i + STREAM_SALT))
            k = 1
            for m in range(1, n):
                if uniform(key, <uint64_t>m) < q[m]:
                    k += 1
            res[i] = k
    return out
