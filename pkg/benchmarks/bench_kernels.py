"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from ewens_ldp import _backend, _kernels_py

CASES = [
    ("kn_recursion n=2000", lambda k: k.kn_recursion(0.5, 1.0, 2000)),
    ("kn_recursion n=20000", lambda k: k.kn_recursion(0.5, 1.0, 20000)),
    ("crp_chain_batch n=200 reps=20000", lambda k: k.crp_chain_batch(0.5, 1.0, 200, 7, 0, 20000)),
    ("crp_chain_batch n=2000 reps=2000", lambda k: k.crp_chain_batch(0.5, 1.0, 2000, 7, 0, 2000)),
    ("bernoulli_chain_batch n=200 reps=20000", lambda k: k.bernoulli_chain_batch(1.0, 200, 7, 0, 20000)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _backend.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'case':42s} {'compiled ms':>12s} {'numpy ms':>10s} {'speedup':>8s} {'equal':>6s}")
    for name, fn in CASES:
        fast = min(timeit.repeat(lambda: fn(_backend.compiled), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        a, b = fn(_backend.compiled), fn(_kernels_py)
        same = np.array_equal(a, b) if a.dtype.kind == "i" else np.allclose(a, b, rtol=1e-13, atol=0)
        print(f"{name:42s} {fast * 1e3:12.2f} {slow * 1e3:10.2f} {slow / fast:8.1f} {str(same):>6s}")


if __name__ == "__main__":
    main()
