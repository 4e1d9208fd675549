"""Time the Smith normal form kernel on both backends.

The same elimination source runs two ways: compiled over int64 (numba,
with an overflow guard that falls back automatically) and interpreted
over Python-int object arrays (always exact).  Run:

    python3 benchmarks/bench_kernels.py [--sizes 8,16,24] [--repeats 3]

The CYCHOM_KERNEL environment variable (numba|numpy) picks the default
backend inside the library; here both are timed explicitly.
"""

import argparse
import time

import numpy as np

from cychom._kernels import HAVE_NUMBA
from cychom.snf import smith_normal_form
from cychom.complexes import cyclic_operator, norm_operator


def random_matrices(rng, size, count=10):
    return [
        rng.integers(-9, 10, size=(size, size)).astype(np.int64)
        for _ in range(count)
    ]


def operator_matrices(max_weight=9, d=2):
    mats = []
    for w in range(2, max_weight + 1):
        one_minus_t = np.eye(d ** w, dtype=np.int64) - cyclic_operator(w, d)
        mats.append(one_minus_t)
        mats.append(norm_operator(w, d))
    return mats


def bench(matrices, backend, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for m in matrices:
            smith_normal_form(m, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="8,16,24,32")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"numba available: {HAVE_NUMBA}")
    if HAVE_NUMBA:
        # One warm-up call so JIT compilation is not billed to the timing.
        smith_normal_form(np.array([[2, 4], [6, 8]], dtype=np.int64),
                          backend="numba")

    print(f"{'input':>24} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for size in (int(s) for s in args.sizes.split(",")):
        mats = random_matrices(rng, size)
        t_nb = bench(mats, "numba", args.repeats) if HAVE_NUMBA else None
        t_np = bench(mats, "numpy", args.repeats)
        label = f"10 random {size}x{size}"
        if t_nb is None:
            print(f"{label:>24} {'n/a':>12} {t_np:>12.4f} {'n/a':>9}")
        else:
            print(f"{label:>24} {t_nb:>12.4f} {t_np:>12.4f}"
                  f" {t_np / t_nb:>8.1f}x")

    mats = operator_matrices()
    t_nb = bench(mats, "numba", args.repeats) if HAVE_NUMBA else None
    t_np = bench(mats, "numpy", args.repeats)
    label = "rotation ops w<=9 d=2"
    if t_nb is None:
        print(f"{label:>24} {'n/a':>12} {t_np:>12.4f} {'n/a':>9}")
    else:
        print(f"{label:>24} {t_nb:>12.4f} {t_np:>12.4f}"
              f" {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
