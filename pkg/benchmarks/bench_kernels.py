"""Benchmark the compiled kernels against the NumPy fallback.

Runs both implementations of the two hot kernels (bootstrap Hausdorff and
threshold single-linkage) on growing problem sizes and prints a table of
timings plus speedups. Results also double as an equivalence check: both
backends must return identical outputs.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from attrtopo._kernels import _pure

try:
    from attrtopo._kernels import _fast
except ImportError:  # extension not built; fall back so the script still runs
    _fast = None


def _time(fn, *args, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_hausdorff(rng: np.random.Generator, repeats: int) -> list[tuple]:
    rows = []
    for n, d in ((500, 8), (2000, 8), (5000, 24), (10000, 24)):
        points = rng.normal(size=(n, d))
        subset = rng.integers(0, n, size=n)
        pure_t, pure_v = _time(_pure.hausdorff_to_subset, points, subset, repeats=repeats)
        if _fast is None:
            rows.append((f"hausdorff n={n} d={d}", pure_t, None, None))
            continue
        fast_t, fast_v = _time(_fast.hausdorff_to_subset, points, subset, repeats=repeats)
        # the fallback accumulates squared distances through a gemm identity,
        # so the two results may differ in the last ulp
        assert abs(pure_v - fast_v) <= 1e-9 * max(1.0, abs(pure_v)), (pure_v, fast_v)
        rows.append((f"hausdorff n={n} d={d}", pure_t, fast_t, pure_t / fast_t))
    return rows


def bench_linkage(rng: np.random.Generator, repeats: int) -> list[tuple]:
    rows = []
    for m, d, delta in ((200, 4, 0.5), (1000, 8, 0.8), (3000, 24, 2.0)):
        points = rng.normal(size=(m, d))
        pure_t, pure_v = _time(_pure.single_linkage_labels, points, delta, repeats=repeats)
        if _fast is None:
            rows.append((f"linkage m={m} d={d}", pure_t, None, None))
            continue
        fast_t, fast_v = _time(_fast.single_linkage_labels, points, delta, repeats=repeats)
        assert np.array_equal(pure_v, fast_v), "backend label mismatch"
        rows.append((f"linkage m={m} d={d}", pure_t, fast_t, pure_t / fast_t))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3, help="best-of-N timing")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = bench_hausdorff(rng, args.repeats) + bench_linkage(rng, args.repeats)

    print(f"{'kernel':<24} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, pure_t, fast_t, speedup in rows:
        if fast_t is None:
            print(f"{name:<24} {pure_t:>10.4f} {'(not built)':>13} {'':>8}")
        else:
            print(f"{name:<24} {pure_t:>10.4f} {fast_t:>13.4f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
