#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the three hot kernels and a full clustering run on synthetic data at
a few sizes, then prints a table with the speedup. The first compiled call
is excluded by a warmup pass (JIT compilation would otherwise dominate).

Usage: python benchmarks/bench_backends.py [--points N ...]
"""

import argparse
import time

import numpy as np

from labfcm import ClusterConfig, ColorSet, kernels, run_fcm


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_size(n, c=4, k=14, seed=0):
    rng = np.random.default_rng(seed)
    points = rng.uniform(-60, 95, size=(n, 3))
    refs = rng.uniform(-60, 95, size=(k, 3))
    centers = rng.uniform(-60, 95, size=(c, 3))
    u, _ = kernels.fcm_memberships(points, centers, 2.0)
    config = ClusterConfig(clusters=c, init="random", seed=seed, max_iter=20)
    colorset = ColorSet(points)

    cases = {
        "ref_memberships": lambda: kernels.ref_memberships(points, refs, 2.0),
        "fcm_memberships": lambda: kernels.fcm_memberships(points, centers, 2.0),
        "centroid_sums": lambda: kernels.fcm_centroid_sums(points, u, 2.0),
        "run_fcm(20 iters)": lambda: run_fcm(colorset, config),
    }

    results = {}
    for backend in ("numpy", "numba") if kernels.HAS_NUMBA else ("numpy",):
        kernels.use_backend(backend)
        for name, fn in cases.items():
            fn()  # warmup (JIT compile / cache touch)
            results[(name, backend)] = timeit(fn)

    print(f"\nn={n} points, c={c} clusters, k={k} references")
    print(f"{'kernel':<20} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name in cases:
        t_np = results[(name, "numpy")]
        if kernels.HAS_NUMBA:
            t_nb = results[(name, "numba")]
            print(
                f"{name:<20} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
                f"{t_np / t_nb:>8.1f}x"
            )
        else:
            print(f"{name:<20} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>9}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--points",
        type=int,
        nargs="+",
        default=[10_000, 100_000, 500_000],
        help="point counts to benchmark",
    )
    args = parser.parse_args()

    print(f"default backend: {kernels.active_backend()}")
    if not kernels.HAS_NUMBA:
        print("numba not importable: timing the numpy fallback only")
    original = kernels.active_backend()
    try:
        for n in args.points:
            bench_size(n)
    finally:
        kernels.use_backend(original)


if __name__ == "__main__":
    main()
