"""Timing comparison of the jitted kernels against the numpy fallbacks.

Run as a script; prints one line per kernel and backend. The jitted path
is warmed once so compile time is not counted.
"""

import time

import numpy as np

from eml import kernels


def _clock(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_buyer_choices(rng):
    u = rng.random(1_000_000)
    args = (u, 0.15, 0.2, 0.6, 0.7)
    rows = [("buyer_choices", "numpy",
             _clock(kernels.buyer_choices_numpy, *args))]
    if kernels.HAVE_NUMBA:
        kernels._buyer_choices_jit(*args)
        rows.append(("buyer_choices", "numba",
                     _clock(kernels._buyer_choices_jit, *args)))
    return rows


def bench_revenue_grid():
    args = (0.3, 0.7, 0.2, 50.0, 5e-3, 1.0, kernels.ANY_REGION)
    rows = [("best_revenue_grid", "numpy",
             _clock(kernels.best_revenue_grid_numpy, *args, repeat=3))]
    if kernels.HAVE_NUMBA:
        kernels._best_revenue_grid_jit(*args)
        rows.append(("best_revenue_grid", "numba",
                     _clock(kernels._best_revenue_grid_jit, *args, repeat=3)))
    return rows


def bench_ks(rng):
    a = np.sort(rng.random(200_000))
    b = np.sort(rng.random(200_000) + 0.01)
    rows = [("ks_statistic", "numpy", _clock(kernels.ks_statistic_numpy, a, b))]
    if kernels.HAVE_NUMBA:
        kernels._ks_statistic_jit(a, b)
        rows.append(("ks_statistic", "numba",
                     _clock(kernels._ks_statistic_jit, a, b)))
    return rows


def main():
    rng = np.random.default_rng(0)
    print(f"active backend: {kernels.backend()}")
    rows = bench_buyer_choices(rng) + bench_revenue_grid() + bench_ks(rng)
    print(f"{'kernel':<20} {'backend':<8} {'best of runs':>14}")
    for name, backend, secs in rows:
        print(f"{name:<20} {backend:<8} {secs * 1e3:>11.2f} ms")
    by_kernel = {}
    for name, backend, secs in rows:
        by_kernel.setdefault(name, {})[backend] = secs
    for name, d in by_kernel.items():
        if "numba" in d and "numpy" in d:
            print(f"{name}: numba speedup x{d['numpy'] / d['numba']:.1f}")


if __name__ == "__main__":
    main()
