#!/usr/bin/env python3
"""Time the compiled kernels against their numpy twins.

Runs both implementations on production-sized inputs, reports wall time and
speedup, and checks that the two paths agree to rounding. The compiled path
needs numba; without it only the numpy timings print.

Usage: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from irsopt._kernels import (
    _cross_term_sum_numpy,
    _single_power_grid_numpy,
    build_numba_kernels,
)


def best_of(fn, *args, repeats=5):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        timings.append(time.perf_counter() - start)
    return min(timings), result


def main():
    rng = np.random.default_rng(42)
    try:
        cross_numba, grid_numba = build_numba_kernels()
    except ImportError:
        cross_numba = grid_numba = None
        print("numba unavailable: timing the numpy path only\n")

    rows = []

    # Ordered-pair cross-term sum at a 20x20-panel scale and larger.
    for n in (400, 1600):
        inv_d = rng.uniform(0.005, 0.05, n)
        psi = rng.uniform(-30.0, 30.0, n)
        if cross_numba is not None:
            cross_numba(inv_d[:4], psi[:4])  # compile outside the timing
            t_fast, fast = best_of(cross_numba, inv_d, psi)
        else:
            t_fast = fast = None
        t_ref, ref = best_of(_cross_term_sum_numpy, inv_d, psi)
        rows.append((f"cross_term_sum n={n}", t_fast, t_ref, fast, ref))

    # Dense single-element power surface at oracle scale.
    paths = rng.uniform(12.8, 14.8, 2001)
    thetas = rng.uniform(0.0, 6.28, 2001)
    args = (paths, thetas, 10.0, 19.167, 3.357, 1.36e-3)
    if grid_numba is not None:
        grid_numba(paths[:4], thetas[:4], *args[2:])
        t_fast, fast = best_of(grid_numba, *args)
        fast = float(fast.sum())
    else:
        t_fast = fast = None
    t_ref, ref = best_of(_single_power_grid_numpy, *args)
    ref = float(ref.sum())
    rows.append(("single_power_grid 2001x2001", t_fast, t_ref, fast, ref))

    print(f"{'kernel':<30} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>9} {'agree':>7}")
    for name, t_fast, t_ref, fast, ref in rows:
        if t_fast is None:
            print(f"{name:<30} {'-':>12} {t_ref * 1e3:>12.2f} {'-':>9} {'-':>7}")
            continue
        agrees = abs(fast - ref) <= 1e-9 * max(abs(ref), 1e-300)
        print(
            f"{name:<30} {t_fast * 1e3:>12.2f} {t_ref * 1e3:>12.2f} "
            f"{t_ref / t_fast:>8.1f}x {str(agrees):>7}"
        )


if __name__ == "__main__":
    main()
