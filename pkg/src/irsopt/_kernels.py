"""Hot numeric kernels: compiled fast path with a pure-numpy fallback.

Two inner loops dominate runtime at production sizes: the ordered-pair
cross-term sum of the expanded multi-element power (quadratic in the element
count) and the dense single-element power surface used by the brute-force
searches. Both ship in two interchangeable implementations:

* loop kernels compiled with ``numba.njit`` (the default when numba imports),
* vectorized numpy twins.

Set ``IRSOPT_NO_NUMBA=1`` in the environment to force the numpy path.
Both paths are single-threaded and deterministic; they can differ by a few
ulp because their summation orders differ. ``benchmarks/bench_kernels.py``
times the two side by side and checks their agreement.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["USING_NUMBA", "cross_term_sum", "single_power_grid", "build_numba_kernels"]


# -- loop sources (compiled by numba; kept as plain functions for testing) --


def _cross_term_sum_loops(inv_d, psi):
    # Each unordered pair appears twice in the ordered sum with equal value
    # (the cosine is even), so sum the upper triangle and double.
    n = inv_d.shape[0]
    total = 0.0
    for p in range(n):
        for q in range(p + 1, n):
            total += inv_d[p] * inv_d[q] * np.cos(psi[p] - psi[q])
    return 2.0 * total


def _single_power_grid_loops(paths, thetas, dist, wavenumber, gamma, amp):
    out = np.empty((paths.shape[0], thetas.shape[0]))
    inv_d2 = 1.0 / (dist * dist)
    for i in range(paths.shape[0]):
        d = paths[i]
        base = amp * (inv_d2 + gamma * gamma / (d * d))
        scale = amp * 2.0 * gamma / (d * dist)
        phase = wavenumber * d - wavenumber * dist
        for j in range(thetas.shape[0]):
            out[i, j] = base + scale * np.cos(phase - thetas[j])
    return out


# -- numpy twins --


def _cross_term_sum_numpy(inv_d, psi):
    weight = inv_d[:, None] * inv_d[None, :]
    terms = np.cos(psi[:, None] - psi[None, :]) * weight
    np.fill_diagonal(terms, 0.0)
    return float(terms.sum())


def _single_power_grid_numpy(paths, thetas, dist, wavenumber, gamma, amp):
    d = paths[:, None]
    phase = wavenumber * d - thetas[None, :] - wavenumber * dist
    return amp * (
        1.0 / (dist * dist)
        + gamma * gamma / (d * d)
        + (2.0 * gamma / (d * dist)) * np.cos(phase)
    )


def build_numba_kernels():
    """Compile and return the njit kernel pair (raises ImportError without numba)."""
    from numba import njit

    return (
        njit(cache=True)(_cross_term_sum_loops),
        njit(cache=True)(_single_power_grid_loops),
    )


USING_NUMBA = False
_cross_impl = _cross_term_sum_numpy
_grid_impl = _single_power_grid_numpy

if os.environ.get("IRSOPT_NO_NUMBA", "") in ("", "0"):
    try:
        _cross_impl, _grid_impl = build_numba_kernels()
        USING_NUMBA = True
    except ImportError:  # numba not installed: numpy twins stay active
        pass


def cross_term_sum(inv_d: np.ndarray, psi: np.ndarray) -> float:
    """Sum of cos(psi_p - psi_q) * inv_d_p * inv_d_q over ordered pairs p != q.

    Each unordered pair contributes twice; the cosine's evenness makes the
    two contributions equal.
    """
    inv_d = np.ascontiguousarray(inv_d, dtype=np.float64)
    psi = np.ascontiguousarray(psi, dtype=np.float64)
    return float(_cross_impl(inv_d, psi))


def single_power_grid(paths, thetas, dist, wavenumber, gamma, amp) -> np.ndarray:
    """Single-element received power over a (path-length, phase) grid.

    Returns shape ``(len(paths), len(thetas))``; row-major so that flat
    argmax resolves ties toward the lowest path index, then lowest phase
    index.
    """
    paths = np.ascontiguousarray(paths, dtype=np.float64)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    return _grid_impl(
        paths, thetas, float(dist), float(wavenumber), float(gamma), float(amp)
    )
