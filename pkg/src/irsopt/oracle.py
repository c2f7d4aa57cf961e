"""Brute-force and finite-difference reference implementations.

These certify the closed-form optima at desk scale: exhaustive grids for
the argmax claims and central differences for derivative signs. Grids are
evaluated with fixed iteration order and deterministic tie-breaking (lowest
first index wins), so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._kernels import single_power_grid
from .core import PanelGeometry, ScenarioConfig, TWO_PI, _two_ray_lengths
from .errors import OutOfRangeError, ValidationError
from .power import opt_phase_power_curve

__all__ = [
    "GridSpec",
    "DEFAULT_SINGLE_AXIS_POINTS",
    "DEFAULT_LOCATION_POINTS",
    "grid_search_single",
    "grid_search_multi_location",
    "finite_difference",
]

#: Default per-axis resolution of the (location, phase) oracle: resolves the
#: tens-of-radians-per-meter oscillation at desk-scale runtimes.
DEFAULT_SINGLE_AXIS_POINTS = 2001
#: Default resolution of the corner-position oracle.
DEFAULT_LOCATION_POINTS = 10_000


@dataclass(frozen=True)
class GridSpec:
    """A uniform 1-D evaluation grid."""

    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise ValidationError(f"points must be >= 2, got {self.points}")
        if not (self.lo < self.hi):
            raise ValidationError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


def grid_search_single(
    cfg: ScenarioConfig, x_grid: GridSpec, theta_grid: GridSpec
) -> tuple[float, float, float]:
    """Exhaustive (location, phase) search of the single-element power.

    Returns (x, theta, power) at the grid argmax; ties break to the lowest
    location index, then the lowest phase index.
    """
    if x_grid.lo < 0.0 or x_grid.hi > cfg.link_distance_m:
        raise OutOfRangeError("x grid extends outside [0, D]")
    if theta_grid.lo < 0.0 or theta_grid.hi >= TWO_PI:
        raise OutOfRangeError("theta grid extends outside [0, 2*pi)")
    xs = x_grid.values()
    thetas = theta_grid.values()
    paths = _two_ray_lengths(xs, cfg)
    power = single_power_grid(
        paths, thetas, cfg.link_distance_m, cfg.wavenumber, cfg.gamma, cfg.power_scale
    )
    flat = int(np.argmax(power))  # first occurrence: row-major tie-break
    ix, it = np.unravel_index(flat, power.shape)
    return float(xs[ix]), float(thetas[it]), float(power[ix, it])


def grid_search_multi_location(
    panel_template: PanelGeometry, cfg: ScenarioConfig, x_grid: GridSpec
) -> tuple[float, float]:
    """Exhaustive corner-position search of the phase-aligned power."""
    if x_grid.lo < 0.0 or x_grid.hi > cfg.link_distance_m:
        raise OutOfRangeError("x grid extends outside [0, D]")
    xs = x_grid.values()
    power = opt_phase_power_curve(xs, panel_template, cfg)
    best = int(np.argmax(power))
    return float(xs[best]), float(power[best])


def finite_difference(
    fn: Callable[[float], float], at: float, h_step: float
) -> tuple[float, float]:
    """Central first and second difference of ``fn`` at ``at``."""
    if not (h_step > 0):
        raise ValidationError(f"h_step must be positive, got {h_step}")
    up = fn(at + h_step)
    down = fn(at - h_step)
    mid = fn(at)
    first = (up - down) / (2.0 * h_step)
    second = (up - 2.0 * mid + down) / (h_step * h_step)
    return first, second
