"""Multi-element optimization: per-element phases and panel placement.

The per-element phase aligner generalizes the single-element one: each
element cancels its own excess path delay, which pins every interference
cosine (direct-element and element-element alike) at one. At aligned phases
the power is strictly decreasing in every path length, so the best panel
location minimizes the largest element path; the closed form places the
panel so the link midpoint falls one element half-pitch inside its last
column. A brute-force minimax oracle validates that closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    PanelGeometry,
    PhaseProfile,
    ScenarioConfig,
    element_path_length_grid,
    element_path_lengths,
)
from .errors import InfeasibleGeometryError
from .power import opt_phase_power_from_paths

__all__ = [
    "MultiOptOutcome",
    "optimal_phases",
    "optimal_location_multi",
    "minimax_path_oracle",
    "joint_optimum_multi",
    "gradient_wrt_paths",
]


@dataclass(frozen=True)
class MultiOptOutcome:
    """Joint optimum for the multi-element model.

    ``max_path_m`` is the minimax objective (largest element path length) at
    the optimal corner position and ``argmax_element`` the binding element's
    (row, col) index.
    """

    x_star_m: float
    phases_star: PhaseProfile
    power_w: float
    max_path_m: float
    argmax_element: tuple[int, int]


def optimal_phases(panel: PanelGeometry, cfg: ScenarioConfig) -> PhaseProfile:
    """Per-element phase shifts aligning every reflected ray with the direct one.

    Element (i, j) gets the canonical wrap of ``k (d_ij - D)``; any integer
    number of full turns would serve equally since power depends on phases
    only modulo a full turn.
    """
    d = element_path_lengths(panel, cfg)
    return PhaseProfile(cfg.wavenumber * (d - cfg.link_distance_m))


def optimal_location_multi(panel_template: PanelGeometry, cfg: ScenarioConfig) -> float:
    """Closed-form corner position minimizing the largest element path.

    Places the panel so its column grid straddles the link midpoint:
    ``D/2 - (N - 1) a`` for ``N`` columns of half-width ``a``.

    Raises
    ------
    InfeasibleGeometryError
        When the closed form falls outside [0, D] (panel wider than the
        link allows).
    """
    dist = cfg.link_distance_m
    x_star = dist / 2.0 - (panel_template.cols - 1) * panel_template.half_width_m
    if not (0.0 <= x_star <= dist):
        raise InfeasibleGeometryError(
            f"optimal corner {x_star} m outside [0, {dist}]: panel too wide for link"
        )
    return x_star


def minimax_path_oracle(
    panel_template: PanelGeometry, cfg: ScenarioConfig, grid_points: int = 10_000
) -> tuple[float, float]:
    """Brute-force minimizer of the largest element path over corner positions.

    Scans ``grid_points`` corner positions across [0, D] and returns the
    argmin and its minimax value. Ties resolve to the lowest grid index.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    xs = np.linspace(0.0, cfg.link_distance_m, grid_points)
    d = element_path_length_grid(xs, panel_template, cfg)
    t = d.max(axis=(1, 2))
    best = int(np.argmin(t))
    return float(xs[best]), float(t[best])


def joint_optimum_multi(
    panel_template: PanelGeometry, cfg: ScenarioConfig
) -> MultiOptOutcome:
    """Closed-form placement combined with aligned phases at that placement."""
    x_star = optimal_location_multi(panel_template, cfg)
    panel = panel_template.at_corner_x(x_star)
    d = element_path_lengths(panel, cfg)
    phases = optimal_phases(panel, cfg)
    power = opt_phase_power_from_paths(d, cfg)
    binding = np.unravel_index(int(np.argmax(d)), d.shape)
    return MultiOptOutcome(
        x_star_m=x_star,
        phases_star=phases,
        power_w=float(power),
        max_path_m=float(d.max()),
        argmax_element=(int(binding[0]), int(binding[1])),
    )


def gradient_wrt_paths(panel: PanelGeometry, cfg: ScenarioConfig) -> np.ndarray:
    """Gradient of the phase-aligned power in each element path length.

    Returns the row-major flat vector of partial derivatives (watts per
    meter). Every component is strictly negative: at aligned phases the
    power only falls as any path lengthens, which is what justifies the
    minimax placement.
    """
    d = element_path_lengths(panel, cfg).ravel()
    inv = 1.0 / d
    s1 = float(np.sum(inv))
    g = cfg.gamma
    dist = cfg.link_distance_m
    partner_sums = s1 - inv  # sum of 1/d over the other elements
    return (
        -cfg.power_scale
        * g
        * (2.0 / d**3)
        * (g + d / dist + g * d * partner_sums)
    )
