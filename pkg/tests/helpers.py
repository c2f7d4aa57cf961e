"""Shared oracles and property checks used by module tests and acceptance."""

import numpy as np

from irsopt import (
    PanelGeometry,
    PhaseProfile,
    ScenarioConfig,
    location_from_path_length,
    optimal_phases,
    received_power_complex_multi,
    received_power_tractable_multi,
    received_power_tractable_single,
    two_ray_path_length,
)

TWO_PI = 2.0 * np.pi


def dense_single_power_curve(cfg, theta, points=100_000):
    """Exact single-element power over a dense location grid (oracle)."""
    xs = np.linspace(0.0, cfg.link_distance_m, points)
    h = cfg.height
    d = np.sqrt(xs**2 + h**2) + np.sqrt((cfg.link_distance_m - xs) ** 2 + h**2)
    k = cfg.wavenumber
    g = cfg.gamma
    power = cfg.power_scale * (
        1.0 / cfg.link_distance_m**2
        + g * g / d**2
        + (2.0 * g / (d * cfg.link_distance_m))
        * np.cos(k * d - theta - k * cfg.link_distance_m)
    )
    return xs, power


def is_unimodal(curve) -> bool:
    """Rises then falls; monotone curves count."""
    diffs = np.diff(curve)
    signs = np.sign(diffs[diffs != 0.0])
    if len(signs) == 0:
        return True
    flips = int(np.sum(signs[1:] != signs[:-1]))
    return flips == 0 or (flips == 1 and signs[0] > 0)


def random_scene(rng, max_rows=8, max_cols=8):
    """Random multi-element scene for equivalence and property checks."""
    rows = int(rng.integers(1, max_rows + 1))
    cols = int(rng.integers(1, max_cols + 1))
    dist = float(rng.uniform(5.0, 200.0))
    a = float(rng.uniform(0.002, 0.05))
    panel = PanelGeometry(
        rows=rows,
        cols=cols,
        half_width_m=a,
        corner_x_m=float(rng.uniform(0.0, max(dist - 2 * cols * a, 0.1))),
        lateral_offset_m=float(rng.uniform(0.0, 5.0)),
        corner_height_m=float(rng.uniform(0.1, 50.0)),
    )
    cfg = ScenarioConfig(
        transmit_power_w=float(rng.uniform(0.5, 20.0)),
        link_distance_m=dist,
        wavelength_m=float(rng.uniform(0.05, 0.5)),
        reflection_coeff=float(rng.uniform(0.05, 3.0)),
    )
    phases = PhaseProfile(rng.uniform(0.0, TWO_PI, (rows, cols)))
    return panel, phases, cfg


# -- property battery (fixed-seed randomized invariants) -----------------------


def check_roundtrip_inversion(cfg, rng, trials=1000):
    """One of the two inverted locations reproduces the original x."""
    for _ in range(trials):
        x = float(rng.uniform(0.0, cfg.link_distance_m))
        d = two_ray_path_length(x, cfg)
        x1, x2 = location_from_path_length(d, cfg)
        assert min(abs(x1 - x), abs(x2 - x)) < 1e-8


def check_location_symmetry(cfg, rng, trials=200):
    """Power at fixed phase is symmetric about the link midpoint."""
    dist = cfg.link_distance_m
    for _ in range(trials):
        x = float(rng.uniform(0.0, dist))
        theta = float(rng.uniform(0.0, TWO_PI))
        p1 = received_power_tractable_single(x, theta, cfg)
        p2 = received_power_tractable_single(dist - x, theta, cfg)
        assert abs(p1 - p2) <= 1e-12 * max(p1, p2)


def check_path_convexity_in_corner(rng, trials=100):
    """Element path length curves upward in the panel corner position."""
    from irsopt import element_path_lengths

    for _ in range(trials):
        panel, _, cfg = random_scene(rng, max_rows=4, max_cols=4)
        x0 = panel.corner_x_m
        h = 1e-3
        i = int(rng.integers(0, panel.rows))
        j = int(rng.integers(0, panel.cols))

        def path(x):
            return element_path_lengths(panel.at_corner_x(x), cfg)[i, j]

        second = (path(x0 + h) - 2.0 * path(x0) + path(x0 - h)) / (h * h)
        assert second > 0.0


def check_decomposition_identity(rng, trials=100):
    """PowerResult parts sum to its total and match the complex form."""
    for _ in range(trials):
        panel, phases, cfg = random_scene(rng)
        result = received_power_tractable_multi(panel, phases, cfg)
        parts = (
            result.direct_term_w
            + float(np.sum(result.element_self_terms_w))
            + float(np.sum(result.direct_cross_terms_w))
            + result.element_cross_terms_w
        )
        assert abs(parts - result.total_w) <= 1e-12 * abs(result.total_w)
        assert result.total_w >= 0.0
        reference = received_power_complex_multi(panel, phases, cfg)
        assert abs(result.total_w - reference) <= 1e-9 * reference


def check_phase_perturbation_pessimality(rng, trials=100):
    """Nudging any aligned phase strictly loses power."""
    for _ in range(trials):
        panel, _, cfg = random_scene(rng, max_rows=4, max_cols=4)
        aligned = optimal_phases(panel, cfg)
        best = received_power_tractable_multi(panel, aligned, cfg).total_w
        i = int(rng.integers(0, panel.rows))
        j = int(rng.integers(0, panel.cols))
        for delta in (-1.0, -0.1, 0.1, 1.0):
            perturbed = aligned.values.copy()
            perturbed[i, j] += delta
            power = received_power_tractable_multi(
                panel, PhaseProfile(perturbed), cfg
            ).total_w
            assert power < best
