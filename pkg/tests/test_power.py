import math

import numpy as np
import pytest

from irsopt import (
    DimensionMismatchError,
    PanelGeometry,
    PhaseProfile,
    ScenarioConfig,
    element_path_lengths,
    opt_phase_power_curve,
    opt_phase_power_from_paths,
    optimal_phases,
    received_power_complex_multi,
    received_power_complex_single,
    received_power_opt_phase_multi,
    received_power_tractable_multi,
    received_power_tractable_single,
    two_ray_path_length,
    wrap_angle,
)
from irsopt._kernels import (
    _cross_term_sum_loops,
    _cross_term_sum_numpy,
    _single_power_grid_loops,
    _single_power_grid_numpy,
)

from helpers import (
    check_decomposition_identity,
    check_location_symmetry,
    check_phase_perturbation_pessimality,
    is_unimodal,
    random_scene,
)

TWO_PI = 2.0 * math.pi


class TestSingleElement:
    def test_zero_reflection_gives_direct_path_only(self):
        cfg = ScenarioConfig(2.0, 10.0, 0.3278, offset_height_m=4.0, reflection_coeff=0.0)
        expected = cfg.power_scale / 100.0
        for theta in (0.0, 1.0, 4.0):
            assert received_power_tractable_single(3.0, theta, cfg) == pytest.approx(
                expected, rel=1e-14
            )
        # frozen arithmetic: 2 * (0.3278 / 4 pi)^2 / 100
        assert expected == pytest.approx(1.36090612e-05, rel=1e-8)

    def test_constructive_alignment_is_perfect_square(self, cfg_single):
        x = 3.7
        d = two_ray_path_length(x, cfg_single)
        k = cfg_single.wavenumber
        theta = wrap_angle(k * (d - cfg_single.link_distance_m))
        expected = cfg_single.power_scale * (1.0 / 10.0 + cfg_single.gamma / d) ** 2
        assert received_power_tractable_single(x, theta, cfg_single) == pytest.approx(
            expected, rel=1e-12
        )

    def test_destructive_alignment_is_difference_square(self, cfg_single):
        x = 3.7
        d = two_ray_path_length(x, cfg_single)
        k = cfg_single.wavenumber
        theta = wrap_angle(k * (d - cfg_single.link_distance_m) - math.pi)
        expected = cfg_single.power_scale * (1.0 / 10.0 - cfg_single.gamma / d) ** 2
        assert received_power_tractable_single(x, theta, cfg_single) == pytest.approx(
            expected, rel=1e-9
        )

    def test_complex_and_expanded_forms_agree(self, cfg_single, rng):
        for _ in range(200):
            x = float(rng.uniform(0.0, 10.0))
            theta = float(rng.uniform(0.0, TWO_PI))
            pc = received_power_complex_single(x, theta, cfg_single)
            pt = received_power_tractable_single(x, theta, cfg_single)
            assert abs(pc - pt) <= 1e-10 * pc

    def test_symmetry_about_midpoint(self, cfg_single, rng):
        check_location_symmetry(cfg_single, rng, trials=200)


class TestMultiElement:
    def test_dimension_mismatch(self, cfg_multi, panel_multi):
        with pytest.raises(DimensionMismatchError):
            received_power_complex_multi(
                panel_multi, PhaseProfile.uniform(3, 3, 0.0), cfg_multi
            )
        with pytest.raises(DimensionMismatchError):
            received_power_tractable_multi(
                panel_multi, PhaseProfile.uniform(3, 3, 0.0), cfg_multi
            )

    def test_zero_reflection_gives_direct_path_only(self, panel_multi):
        cfg = ScenarioConfig(10.0, 100.0, 0.12, reflection_coeff=0.0)
        phases = PhaseProfile.uniform(20, 20, 1.0)
        expected = cfg.power_scale / 100.0**2
        assert received_power_complex_multi(panel_multi, phases, cfg) == pytest.approx(
            expected, rel=1e-12
        )

    def test_single_element_panel_collapses_to_two_ray_model(self, cfg_single):
        x, a = 4.2, 1e-9
        panel = PanelGeometry(
            rows=1,
            cols=1,
            half_width_m=a,
            corner_x_m=x - a,
            lateral_offset_m=0.0,
            corner_height_m=cfg_single.height - a,
        )
        theta = 2.5
        multi = received_power_complex_multi(
            panel, PhaseProfile.uniform(1, 1, theta), cfg_single
        )
        single = received_power_complex_single(x, theta, cfg_single)
        assert abs(multi - single) <= 1e-9 * single

    def test_complex_and_expanded_forms_agree(self, rng):
        worst = 0.0
        for _ in range(300):
            panel, phases, cfg = random_scene(rng)
            pc = received_power_complex_multi(panel, phases, cfg)
            pt = received_power_tractable_multi(panel, phases, cfg).total_w
            worst = max(worst, abs(pc - pt) / pc)
        assert worst < 1e-9

    def test_single_element_reduces_to_two_ray_expansion(self, rng):
        panel, phases, cfg = random_scene(rng, max_rows=1, max_cols=1)
        result = received_power_tractable_multi(panel, phases, cfg)
        assert result.element_cross_terms_w == 0.0
        assert len(result.element_self_terms_w) == 1

    def test_two_aligned_elements_cross_term(self, cfg_multi):
        panel = PanelGeometry(
            rows=1, cols=2, half_width_m=0.0075, corner_x_m=40.0,
            lateral_offset_m=0.5, corner_height_m=25.0,
        )
        phases = optimal_phases(panel, cfg_multi)
        result = received_power_tractable_multi(panel, phases, cfg_multi)
        d = element_path_lengths(panel, cfg_multi).ravel()
        g = cfg_multi.gamma
        expected_cross = cfg_multi.power_scale * 2.0 * g * g / (d[0] * d[1])
        assert result.element_cross_terms_w == pytest.approx(expected_cross, rel=1e-12)
        # brute-force reference for the same configuration
        reference = received_power_complex_multi(panel, phases, cfg_multi)
        assert result.total_w == pytest.approx(reference, rel=1e-12)

    def test_decomposition_and_nonnegativity(self, rng):
        check_decomposition_identity(rng, trials=100)

    def test_triangle_upper_bound_and_zero_lower_bound(self, rng):
        for _ in range(100):
            panel, phases, cfg = random_scene(rng)
            d = element_path_lengths(panel, cfg).ravel()
            bound = cfg.power_scale * (
                1.0 / cfg.link_distance_m + cfg.gamma * np.sum(1.0 / d)
            ) ** 2
            total = received_power_tractable_multi(panel, phases, cfg).total_w
            assert 0.0 <= total <= bound * (1.0 + 1e-12)

    def test_upper_bound_attained_at_aligned_phases(self, rng):
        panel, _, cfg = random_scene(rng)
        d = element_path_lengths(panel, cfg).ravel()
        bound = cfg.power_scale * (
            1.0 / cfg.link_distance_m + cfg.gamma * np.sum(1.0 / d)
        ) ** 2
        total = received_power_tractable_multi(
            panel, optimal_phases(panel, cfg), cfg
        ).total_w
        assert total == pytest.approx(bound, rel=1e-12)

    def test_single_misaligned_phase_costs_power(self, rng):
        check_phase_perturbation_pessimality(rng, trials=50)


class TestOptPhasePower:
    def test_matches_expanded_form_at_aligned_phases(self, cfg_multi, panel_multi):
        panel = panel_multi.at_corner_x(49.8575)
        direct = received_power_opt_phase_multi(panel, cfg_multi)
        expanded = received_power_tractable_multi(
            panel, optimal_phases(panel, cfg_multi), cfg_multi
        ).total_w
        assert abs(direct - expanded) <= 1e-10 * direct

    def test_single_element_perfect_square(self, cfg_single):
        panel = PanelGeometry(
            rows=1, cols=1, half_width_m=0.01, corner_x_m=4.99,
            lateral_offset_m=0.0, corner_height_m=3.99,
        )
        d = element_path_lengths(panel, cfg_single)[0, 0]
        expected = cfg_single.power_scale * (0.1 + cfg_single.gamma / d) ** 2
        assert received_power_opt_phase_multi(panel, cfg_single) == pytest.approx(
            expected, rel=1e-12
        )

    def test_location_sweep_is_unimodal_with_interior_peak(self, cfg_multi, panel_multi):
        xs = np.linspace(0.0, 100.0, 2001)
        curve = opt_phase_power_curve(xs, panel_multi, cfg_multi)
        assert is_unimodal(curve)
        peak = int(np.argmax(curve))
        assert 0 < peak < len(xs) - 1

    def test_curve_matches_scalar_op(self, cfg_multi, panel_multi):
        xs = np.array([0.0, 25.0, 49.85, 80.0])
        curve = opt_phase_power_curve(xs, panel_multi, cfg_multi)
        for x, value in zip(xs, curve):
            scalar = received_power_opt_phase_multi(
                panel_multi.at_corner_x(x), cfg_multi
            )
            assert value == pytest.approx(scalar, rel=1e-14)

    def test_paths_hook_matches_panel_evaluation(self, cfg_multi, panel_multi):
        d = element_path_lengths(panel_multi, cfg_multi)
        assert opt_phase_power_from_paths(d, cfg_multi) == pytest.approx(
            received_power_opt_phase_multi(panel_multi, cfg_multi), rel=1e-14
        )


class TestKernelPaths:
    """The compiled loops and the numpy twins must agree to rounding."""

    def test_cross_term_paths_agree(self, rng):
        for n in (1, 2, 17, 150):
            inv_d = rng.uniform(0.005, 0.2, n)
            psi = rng.uniform(-20.0, 20.0, n)
            loops = _cross_term_sum_loops(inv_d, psi)
            vectorized = _cross_term_sum_numpy(inv_d, psi)
            assert loops == pytest.approx(vectorized, rel=1e-11, abs=1e-15)

    def test_grid_paths_agree(self, rng):
        paths = rng.uniform(10.0, 15.0, 50)
        thetas = rng.uniform(0.0, TWO_PI, 40)
        loops = _single_power_grid_loops(paths, thetas, 10.0, 19.2, 3.36, 1e-3)
        vectorized = _single_power_grid_numpy(paths, thetas, 10.0, 19.2, 3.36, 1e-3)
        np.testing.assert_allclose(loops, vectorized, rtol=1e-12)
