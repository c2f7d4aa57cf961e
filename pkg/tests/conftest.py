import numpy as np
import pytest

from irsopt import PanelGeometry, ScenarioConfig
from irsopt._kernels import cross_term_sum, single_power_grid


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # First call triggers JIT compilation; keep it out of timed criteria.
    cross_term_sum(np.ones(3), np.zeros(3))
    single_power_grid(np.array([10.0, 11.0]), np.array([0.0, 1.0]), 10.0, 1.0, 0.5, 1.0)


@pytest.fixture
def cfg_single():
    return ScenarioConfig(
        transmit_power_w=2.0,
        link_distance_m=10.0,
        wavelength_m=0.3278,
        offset_height_m=4.0,
        panel_area_m2=8.0,
    )


@pytest.fixture
def cfg_multi():
    return ScenarioConfig(
        transmit_power_w=10.0,
        link_distance_m=100.0,
        wavelength_m=0.12,
        reflection_coeff=0.5,
    )


@pytest.fixture
def panel_multi():
    return PanelGeometry(
        rows=20,
        cols=20,
        half_width_m=0.0075,
        corner_x_m=0.0,
        lateral_offset_m=0.5,
        corner_height_m=25.0,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
