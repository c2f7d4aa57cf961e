"""Received-power modeling and optimization for reflecting-panel links."""

from .core import (
    AIRCRAFT_RCS_POINTS,
    PAPER_RCS_FIT,
    PanelGeometry,
    PhaseProfile,
    RcsFit,
    ScenarioConfig,
    element_path_length,
    element_path_lengths,
    fit_rcs_quadratic,
    location_from_path_length,
    rcs_from_area,
    reflection_coefficient_from_area,
    two_ray_path_length,
    wrap_angle,
)
from .errors import (
    ConfigError,
    DegenerateSystemError,
    DimensionMismatchError,
    IndexOutOfBoundsError,
    InfeasibleError,
    InfeasibleGeometryError,
    IrsOptError,
    NegativeRcsError,
    NoFeasibleBranchError,
    OutOfRangeError,
    ValidationError,
)
from .experiments import (
    BenchmarkReport,
    ExperimentSpec,
    load_scenario,
    run_experiment,
)
from .opt_multi import (
    MultiOptOutcome,
    gradient_wrt_paths,
    joint_optimum_multi,
    minimax_path_oracle,
    optimal_location_multi,
    optimal_phases,
)
from .opt_single import (
    PAPER_COS_FIT,
    CosineFit,
    OptimizationOutcome,
    QuinticCandidate,
    compose_cos_polynomial,
    joint_optimum_single,
    optimal_location_fixed_phase,
    optimal_phase_fixed_location,
)
from .oracle import GridSpec, finite_difference, grid_search_multi_location, grid_search_single
from .power import (
    PowerResult,
    opt_phase_power_curve,
    opt_phase_power_from_paths,
    received_power_complex_multi,
    received_power_complex_single,
    received_power_opt_phase_multi,
    received_power_tractable_multi,
    received_power_tractable_single,
)

__version__ = "0.1.0"

__all__ = [
    "AIRCRAFT_RCS_POINTS",
    "BenchmarkReport",
    "ConfigError",
    "CosineFit",
    "DegenerateSystemError",
    "DimensionMismatchError",
    "ExperimentSpec",
    "GridSpec",
    "IndexOutOfBoundsError",
    "InfeasibleError",
    "InfeasibleGeometryError",
    "IrsOptError",
    "MultiOptOutcome",
    "NegativeRcsError",
    "NoFeasibleBranchError",
    "OptimizationOutcome",
    "OutOfRangeError",
    "PAPER_COS_FIT",
    "PAPER_RCS_FIT",
    "PanelGeometry",
    "PhaseProfile",
    "PowerResult",
    "QuinticCandidate",
    "RcsFit",
    "ScenarioConfig",
    "ValidationError",
    "compose_cos_polynomial",
    "element_path_length",
    "element_path_lengths",
    "finite_difference",
    "fit_rcs_quadratic",
    "gradient_wrt_paths",
    "grid_search_multi_location",
    "grid_search_single",
    "joint_optimum_multi",
    "joint_optimum_single",
    "load_scenario",
    "location_from_path_length",
    "minimax_path_oracle",
    "opt_phase_power_curve",
    "opt_phase_power_from_paths",
    "optimal_location_fixed_phase",
    "optimal_location_multi",
    "optimal_phase_fixed_location",
    "optimal_phases",
    "rcs_from_area",
    "received_power_complex_multi",
    "received_power_complex_single",
    "received_power_opt_phase_multi",
    "received_power_tractable_multi",
    "received_power_tractable_single",
    "reflection_coefficient_from_area",
    "run_experiment",
    "two_ray_path_length",
    "wrap_angle",
]
