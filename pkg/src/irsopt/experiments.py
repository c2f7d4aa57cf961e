"""Experiment harness: scenario files, sweep runners, CSV output.

Scenario file grammar (flat key-value text)::

    # comment lines and blank lines are ignored
    key = value

Keys are dotted section names. Recognized keys:

    experiment              one of fig4, fig5, fig6, fig7_fixed_phase_Z,
                            fig9_gamma_sweep, fig10_benchmark, custom_sweep
    output                  output CSV filename (default <experiment>.csv)
    seed                    integer, recorded in outputs for provenance
    scenario.transmit_power_w, scenario.link_distance_m,
    scenario.wavelength_m, scenario.offset_height_m,
    scenario.panel_area_m2, scenario.reflection_coeff,
    scenario.tx_gain, scenario.rx_gain
    panel.rows, panel.cols, panel.half_width_m, panel.corner_x_m,
    panel.lateral_offset_m, panel.corner_height_m
    sweep.x_points, sweep.theta_points         integers >= 2
    sweep.thetas, sweep.half_widths,
    sweep.gammas                               comma-separated floats
    sweep.z_values, sweep.grid_sizes           comma-separated integers

Values parse as int, then float, then true/false, then comma-separated
number list, then bare string. Unknown keys are rejected with the offending
line number.

Single-element experiments (fig4, fig5) default to a 2 W, 10 m link at
0.3278 m wavelength with the element 4 m above the path and its reflection
coefficient derived from an 8 m^2 area. All others default to a 10 W, 100 m
link at 0.12 m wavelength with a 20 x 20 panel of 7.5 mm half-width elements
0.5 m off-path, 25 m up, and reflection coefficient 0.5.

Every experiment writes one CSV (UTF-8, LF line endings, ``.`` decimal
separator, shortest round-trip floats) with ``#schema=`` and parameter
comment lines, then prints a key = value summary block to stdout. Output is
written atomically (temp file then rename) and is byte-identical across
repeated runs of the same spec.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    PanelGeometry,
    ScenarioConfig,
    element_path_length_grid,
    element_path_lengths,
)
from .errors import ConfigError, ValidationError
from .opt_multi import joint_optimum_multi, optimal_location_multi
from .opt_single import joint_optimum_single, optimal_location_fixed_phase
from .power import opt_phase_power_curve, opt_phase_power_from_paths
from ._kernels import single_power_grid

__all__ = [
    "EXPERIMENT_IDS",
    "ExperimentSpec",
    "BenchmarkReport",
    "ExperimentResult",
    "parse_config_text",
    "load_scenario",
    "run_experiment",
]

EXPERIMENT_IDS = (
    "fig4",
    "fig5",
    "fig6",
    "fig7_fixed_phase_Z",
    "fig9_gamma_sweep",
    "fig10_benchmark",
    "custom_sweep",
)

_SINGLE_EXPERIMENTS = frozenset({"fig4", "fig5"})

_SINGLE_SCENARIO = dict(
    transmit_power_w=2.0,
    link_distance_m=10.0,
    wavelength_m=0.3278,
    offset_height_m=4.0,
    panel_area_m2=8.0,
)
_MULTI_SCENARIO = dict(
    transmit_power_w=10.0,
    link_distance_m=100.0,
    wavelength_m=0.12,
    reflection_coeff=0.5,
)
_MULTI_PANEL = dict(
    rows=20,
    cols=20,
    half_width_m=0.0075,
    corner_x_m=0.0,
    lateral_offset_m=0.5,
    corner_height_m=25.0,
)

_DEFAULT_THETAS = (math.pi / 3, 2 * math.pi / 3, math.pi, 3 * math.pi / 2)
_DEFAULT_HALF_WIDTHS = (0.0075, 0.015, 0.03, 0.06)
_DEFAULT_Z_VALUES = (0, 1, 20, 100, 200, 400)
_DEFAULT_GAMMAS = tuple(round(0.1 * i, 1) for i in range(1, 10))
_DEFAULT_GRID_SIZES = (1, 10, 20)

_SCENARIO_FIELDS = {
    "transmit_power_w",
    "link_distance_m",
    "wavelength_m",
    "offset_height_m",
    "panel_area_m2",
    "reflection_coeff",
    "tx_gain",
    "rx_gain",
}
_PANEL_FIELDS = {
    "rows",
    "cols",
    "half_width_m",
    "corner_x_m",
    "lateral_offset_m",
    "corner_height_m",
}
_SWEEP_FIELDS = {
    "x_points",
    "theta_points",
    "thetas",
    "half_widths",
    "z_values",
    "gammas",
    "grid_sizes",
}


@dataclass(frozen=True)
class ExperimentSpec:
    """A fully resolved experiment: scenario, panel, sweep axes, output."""

    experiment_id: str
    scenario: ScenarioConfig
    panel: PanelGeometry | None
    x_points: int = 2001
    theta_points: int = 401
    thetas: tuple[float, ...] = _DEFAULT_THETAS
    half_widths: tuple[float, ...] = _DEFAULT_HALF_WIDTHS
    z_values: tuple[int, ...] = _DEFAULT_Z_VALUES
    gammas: tuple[float, ...] = _DEFAULT_GAMMAS
    grid_sizes: tuple[int, ...] = _DEFAULT_GRID_SIZES
    output: str | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.experiment_id not in EXPERIMENT_IDS:
            raise ConfigError(
                f"unknown experiment {self.experiment_id!r}; "
                f"expected one of {', '.join(EXPERIMENT_IDS)}"
            )
        if self.x_points < 2 or self.theta_points < 2:
            raise ConfigError("sweep resolutions must be >= 2")
        if self.experiment_id not in _SINGLE_EXPERIMENTS and self.panel is None:
            raise ConfigError(f"experiment {self.experiment_id} requires a panel")

    def output_name(self) -> str:
        return self.output or f"{self.experiment_id}.csv"


@dataclass(frozen=True)
class BenchmarkReport:
    """Scheme comparison against the corner-parked, full-turn-phase baseline.

    Improvements are ``100 * (scheme - benchmark) / benchmark`` per
    reflection-coefficient value.
    """

    gamma_values: tuple[float, ...]
    power_benchmark_w: tuple[float, ...]
    power_opt_location_w: tuple[float, ...]
    power_opt_phase_w: tuple[float, ...]
    power_joint_w: tuple[float, ...]
    pct_opt_location: tuple[float, ...]
    pct_opt_phase: tuple[float, ...]
    pct_joint: tuple[float, ...]

    def averages(self) -> dict[str, float]:
        return {
            "opt_location": float(np.mean(self.pct_opt_location)),
            "opt_phase": float(np.mean(self.pct_opt_phase)),
            "joint": float(np.mean(self.pct_joint)),
        }


@dataclass(frozen=True)
class ExperimentResult:
    csv_path: str
    summary: dict
    report: BenchmarkReport | None = None


# -- scenario file parsing ---------------------------------------------------


def _parse_value(raw: str):
    text = raw.strip()
    if "," in text:
        return tuple(_parse_scalar(part) for part in text.split(",") if part.strip())
    return _parse_scalar(text)


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def parse_config_text(text: str) -> dict:
    """Parse the flat key-value grammar into a {dotted key: value} dict."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(raw)
    return values


def _take_section(values: dict, section: str, allowed: set[str]) -> dict:
    out = {}
    prefix = section + "."
    for key in list(values):
        if key.startswith(prefix):
            field = key[len(prefix):]
            if field not in allowed:
                raise ConfigError(f"unknown key {key!r}")
            out[field] = values.pop(key)
    return out


def _as_float_tuple(value, key: str) -> tuple[float, ...]:
    items = value if isinstance(value, tuple) else (value,)
    try:
        return tuple(float(v) for v in items)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number list") from None


def _as_int_tuple(value, key: str) -> tuple[int, ...]:
    items = value if isinstance(value, tuple) else (value,)
    try:
        return tuple(int(v) for v in items)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer list") from None


def build_spec(values: dict) -> ExperimentSpec:
    """Resolve parsed key-values into a validated ExperimentSpec."""
    values = dict(values)
    experiment = values.pop("experiment", "custom_sweep")
    if experiment not in EXPERIMENT_IDS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; "
            f"expected one of {', '.join(EXPERIMENT_IDS)}"
        )
    output = values.pop("output", None)
    seed = values.pop("seed", None)
    if seed is not None and not isinstance(seed, int):
        raise ConfigError("seed must be an integer")

    scenario_kv = _take_section(values, "scenario", _SCENARIO_FIELDS)
    panel_kv = _take_section(values, "panel", _PANEL_FIELDS)
    sweep_kv = _take_section(values, "sweep", _SWEEP_FIELDS)
    if values:
        raise ConfigError(f"unknown key {sorted(values)[0]!r}")

    single = experiment in _SINGLE_EXPERIMENTS
    scenario_fields = dict(_SINGLE_SCENARIO if single else _MULTI_SCENARIO)
    scenario_fields.update(scenario_kv)
    try:
        scenario = ScenarioConfig(**scenario_fields)
    except ValidationError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from exc

    panel = None
    if not single:
        panel_fields = dict(_MULTI_PANEL)
        panel_fields.update(panel_kv)
        try:
            panel = PanelGeometry(**panel_fields)
        except ValidationError as exc:
            raise ConfigError(f"invalid panel: {exc}") from exc
    elif panel_kv:
        raise ConfigError(f"experiment {experiment} takes no panel.* keys")

    spec_kwargs: dict = {}
    if "x_points" in sweep_kv:
        spec_kwargs["x_points"] = int(sweep_kv.pop("x_points"))
    if "theta_points" in sweep_kv:
        spec_kwargs["theta_points"] = int(sweep_kv.pop("theta_points"))
    if "thetas" in sweep_kv:
        spec_kwargs["thetas"] = _as_float_tuple(sweep_kv.pop("thetas"), "sweep.thetas")
    if "half_widths" in sweep_kv:
        spec_kwargs["half_widths"] = _as_float_tuple(
            sweep_kv.pop("half_widths"), "sweep.half_widths"
        )
    if "z_values" in sweep_kv:
        spec_kwargs["z_values"] = _as_int_tuple(
            sweep_kv.pop("z_values"), "sweep.z_values"
        )
    if "gammas" in sweep_kv:
        spec_kwargs["gammas"] = _as_float_tuple(sweep_kv.pop("gammas"), "sweep.gammas")
    if "grid_sizes" in sweep_kv:
        spec_kwargs["grid_sizes"] = _as_int_tuple(
            sweep_kv.pop("grid_sizes"), "sweep.grid_sizes"
        )

    return ExperimentSpec(
        experiment_id=experiment,
        scenario=scenario,
        panel=panel,
        output=output,
        seed=seed,
        **spec_kwargs,
    )


def load_scenario(path: str) -> ExperimentSpec:
    """Load and validate a scenario file; empty files give full defaults."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return build_spec(parse_config_text(text))


# -- CSV output ---------------------------------------------------------------


def _format_cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: str, schema: str, comments: dict, columns, rows) -> None:
    """Write atomically with LF endings and shortest round-trip floats."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"#schema={schema}\n")
            for key in sorted(comments):
                fh.write(f"#{key}={comments[key]}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_format_cell(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- model helpers shared by several experiments -------------------------------


def _misaligned_field_factors(xs, panel, cfg, mis_count):
    """Complex element-field factors with the first ``mis_count`` elements
    (row-major) held at a full-turn phase and the rest aligned per location.

    Returns (aligned_sum, misaligned_sum) per corner position; the total
    field is exp(-jkD) * (1/D + gamma*aligned) + gamma*misaligned, which the
    complex power model reproduces element by element.
    """
    k = cfg.wavenumber
    d = element_path_length_grid(xs, panel, cfg).reshape(len(xs), -1)
    inv = 1.0 / d
    aligned = inv[:, mis_count:].sum(axis=1)
    mis = (np.exp(-1j * k * d[:, :mis_count]) * inv[:, :mis_count]).sum(axis=1)
    return aligned, mis


def _mixed_phase_power_curve(xs, panel, cfg, mis_count):
    """Received power per corner position with ``mis_count`` mis-phased elements."""
    k = cfg.wavenumber
    dist = cfg.link_distance_m
    g = cfg.gamma
    aligned, mis = _misaligned_field_factors(xs, panel, cfg, mis_count)
    field = np.exp(-1j * k * dist) * (1.0 / dist + g * aligned) + g * mis
    return cfg.power_scale * np.abs(field) ** 2


# -- experiment runners --------------------------------------------------------


def _run_fig4(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    paths = np.sqrt(xs**2 + cfg.height**2) + np.sqrt(
        (cfg.link_distance_m - xs) ** 2 + cfg.height**2
    )
    columns = ["x_m"] + [f"pr_w_theta{i}" for i in range(len(spec.thetas))]
    power = single_power_grid(
        paths,
        np.asarray(spec.thetas),
        cfg.link_distance_m,
        cfg.wavenumber,
        cfg.gamma,
        cfg.power_scale,
    )
    rows = [(xs[i], *power[i, :]) for i in range(len(xs))]
    summary: dict = {"experiment": "fig4"}
    for t_idx, theta in enumerate(spec.thetas):
        outcome = optimal_location_fixed_phase(theta, cfg)
        grid_best = int(np.argmax(power[:, t_idx]))
        summary[f"theta{t_idx}_value_rad"] = theta
        summary[f"theta{t_idx}_opt_x_m"] = outcome.x_star_m
        summary[f"theta{t_idx}_opt_power_w"] = outcome.power_w
        summary[f"theta{t_idx}_grid_argmax_x_m"] = float(xs[grid_best])
        summary[f"theta{t_idx}_grid_max_power_w"] = float(power[grid_best, t_idx])
    _write_csv(
        out_path,
        "irsopt.fig4/v1",
        _common_comments(spec) | {"thetas": _list_str(spec.thetas)},
        columns,
        rows,
    )
    return ExperimentResult(out_path, summary)


def _run_fig5(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    thetas = np.linspace(0.0, 2.0 * math.pi, spec.theta_points, endpoint=False)
    paths = np.sqrt(xs**2 + cfg.height**2) + np.sqrt(
        (cfg.link_distance_m - xs) ** 2 + cfg.height**2
    )
    power = single_power_grid(
        paths, thetas, cfg.link_distance_m, cfg.wavenumber, cfg.gamma, cfg.power_scale
    )
    rows = (
        (xs[i], thetas[j], power[i, j])
        for i in range(len(xs))
        for j in range(len(thetas))
    )
    ix, it = np.unravel_index(int(np.argmax(power)), power.shape)
    x_star, theta_star, p_star = joint_optimum_single(cfg)
    summary = {
        "experiment": "fig5",
        "grid_argmax_x_m": float(xs[ix]),
        "grid_argmax_theta_rad": float(thetas[it]),
        "grid_max_power_w": float(power[ix, it]),
        "closed_form_x_m": x_star,
        "closed_form_theta_rad": theta_star,
        "closed_form_power_w": p_star,
        "closed_over_grid_ratio": p_star / float(power[ix, it]),
    }
    _write_csv(
        out_path,
        "irsopt.fig5/v1",
        _common_comments(spec),
        ["x_m", "theta_rad", "pr_w"],
        rows,
    )
    return ExperimentResult(out_path, summary)


def _run_fig6(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    panel = spec.panel
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    columns = ["x_prime_m"] + [f"pr_w_a{i}" for i in range(len(spec.half_widths))]
    curves = []
    summary: dict = {"experiment": "fig6"}
    for a_idx, half_width in enumerate(spec.half_widths):
        variant = replace(panel, half_width_m=half_width)
        curve = opt_phase_power_curve(xs, variant, cfg)
        curves.append(curve)
        best = int(np.argmax(curve))
        summary[f"a{a_idx}_half_width_m"] = half_width
        summary[f"a{a_idx}_grid_argmax_x_m"] = float(xs[best])
        summary[f"a{a_idx}_closed_form_x_m"] = optimal_location_multi(variant, cfg)
        summary[f"a{a_idx}_max_power_w"] = float(curve[best])
        summary[f"a{a_idx}_unimodal"] = _is_unimodal(curve)
    rows = [(xs[i], *(c[i] for c in curves)) for i in range(len(xs))]
    _write_csv(
        out_path,
        "irsopt.fig6/v1",
        _common_comments(spec) | {"half_widths": _list_str(spec.half_widths)},
        columns,
        rows,
    )
    return ExperimentResult(out_path, summary)


def _run_fig7(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    panel = spec.panel
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    z_values = tuple(min(z, panel.element_count) for z in spec.z_values)
    columns = ["x_prime_m"] + [f"pr_w_z{z}" for z in z_values]
    curves = [_mixed_phase_power_curve(xs, panel, cfg, z) for z in z_values]
    rows = [(xs[i], *(c[i] for c in curves)) for i in range(len(xs))]
    summary: dict = {"experiment": "fig7_fixed_phase_Z"}
    means = []
    for z, curve in zip(z_values, curves):
        summary[f"z{z}_mean_power_w"] = float(curve.mean())
        summary[f"z{z}_max_power_w"] = float(curve.max())
        means.append(float(curve.mean()))
    summary["mean_power_nonincreasing"] = bool(
        all(means[i] >= means[i + 1] for i in range(len(means) - 1))
    )
    summary["z0_unimodal"] = _is_unimodal(curves[0]) if z_values[0] == 0 else None
    if z_values[0] == 0:
        summary["worst_mean_over_best_max"] = means[-1] / float(curves[0].max())
    _write_csv(
        out_path,
        "irsopt.fig7_fixed_phase_Z/v1",
        _common_comments(spec) | {"z_values": _list_str(z_values)},
        columns,
        rows,
    )
    return ExperimentResult(out_path, summary)


def _run_fig9(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    panel = spec.panel
    columns = ["gamma"] + [f"pr_w_mn{n * n}" for n in spec.grid_sizes]
    curves = []
    summary: dict = {"experiment": "fig9_gamma_sweep"}
    gammas = np.asarray(spec.gammas)
    for n in spec.grid_sizes:
        variant = replace(panel, rows=n, cols=n)
        x_star = optimal_location_multi(variant, cfg)
        d = element_path_lengths(variant.at_corner_x(x_star), cfg)
        powers = np.array(
            [
                opt_phase_power_from_paths(d, replace(cfg, reflection_coeff=g))
                for g in gammas
            ]
        )
        curves.append(powers)
        coeffs = np.polyfit(gammas, powers, 2)
        fitted = np.polyval(coeffs, gammas)
        residual = float(np.max(np.abs(fitted - powers) / np.max(powers)))
        summary[f"mn{n * n}_avg_power_w"] = float(powers.mean())
        summary[f"mn{n * n}_quadratic_residual_rel"] = residual
    rows = [(gammas[i], *(c[i] for c in curves)) for i in range(len(gammas))]
    _write_csv(
        out_path,
        "irsopt.fig9_gamma_sweep/v1",
        _common_comments(spec)
        | {"gammas": _list_str(spec.gammas), "grid_sizes": _list_str(spec.grid_sizes)},
        columns,
        rows,
    )
    return ExperimentResult(out_path, summary)


def _run_fig10(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    panel = spec.panel
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    mn = panel.element_count
    dist = cfg.link_distance_m
    k = cfg.wavenumber

    # Reflection-coefficient-independent field factors, computed once.
    aligned_curve, mis_curve = _misaligned_field_factors(xs, panel, cfg, mn)
    d_at_zero = element_path_lengths(panel.at_corner_x(0.0), cfg)
    s1_at_zero = float(np.sum(1.0 / d_at_zero))
    x_joint = optimal_location_multi(panel, cfg)
    d_joint = element_path_lengths(panel.at_corner_x(x_joint), cfg)
    direct = np.exp(-1j * k * dist) / dist

    bench, optloc, optphase, joint = [], [], [], []
    optloc_x = []
    for gamma in spec.gammas:
        cfg_g = replace(cfg, reflection_coeff=gamma)
        amp = cfg_g.power_scale
        curve = amp * np.abs(direct + gamma * mis_curve) ** 2
        bench.append(float(curve[0]))  # corner position 0 is the baseline
        best = int(np.argmax(curve))
        optloc.append(float(curve[best]))
        optloc_x.append(float(xs[best]))
        optphase.append(amp * (1.0 / dist + gamma * s1_at_zero) ** 2)
        joint.append(opt_phase_power_from_paths(d_joint, cfg_g))

    def pct(values):
        return tuple(
            100.0 * (v - b) / b for v, b in zip(values, bench)
        )

    report = BenchmarkReport(
        gamma_values=tuple(spec.gammas),
        power_benchmark_w=tuple(bench),
        power_opt_location_w=tuple(optloc),
        power_opt_phase_w=tuple(optphase),
        power_joint_w=tuple(joint),
        pct_opt_location=pct(optloc),
        pct_opt_phase=pct(optphase),
        pct_joint=pct(joint),
    )
    averages = report.averages()
    summary = {
        "experiment": "fig10_benchmark",
        "gamma_grid": _list_str(spec.gammas),
        "joint_x_m": x_joint,
        "avg_pct_opt_location": averages["opt_location"],
        "avg_pct_opt_phase": averages["opt_phase"],
        "avg_pct_joint": averages["joint"],
        "ordinal_joint_gt_phase_gt_location": bool(
            all(
                j > p > l > 0
                for j, p, l in zip(
                    report.pct_joint, report.pct_opt_phase, report.pct_opt_location
                )
            )
        ),
        "joint_avg_in_25_50_band": bool(25.0 <= averages["joint"] <= 50.0),
        # Declared-grid sensitivity: the improvement scale per grid point, so
        # the averaged figure can be audited against any other grid choice.
        "sensitivity_joint_pct_min": float(np.min(report.pct_joint)),
        "sensitivity_joint_pct_median": float(np.median(report.pct_joint)),
        "sensitivity_joint_pct_max": float(np.max(report.pct_joint)),
        "sensitivity_note": (
            "baseline parks the panel at the corner with full-turn phases, so "
            "its field is largely incoherent; coherent schemes exceed it by "
            "orders of magnitude at every grid gamma"
        ),
    }
    columns = [
        "gamma",
        "pr_benchmark_w",
        "pr_opt_location_w",
        "pr_opt_phase_w",
        "pr_joint_w",
        "imp_opt_location_pct",
        "imp_opt_phase_pct",
        "imp_joint_pct",
    ]
    rows = [
        (
            report.gamma_values[i],
            report.power_benchmark_w[i],
            report.power_opt_location_w[i],
            report.power_opt_phase_w[i],
            report.power_joint_w[i],
            report.pct_opt_location[i],
            report.pct_opt_phase[i],
            report.pct_joint[i],
        )
        for i in range(len(report.gamma_values))
    ]
    _write_csv(
        out_path,
        "irsopt.fig10_benchmark/v1",
        _common_comments(spec) | {"gammas": _list_str(spec.gammas)},
        columns,
        rows,
    )
    return ExperimentResult(out_path, summary, report)


def _run_custom(spec: ExperimentSpec, out_path: str) -> ExperimentResult:
    cfg = spec.scenario
    panel = spec.panel
    xs = np.linspace(0.0, cfg.link_distance_m, spec.x_points)
    curve = opt_phase_power_curve(xs, panel, cfg)
    best = int(np.argmax(curve))
    summary = {
        "experiment": "custom_sweep",
        "grid_argmax_x_m": float(xs[best]),
        "max_power_w": float(curve[best]),
        "closed_form_x_m": optimal_location_multi(panel, cfg),
        "joint_power_w": joint_optimum_multi(panel, cfg).power_w,
    }
    rows = [(xs[i], curve[i]) for i in range(len(xs))]
    _write_csv(
        out_path,
        "irsopt.custom_sweep/v1",
        _common_comments(spec),
        ["x_prime_m", "pr_w"],
        rows,
    )
    return ExperimentResult(out_path, summary)


_RUNNERS = {
    "fig4": _run_fig4,
    "fig5": _run_fig5,
    "fig6": _run_fig6,
    "fig7_fixed_phase_Z": _run_fig7,
    "fig9_gamma_sweep": _run_fig9,
    "fig10_benchmark": _run_fig10,
    "custom_sweep": _run_custom,
}


def _list_str(values) -> str:
    return ";".join(_format_cell(v) for v in values)


def _common_comments(spec: ExperimentSpec) -> dict:
    cfg = spec.scenario
    comments = {
        "transmit_power_w": repr(cfg.transmit_power_w),
        "link_distance_m": repr(cfg.link_distance_m),
        "wavelength_m": repr(cfg.wavelength_m),
        "reflection_coeff": repr(cfg.gamma),
    }
    if spec.seed is not None:
        comments["seed"] = str(spec.seed)
    if spec.panel is not None:
        comments["panel"] = (
            f"{spec.panel.rows}x{spec.panel.cols}"
            f";a={spec.panel.half_width_m!r}"
            f";y={spec.panel.lateral_offset_m!r}"
            f";h={spec.panel.corner_height_m!r}"
        )
    if cfg.offset_height_m is not None:
        comments["offset_height_m"] = repr(cfg.offset_height_m)
    return comments


def _is_unimodal(curve: np.ndarray) -> bool:
    """Rises then falls: at most one sign change of the discrete differences."""
    diffs = np.diff(curve)
    signs = np.sign(diffs[diffs != 0.0])
    if len(signs) == 0:
        return True
    flips = int(np.sum(signs[1:] != signs[:-1]))
    if flips == 0:
        return True
    return bool(flips == 1 and signs[0] > 0)


def run_experiment(spec: ExperimentSpec, out_dir: str = ".") -> ExperimentResult:
    """Run one experiment: write its CSV and print the summary block."""
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, spec.output_name())
    result = _RUNNERS[spec.experiment_id](spec, out_path)
    print(f"wrote {result.csv_path}")
    for key, value in result.summary.items():
        print(f"{key} = {value}")
    return result
