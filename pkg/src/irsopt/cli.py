"""Command-line interface.

Subcommands::

    irs-opt run <spec-file> [--out DIR] [--grid-points N] [--seed N]
    irs-opt optimize single|multi <spec-file>
    irs-opt validate <spec-file>

Exit codes: 0 success, 2 scenario parse/validation failure, 3 infeasible
geometry, 4 internal error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import (
    ConfigError,
    InfeasibleError,
    InfeasibleGeometryError,
    ValidationError,
)
from .experiments import load_scenario, run_experiment
from .opt_multi import joint_optimum_multi, minimax_path_oracle
from .opt_single import joint_optimum_single
from .oracle import (
    DEFAULT_LOCATION_POINTS,
    DEFAULT_SINGLE_AXIS_POINTS,
    GridSpec,
    grid_search_single,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-opt",
        description=(
            "Received-power experiments and optimal placement/phase shifts "
            "for reflecting-panel assisted links"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment and write CSV sweeps")
    run_p.add_argument("spec_file")
    run_p.add_argument("--out", default=".", help="output directory")
    run_p.add_argument(
        "--grid-points",
        type=int,
        default=None,
        help="override the sweep resolutions of the spec",
    )
    run_p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="recorded in outputs for provenance (experiments are deterministic)",
    )

    opt_p = sub.add_parser("optimize", help="print the closed-form optimum")
    opt_p.add_argument("model", choices=("single", "multi"))
    opt_p.add_argument("spec_file")

    val_p = sub.add_parser("validate", help="parse and validate a scenario file")
    val_p.add_argument("spec_file")
    return parser


def _cmd_run(args) -> int:
    spec = load_scenario(args.spec_file)
    if args.grid_points is not None:
        if args.grid_points < 2:
            raise ConfigError("--grid-points must be >= 2")
        spec = replace(
            spec, x_points=args.grid_points, theta_points=args.grid_points
        )
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    run_experiment(spec, out_dir=args.out)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    spec = load_scenario(args.spec_file)
    cfg = spec.scenario
    if args.model == "single":
        if cfg.offset_height_m is None:
            raise ConfigError(
                "single optimization requires scenario.offset_height_m"
            )
        x_star, theta_star, power = joint_optimum_single(cfg)
        print(f"x_star_m = {x_star!r}")
        print(f"theta_star_rad = {theta_star!r}")
        print(f"power_w = {power!r}")
        gx = GridSpec(0.0, cfg.link_distance_m, DEFAULT_SINGLE_AXIS_POINTS)
        gt = GridSpec(0.0, 6.283185, DEFAULT_SINGLE_AXIS_POINTS)
        _, _, grid_power = grid_search_single(cfg, gx, gt)
        print(f"oracle_grid_max_w = {grid_power!r}")
        print(f"closed_over_grid_ratio = {power / grid_power!r}")
    else:
        if spec.panel is None:
            raise ConfigError("multi optimization requires panel.* settings")
        outcome = joint_optimum_multi(spec.panel, cfg)
        oracle_x, oracle_t = minimax_path_oracle(
            spec.panel, cfg, grid_points=DEFAULT_LOCATION_POINTS
        )
        print(f"x_star_m = {outcome.x_star_m!r}")
        print(f"power_w = {outcome.power_w!r}")
        print(f"max_path_m = {outcome.max_path_m!r}")
        print(f"binding_element = {outcome.argmax_element}")
        print(f"minimax_oracle_x_m = {oracle_x!r}")
        print(f"minimax_oracle_path_m = {oracle_t!r}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    spec = load_scenario(args.spec_file)
    print(f"experiment = {spec.experiment_id}")
    print(f"output = {spec.output_name()}")
    cfg = spec.scenario
    print(f"transmit_power_w = {cfg.transmit_power_w!r}")
    print(f"link_distance_m = {cfg.link_distance_m!r}")
    print(f"wavelength_m = {cfg.wavelength_m!r}")
    print(f"reflection_coeff = {cfg.gamma!r}")
    if spec.panel is not None:
        print(f"panel = {spec.panel.rows}x{spec.panel.cols}")
    print("ok")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "optimize": _cmd_optimize, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InfeasibleGeometryError, InfeasibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Exception as exc:  # noqa: BLE001 - map anything else to the internal code
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
