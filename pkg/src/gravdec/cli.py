import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import config
from .errors import (
    ConfigError,
    DomainError,
    GravdecError,
    InvalidWidthError,
    SourceError,
)
from .experiment import ScenarioResult, run, sweep_heights
from .geometry import (
    PathGeometry,
    delta_exact,
    delta_weak_field,
    sd_shell_time_climb,
    sd_shell_time_climb_quadrature,
    shell_time_climb,
    shell_time_climb_quadrature,
)
from .logs import configure_logging
from .modes import ModeFunction, load_tabulated_mode
from .runfile import RunSettings, load_settings
from .storage import RunManifest, write_svg, write_sweep_csv
from .storage.results import format_number

EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _base_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="Run file with key = value lines")
    p.add_argument("--re", type=float, help="Reference (SD-shell) radius in meters")
    p.add_argument("--M", type=float, help="Mass parameter in meters")
    p.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs"
    )
    return p


def _scenario_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dt", type=float, help="Temporal mode width d_t in meters")
    p.add_argument("--dx", type=float, help="Spatial mode width d_x in meters")
    p.add_argument("--source", choices=["pdc", "coherent"], help="Source model (default: pdc)")
    p.add_argument("--alpha", type=float, help="Coherent amplitude (default: 1)")
    p.add_argument("--chi", type=float, help="Down-conversion gain (default: 0.01)")
    p.add_argument(
        "--method", choices=["exact", "weak"], help="Delta evaluation (default: weak)"
    )
    p.add_argument(
        "--swap",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Resend each photon along the other path (--no-swap overrides a run file)",
    )
    p.add_argument("--mode-file", help="Tabulated mode grid replacing the Gaussian envelope")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravdec",
        description="Gravitational decoherence of entangled photon pairs",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)
    base = _base_parser()
    scenario = _scenario_parser()

    p_delta = sub.add_parser(
        "delta", parents=[base], help="Print the shell intervals and the path-time asymmetry"
    )
    p_delta.add_argument("--height", type=float, required=True, help="Mirror height h in meters")
    p_delta.add_argument(
        "--method",
        choices=["exact", "weak", "both"],
        default="exact",
        help="Delta evaluation (default: exact)",
    )
    p_delta.add_argument(
        "--check", action="store_true", help="Also print quadrature values and relative differences"
    )

    p_run = sub.add_parser("run", parents=[base, scenario], help="Evaluate one scenario")
    p_run.add_argument("--height", type=float, required=True, help="Mirror height h in meters")
    p_run.add_argument("--json", action="store_true", help="Print the result as JSON")

    p_sweep = sub.add_parser(
        "sweep", parents=[base, scenario], help="Sweep the mirror height and write a CSV"
    )
    p_sweep.add_argument("--h-min", type=float, default=config.DEFAULT_H_MIN, help="First height (m)")
    p_sweep.add_argument("--h-max", type=float, default=config.DEFAULT_H_MAX, help="Last height (m)")
    p_sweep.add_argument(
        "--steps", type=int, default=config.DEFAULT_STEPS, help="Number of grid points"
    )
    p_sweep.add_argument("--out", default="sweep.csv", help="CSV output path (default: sweep.csv)")
    p_sweep.add_argument("--svg", help="Also write a C_N curve to this SVG path")
    p_sweep.add_argument(
        "--jobs", type=int, default=None, help="Worker processes (default: GRAVDEC_JOBS or 1)"
    )
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    keys = ("re", "M", "dt", "dx", "source", "alpha", "chi", "method", "swap")
    return {key: getattr(args, key, None) for key in keys}


def _scenario_settings(args: argparse.Namespace) -> RunSettings:
    settings = load_settings(args.config, _overrides(args))
    if settings.source == "pdc" and args.alpha is not None:
        raise SourceError("--alpha applies to --source coherent only")
    if settings.source == "coherent" and args.chi is not None:
        raise SourceError("--chi applies to --source pdc only")
    return settings


def _output_path(raw: str) -> Path:
    path = Path(raw)
    return path if path.is_absolute() else config.OUTPUT_DIR / path


def _load_mode(args: argparse.Namespace) -> Optional[ModeFunction]:
    if not getattr(args, "mode_file", None):
        return None
    return load_tabulated_mode(args.mode_file)


def _print_pairs(pairs: List[tuple]) -> None:
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        print(f"{key:<{width}} = {value}")


def _relative(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def cmd_delta(args: argparse.Namespace) -> int:
    overrides = {"re": args.re, "M": args.M}
    settings = load_settings(args.config, overrides)
    metric = settings.to_experiment().metric
    path = PathGeometry(args.height)

    sigma_c = shell_time_climb(metric, path)
    sigma_sd = sd_shell_time_climb(metric, path)
    pairs = [
        ("h_m", format_number(path.height)),
        ("sigma_c_m", format_number(sigma_c)),
        ("sigma_sd_m", format_number(sigma_sd)),
    ]
    if args.method in ("exact", "both"):
        pairs.append(("delta_exact_m", format_number(delta_exact(metric, path))))
    if args.method in ("weak", "both"):
        pairs.append(("delta_weak_m", format_number(delta_weak_field(metric, path))))
    if args.check:
        q_c = shell_time_climb_quadrature(metric, path)
        q_sd = sd_shell_time_climb_quadrature(metric, path)
        pairs += [
            ("sigma_c_quad_m", format_number(q_c)),
            ("sigma_c_rel_diff", format_number(_relative(sigma_c, q_c))),
            ("sigma_sd_quad_m", format_number(q_sd)),
            ("sigma_sd_rel_diff", format_number(_relative(sigma_sd, q_sd))),
        ]
    _print_pairs(pairs)
    return 0


def _result_pairs(result: ScenarioResult) -> List[tuple]:
    pairs = []
    for key, value in result.to_dict().items():
        pairs.append((key, "-" if value is None else format_number(value)))
    return pairs


def cmd_run(args: argparse.Namespace) -> int:
    settings = _scenario_settings(args)
    experiment = settings.to_experiment(height=args.height, mode=_load_mode(args))
    result = run(experiment)
    if args.json:
        print(json.dumps({"config": experiment.to_dict(), "result": result.to_dict()}, indent=2))
    else:
        _print_pairs(_result_pairs(result))
    return 0


def _sweep_manifest(settings: RunSettings, args: argparse.Namespace) -> RunManifest:
    extra = [("h_min", args.h_min), ("h_max", args.h_max), ("steps", args.steps)]
    if args.mode_file:
        extra.append(("mode_file", args.mode_file))
    return RunManifest(settings=settings.manifest_items(), extra=extra)


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = _scenario_settings(args)
    experiment = settings.to_experiment(mode=_load_mode(args))
    jobs = args.jobs if args.jobs is not None else config.default_jobs()
    rows = sweep_heights(experiment, args.h_min, args.h_max, args.steps, jobs=jobs)

    out = write_sweep_csv(_output_path(args.out), _sweep_manifest(settings, args), rows)
    print(f"wrote {len(rows)} rows to {out}")
    if args.svg:
        svg = write_svg(_output_path(args.svg), rows)
        print(f"wrote plot to {svg}")
    return 0


COMMANDS = {"delta": cmd_delta, "run": cmd_run, "sweep": cmd_sweep}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level)

    try:
        return COMMANDS[args.cmd](args)
    except (ConfigError, SourceError, InvalidWidthError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except GravdecError as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
