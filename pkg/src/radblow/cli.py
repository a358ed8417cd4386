"""Command-line front end.

Subcommands: run, bound, check-ic, sweep, plot.  Exit codes: 0 on success
(a detected singularity is a result, not a failure), 1 on configuration or
argument errors, 2 when the solver state went nonfinite.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import parse_config
from .errors import ConfigError, HypothesisError
from .initial import blowup_threshold
from .plotting import write_plot
from .riccati import blowup_time, coefficients, with_initial
from .runner import prepare, run_simulation, summary_lines
from .sweep import run_sweep


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 1


def _read_config(path: str):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as err:
        raise ConfigError([f"{path}: {err.strerror or err}"])
    return parse_config(text)


def cmd_run(args) -> int:
    try:
        config = _read_config(args.config)
        result = run_simulation(config, out_dir=args.out)
    except (ConfigError, HypothesisError, ValueError) as err:
        return _fail(f"config error: {err}")

    for line in summary_lines(result.summary):
        print(line)
    summary = result.summary
    if summary.T_star is not None:
        if summary.detected_time is not None:
            print(
                f"detected at t = {summary.detected_time!r}, bound T* = "
                f"{summary.T_star!r} (ratio {summary.detected_time / summary.T_star:.4f})"
            )
        else:
            print(f"no detection before t_end; bound T* = {summary.T_star!r}")
    else:
        print("initial data below threshold: no finite-time bound applies")
    if summary.cause == "nonfinite":
        return 2
    return 0


def cmd_bound(args) -> int:
    try:
        threshold = (
            blowup_threshold(args.N, args.n, args.R, args.M)
            if args.delta == -1
            else 0.0
        )
        bound = with_initial(
            coefficients(args.N, args.n, args.R, args.M, args.delta), args.H0
        )
    except (HypothesisError, ValueError) as err:
        return _fail(f"argument error: {err}")

    print(f"threshold = {threshold!r}")
    print(f"a = {bound.a!r}")
    print(f"b = {bound.b!r}")
    print(f"beta = {bound.beta!r}")
    print(f"H0 = {args.H0!r}")
    print(f"satisfied = {'true' if args.H0 > threshold else 'false'}")
    t_star = blowup_time(bound)
    print(f"T_star = {'' if t_star is None else repr(t_star)}")
    return 0


def cmd_check_ic(args) -> int:
    try:
        config = _read_config(args.config)
        _, _, report, bound = prepare(config)
    except (ConfigError, HypothesisError, ValueError) as err:
        return _fail(f"config error: {err}")

    print(f"H0 = {report.H0!r}")
    print(f"M = {report.M!r}")
    print(f"threshold = {report.threshold!r}")
    print(f"satisfied = {'true' if report.satisfied else 'false'}")
    print(f"margin = {report.margin!r}")
    print(f"T_star = {'' if bound.T_star is None else repr(bound.T_star)}")
    return 0


def cmd_sweep(args) -> int:
    try:
        with open(args.config) as f:
            text = f.read()
    except OSError as err:
        return _fail(f"config error: {args.config}: {err.strerror or err}")
    try:
        os.makedirs(args.out, exist_ok=True)
        csv_path = os.path.join(args.out, "sweep.csv")
        count = run_sweep(text, csv_path, jobs=args.jobs)
    except (ConfigError, HypothesisError, ValueError) as err:
        return _fail(f"config error: {err}")
    print(f"wrote {count} rows to {csv_path}")
    return 0


def cmd_plot(args) -> int:
    try:
        write_plot(args.series, args.out, log_h=args.log_h)
    except (OSError, ValueError) as err:
        return _fail(f"plot error: {err}")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radblow",
        description=(
            "Radial compressible-flow simulator with a finite-time "
            "singularity detector and the matching analytic bound."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured simulation")
    p_run.add_argument("--config", required=True, help="config file path")
    p_run.add_argument("--out", default=None, help="output directory (overrides output.dir)")
    p_run.set_defaults(func=cmd_run)

    p_bound = sub.add_parser("bound", help="print threshold and bound for explicit arguments")
    p_bound.add_argument("--N", type=int, required=True, help="space dimension")
    p_bound.add_argument("--n", type=float, required=True, help="weight exponent")
    p_bound.add_argument("--R", type=float, required=True, help="support radius")
    p_bound.add_argument("--M", type=float, required=True, help="weighted mass")
    p_bound.add_argument("--delta", type=int, required=True, choices=(-1, 0, 1))
    p_bound.add_argument("--H0", type=float, required=True, help="initial weighted momentum")
    p_bound.set_defaults(func=cmd_bound)

    p_check = sub.add_parser("check-ic", help="evaluate the initial-data threshold for a config")
    p_check.add_argument("--config", required=True, help="config file path")
    p_check.set_defaults(func=cmd_check_ic)

    p_sweep = sub.add_parser("sweep", help="run a sweep document")
    p_sweep.add_argument("--config", required=True, help="sweep file path")
    p_sweep.add_argument("--out", required=True, help="output directory for sweep.csv")
    p_sweep.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    p_sweep.set_defaults(func=cmd_sweep)

    p_plot = sub.add_parser("plot", help="render a series CSV to a static SVG")
    p_plot.add_argument("--series", required=True, help="series CSV path")
    p_plot.add_argument("--out", required=True, help="output SVG file path")
    p_plot.add_argument("--log-h", action="store_true", dest="log_h", help="log scale for H")
    p_plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
