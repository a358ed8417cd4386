"""Single-run orchestration: build the initial state, simulate, write artifacts.

A run directory contains three files: ``series.csv`` (the time series),
``summary.txt`` (key-value summary), and ``config.txt`` (the config echo,
re-parseable by parse_config).
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

from .config import RunConfig, render_config
from .diagnostics import TimeSeriesRecord
from .initial import (
    HypothesisReport,
    ProfileSpec,
    build_profile,
    check_hypotheses,
    solve_velocity_amplitude,
)
from .model import FluidState, RadialGrid, weighted_mass
from .riccati import RiccatiBound, coefficients, with_initial
from .solver import SimulationOutcome, simulate

CSV_COLUMNS = (
    "t",
    "dt",
    "H",
    "M_paper",
    "mass_discrete",
    "kinetic",
    "internal",
    "gravitational",
    "max_rho",
    "max_absV",
    "max_dVdr",
    "support_edge",
)

SERIES_FILE = "series.csv"
SUMMARY_FILE = "summary.txt"
CONFIG_FILE = "config.txt"


@dataclass(frozen=True)
class RunSummary:
    triggered: bool
    cause: str | None
    detected_time: float | None
    T_star: float | None
    threshold: float
    H0: float
    M: float
    a: float
    b: float
    beta: float
    wall_contact_time: float | None
    final_time: float
    steps: int
    series_file: str | None


@dataclass(eq=False)
class RunResult:
    config: RunConfig
    grid: RadialGrid
    initial_state: FluidState
    report: HypothesisReport
    bound: RiccatiBound
    outcome: SimulationOutcome
    summary: RunSummary


def resolve_amplitude(config: RunConfig, grid: RadialGrid) -> float:
    """Velocity amplitude for the configured profile.

    With target_H0_multiplier the amplitude is solved so that
    H0 = multiplier * threshold; when the threshold is zero (delta != -1)
    the multiplier therefore selects the zero-velocity profile.
    """
    if config.v_amplitude is not None:
        return config.v_amplitude
    params = config.model
    unit = ProfileSpec(
        kind=config.profile_kind,
        rho_center=config.rho_center,
        v_amplitude=1.0,
        support_radius=config.support_radius,
    )
    state = build_profile(unit, grid)
    report = check_hypotheses(state, grid, params, config.n)
    target = config.target_H0_multiplier * report.threshold
    return solve_velocity_amplitude(unit, grid, config.n, target)


def prepare(config: RunConfig):
    """Grid, initial state, hypothesis report, and Riccati bound for a config."""
    params = config.model
    grid = RadialGrid(config.cells, config.domain_radius, params.N)
    amplitude = resolve_amplitude(config, grid)
    spec = ProfileSpec(
        kind=config.profile_kind,
        rho_center=config.rho_center,
        v_amplitude=amplitude,
        support_radius=config.support_radius,
    )
    state = build_profile(spec, grid)
    report = check_hypotheses(state, grid, params, config.n)
    M = weighted_mass(state, grid, params)
    bound = coefficients(params.N, config.n, params.R, M, params.delta)
    bound = with_initial(bound, report.H0)
    return grid, state, report, bound


def run_simulation(config: RunConfig, out_dir: str | None = None) -> RunResult:
    """Execute one configured run; writes artifacts when a directory is given.

    out_dir overrides config.out_dir; None for both skips file output.
    """
    grid, state, report, bound = prepare(config)
    outcome = simulate(state, grid, config.model, config.solver, config.n)

    target_dir = out_dir if out_dir is not None else config.out_dir
    series_file = None
    if target_dir is not None:
        series_file = os.path.join(target_dir, SERIES_FILE)

    summary = RunSummary(
        triggered=outcome.status.triggered,
        cause=outcome.status.cause,
        detected_time=outcome.status.time,
        T_star=bound.T_star,
        threshold=report.threshold,
        H0=report.H0,
        M=report.M,
        a=bound.a,
        b=bound.b,
        beta=bound.beta,
        wall_contact_time=outcome.wall_contact_time,
        final_time=outcome.final_state.t,
        steps=outcome.steps,
        series_file=series_file,
    )
    result = RunResult(
        config=config,
        grid=grid,
        initial_state=state,
        report=report,
        bound=bound,
        outcome=outcome,
        summary=summary,
    )
    if target_dir is not None:
        write_artifacts(result, target_dir)
    return result


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_series_csv(records: list[TimeSeriesRecord], path: str) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    _format(rec.t),
                    _format(rec.dt),
                    _format(rec.H),
                    _format(rec.M_weighted),
                    _format(rec.mass_discrete),
                    _format(rec.kinetic),
                    _format(rec.internal),
                    _format(rec.gravitational),
                    _format(rec.max_rho),
                    _format(rec.max_absV),
                    _format(rec.max_dVdr),
                    _format(rec.support_edge),
                ]
            )


def summary_lines(summary: RunSummary) -> list[str]:
    return [
        f"triggered = {_format(summary.triggered)}",
        f"cause = {_format(summary.cause)}",
        f"detected_time = {_format(summary.detected_time)}",
        f"T_star = {_format(summary.T_star)}",
        f"threshold = {_format(summary.threshold)}",
        f"H0 = {_format(summary.H0)}",
        f"M = {_format(summary.M)}",
        f"a = {_format(summary.a)}",
        f"b = {_format(summary.b)}",
        f"beta = {_format(summary.beta)}",
        f"wall_contact_time = {_format(summary.wall_contact_time)}",
        f"final_time = {_format(summary.final_time)}",
        f"steps = {summary.steps}",
        f"series_file = {_format(summary.series_file)}",
    ]


def write_artifacts(result: RunResult, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_series_csv(result.outcome.series, os.path.join(out_dir, SERIES_FILE))
    with open(os.path.join(out_dir, SUMMARY_FILE), "w") as f:
        f.write("\n".join(summary_lines(result.summary)) + "\n")
    with open(os.path.join(out_dir, CONFIG_FILE), "w") as f:
        f.write(render_config(result.config))


def read_summary(path: str) -> dict[str, str]:
    """Parse a summary.txt back into a key -> raw-string mapping."""
    out: dict[str, str] = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or "=" not in line:
                continue
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out
