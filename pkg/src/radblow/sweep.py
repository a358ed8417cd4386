"""Parameter sweeps: Cartesian products of config overrides, run in parallel.

A sweep document is a config document plus axis lines of the form

    sweep.grid.cells = 200, 400, 800

Each ``sweep.<key>`` line declares an axis over a config key; the remaining
lines form the base config.  The product of all axes is run (axes vary in
file order, last axis fastest) and one aggregate CSV row is written per run.
Row order is the product order regardless of how many workers execute runs,
so the aggregate file is byte-identical for any --jobs value.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .config import RunConfig, parse_config
from .errors import ConfigError
from .runner import RunSummary, run_simulation, summary_lines

SWEEP_PREFIX = "sweep."

SUMMARY_COLUMNS = (
    "triggered",
    "cause",
    "detected_time",
    "T_star",
    "threshold",
    "H0",
    "M",
    "a",
    "b",
    "beta",
    "wall_contact_time",
    "final_time",
    "steps",
    "status",
)


def parse_sweep(text: str) -> tuple[list[tuple[str, list[str]]], list[tuple[str, str]]]:
    """Split a sweep document into axes and base-config assignments.

    Returns (axes, base) where axes is a list of (config key, value tokens)
    in file order and base is the list of raw (key, value) pairs.
    """
    axes: list[tuple[str, list[str]]] = []
    base: list[tuple[str, str]] = []
    violations: list[str] = []
    seen_axes: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            violations.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key.startswith(SWEEP_PREFIX):
            target = key[len(SWEEP_PREFIX):]
            if target in seen_axes:
                violations.append(f"{key}: duplicate axis")
                continue
            seen_axes.add(target)
            tokens = [tok.strip() for tok in val.split(",")]
            if not val or any(not tok for tok in tokens):
                violations.append(f"{key}: empty value list")
                continue
            axes.append((target, tokens))
        else:
            base.append((key, val))
    if violations:
        raise ConfigError(violations)
    return axes, base


def expand_configs(text: str) -> tuple[list[str], list[tuple[str, ...]], list[RunConfig]]:
    """All run configs of a sweep document, validated before anything runs.

    Returns (axis keys, per-run axis value tuples, per-run configs); raises
    ConfigError naming the first bad combination if any combo is invalid.
    """
    axes, base = parse_sweep(text)
    axis_keys = [key for key, _ in axes]
    kept_base = [(k, v) for (k, v) in base if k not in axis_keys]

    combos = list(product(*[tokens for _, tokens in axes]))
    configs: list[RunConfig] = []
    for combo in combos:
        lines = [f"{k} = {v}" for k, v in kept_base]
        lines += [f"{k} = {v}" for k, v in zip(axis_keys, combo)]
        doc = "\n".join(lines) + "\n"
        try:
            configs.append(parse_config(doc))
        except ConfigError as err:
            point = ", ".join(f"{k}={v}" for k, v in zip(axis_keys, combo))
            raise ConfigError([f"sweep point ({point}): {v}" for v in err.violations])
    return axis_keys, combos, configs


def _run_point(config: RunConfig) -> RunSummary:
    return run_simulation(config, out_dir=None).summary


def _summary_row(summary: RunSummary) -> list[str]:
    values = [line.partition("=")[2].strip() for line in summary_lines(summary)]
    values = values[:-1]  # drop series_file: sweep points write no per-run files
    status = "nonfinite" if summary.cause == "nonfinite" else "ok"
    return values + [status]


def run_sweep(text: str, csv_path: str, jobs: int = 1) -> int:
    """Run a sweep document and write the aggregate CSV; returns the row count."""
    axis_keys, combos, configs = expand_configs(text)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(_run_point, configs))
    else:
        summaries = [_run_point(c) for c in configs]

    with open(csv_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(list(axis_keys) + list(SUMMARY_COLUMNS))
        for combo, summary in zip(combos, summaries):
            writer.writerow(list(combo) + _summary_row(summary))
    return len(combos)
