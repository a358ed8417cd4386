"""Run configuration: dotted-key text format, validation, and rendering.

A config document is UTF-8 text with one `dotted.key = value` per line and
`#` comments.  Parsing collects *all* violations before failing so a bad file
is reported in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .initial import PROFILE_KINDS
from .model import ModelParams
from .solver import RECONSTRUCTIONS, SolverConfig


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of a single simulation run."""

    model: ModelParams
    cells: int
    domain_radius: float
    profile_kind: str
    rho_center: float
    support_radius: float
    v_amplitude: float | None
    target_H0_multiplier: float | None
    solver: SolverConfig
    n: float
    out_dir: str | None


def _parse_int(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError("not an integer")
    return int(value)


# key -> (parser, required)
_KEYS = {
    "model.N": (_parse_int, True),
    "model.delta": (_parse_int, True),
    "model.K": (float, True),
    "model.gamma": (float, True),
    "model.R": (float, True),
    "grid.cells": (_parse_int, True),
    "grid.domain_radius": (float, False),
    "profile.kind": (str, False),
    "profile.rho_center": (float, True),
    "profile.support_radius": (float, True),
    "profile.v_amplitude": (float, False),
    "profile.target_H0_multiplier": (float, False),
    "solver.t_end": (float, True),
    "solver.cfl": (float, False),
    "solver.dt_min": (float, False),
    "solver.record_every": (_parse_int, False),
    "solver.reconstruction": (str, False),
    "solver.blowup.density_ratio": (float, False),
    "solver.blowup.gradient_scale": (float, False),
    "diagnostics.n": (float, True),
    "output.dir": (str, False),
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config document; raises ConfigError listing every
    violation (unknown keys, missing keys, type errors, constraint breaches)."""
    violations: list[str] = []
    values: dict[str, object] = {}
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
        if key not in _KEYS:
            violations.append(f"{key}: unknown key")
            continue
        if key in values:
            violations.append(f"{key}: duplicate key")
            continue
        parser = _KEYS[key][0]
        try:
            values[key] = parser(val)
        except ValueError:
            violations.append(f"{key}: cannot parse {val!r}")

    for key, (_, required) in _KEYS.items():
        if required and key not in values:
            violations.append(f"{key}: missing required key")

    def have(*keys):
        return all(k in values for k in keys)

    # model invariants
    if have("model.N") and values["model.N"] < 1:
        violations.append("model.N: must be >= 1")
    if have("model.delta") and values["model.delta"] not in (-1, 0, 1):
        violations.append("model.delta: must be -1, 0 or 1")
    if have("model.K") and values["model.K"] < 0:
        violations.append("model.K: must be >= 0")
    if have("model.K", "model.gamma") and values["model.K"] > 0 and values["model.gamma"] <= 1:
        violations.append("model.gamma: must exceed 1 when model.K > 0")
    if have("model.R") and not values["model.R"] > 0:
        violations.append("model.R: must be positive")

    # grid
    if have("grid.cells") and values["grid.cells"] < 8:
        violations.append("grid.cells: must be >= 8")
    if have("grid.domain_radius", "model.R") and values["grid.domain_radius"] != values["model.R"]:
        violations.append(
            "grid.domain_radius: must equal model.R (the outer wall sits at the "
            "support radius)"
        )
    domain_radius = values.get("grid.domain_radius", values.get("model.R"))

    # profile
    kind = values.get("profile.kind", "poly-bump")
    if kind not in PROFILE_KINDS:
        violations.append(f"profile.kind: unknown kind {kind!r}; known: {PROFILE_KINDS}")
    if have("profile.rho_center") and not values["profile.rho_center"] > 0:
        violations.append("profile.rho_center: must be positive")
    if have("profile.support_radius"):
        if not values["profile.support_radius"] > 0:
            violations.append("profile.support_radius: must be positive")
        elif domain_radius is not None and not values["profile.support_radius"] < domain_radius:
            violations.append(
                "profile.support_radius: must be strictly inside the grid domain"
            )
    has_amp = "profile.v_amplitude" in values
    has_mult = "profile.target_H0_multiplier" in values
    if has_amp == has_mult:
        violations.append(
            "profile: exactly one of profile.v_amplitude and "
            "profile.target_H0_multiplier must be given"
        )

    # solver
    cfl = values.get("solver.cfl", 0.45)
    if not 0 < cfl < 1:
        violations.append("solver.cfl: must lie in (0, 1)")
    if have("solver.t_end") and values["solver.t_end"] < 0:
        violations.append("solver.t_end: must be >= 0")
    dt_min = values.get("solver.dt_min", 1e-10)
    if not dt_min > 0:
        violations.append("solver.dt_min: must be positive")
    record_every = values.get("solver.record_every", 10)
    if record_every < 1:
        violations.append("solver.record_every: must be >= 1")
    reconstruction = values.get("solver.reconstruction", "first-order")
    if reconstruction not in RECONSTRUCTIONS:
        violations.append(
            f"solver.reconstruction: must be one of {RECONSTRUCTIONS}, got {reconstruction!r}"
        )
    density_ratio = values.get("solver.blowup.density_ratio", 1e6)
    if not density_ratio > 0:
        violations.append("solver.blowup.density_ratio: must be positive")
    gradient_scale = values.get("solver.blowup.gradient_scale", 1e3)
    if not gradient_scale > 0:
        violations.append("solver.blowup.gradient_scale: must be positive")

    # diagnostics
    if have("diagnostics.n"):
        n = values["diagnostics.n"]
        if not n > 0:
            violations.append("diagnostics.n: must be positive")
        elif have("model.N", "model.delta") and values["model.delta"] == -1:
            if not n > max(values["model.N"] - 2, 0):
                violations.append(
                    f"diagnostics.n: must exceed max(N-2, 0) = "
                    f"{max(values['model.N'] - 2, 0)} when model.delta = -1"
                )

    if violations:
        raise ConfigError(violations)

    model = ModelParams(
        N=values["model.N"],
        delta=values["model.delta"],
        K=values["model.K"],
        gamma=values["model.gamma"],
        R=values["model.R"],
    )
    solver = SolverConfig(
        t_end=values["solver.t_end"],
        cfl=cfl,
        dt_min=dt_min,
        record_every=record_every,
        reconstruction=reconstruction,
        density_ratio=density_ratio,
        gradient_scale=gradient_scale,
    )
    return RunConfig(
        model=model,
        cells=values["grid.cells"],
        domain_radius=domain_radius,
        profile_kind=kind,
        rho_center=values["profile.rho_center"],
        support_radius=values["profile.support_radius"],
        v_amplitude=values.get("profile.v_amplitude"),
        target_H0_multiplier=values.get("profile.target_H0_multiplier"),
        solver=solver,
        n=values["diagnostics.n"],
        out_dir=values.get("output.dir"),
    )


def render_config(config: RunConfig) -> str:
    """Canonical text form; parse_config(render_config(c)) == c."""
    lines = [
        f"model.N = {config.model.N}",
        f"model.delta = {config.model.delta}",
        f"model.K = {config.model.K!r}",
        f"model.gamma = {config.model.gamma!r}",
        f"model.R = {config.model.R!r}",
        f"grid.cells = {config.cells}",
        f"grid.domain_radius = {config.domain_radius!r}",
        f"profile.kind = {config.profile_kind}",
        f"profile.rho_center = {config.rho_center!r}",
        f"profile.support_radius = {config.support_radius!r}",
    ]
    if config.v_amplitude is not None:
        lines.append(f"profile.v_amplitude = {config.v_amplitude!r}")
    if config.target_H0_multiplier is not None:
        lines.append(f"profile.target_H0_multiplier = {config.target_H0_multiplier!r}")
    lines += [
        f"solver.t_end = {config.solver.t_end!r}",
        f"solver.cfl = {config.solver.cfl!r}",
        f"solver.dt_min = {config.solver.dt_min!r}",
        f"solver.record_every = {config.solver.record_every}",
        f"solver.reconstruction = {config.solver.reconstruction}",
        f"solver.blowup.density_ratio = {config.solver.density_ratio!r}",
        f"solver.blowup.gradient_scale = {config.solver.gradient_scale!r}",
        f"diagnostics.n = {config.n!r}",
    ]
    if config.out_dir is not None:
        lines.append(f"output.dir = {config.out_dir}")
    return "\n".join(lines) + "\n"
