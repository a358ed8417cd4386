"""radblow: radial compressible-flow simulation with blowup diagnostics.

Simulates N-dimensional radially symmetric barotropic flow (optionally
self-coupled through a Newtonian field), tracks the weighted momentum
functional H_n(t) = integral of r^n V dr, checks the initial-data threshold
that forces its finite-time divergence, and compares the measured growth
against the closed-form Riccati lower bound.
"""

from .config import RunConfig, parse_config, render_config
from .errors import ConfigError, HypothesisError, NonFiniteStateError
from .initial import (
    HypothesisReport,
    ProfileSpec,
    blowup_threshold,
    build_profile,
    check_hypotheses,
    solve_velocity_amplitude,
    weighted_momentum,
)
from .model import (
    FluidState,
    ModelParams,
    RadialGrid,
    field_gradient,
    poisson_constant,
    pressure,
    sound_speed,
    unit_ball_volume,
    weighted_mass,
)
from .riccati import (
    RiccatiBound,
    blowup_time,
    coefficients,
    comparison_solution,
    emden_boundary,
    integrate_riccati_numeric,
    with_initial,
)
from .diagnostics import TimeSeriesRecord, potential, record, riccati_residual
from .runner import RunResult, RunSummary, prepare, run_simulation
from .solver import (
    SimulationOutcome,
    SingularityStatus,
    SolverConfig,
    advance,
    compute_dt,
    detect_singularity,
    simulate,
    step,
)

__all__ = [
    "ConfigError",
    "FluidState",
    "HypothesisError",
    "HypothesisReport",
    "ModelParams",
    "NonFiniteStateError",
    "ProfileSpec",
    "RadialGrid",
    "RiccatiBound",
    "RunConfig",
    "RunResult",
    "RunSummary",
    "SimulationOutcome",
    "SingularityStatus",
    "SolverConfig",
    "TimeSeriesRecord",
    "advance",
    "blowup_threshold",
    "blowup_time",
    "build_profile",
    "check_hypotheses",
    "coefficients",
    "comparison_solution",
    "compute_dt",
    "detect_singularity",
    "emden_boundary",
    "field_gradient",
    "integrate_riccati_numeric",
    "parse_config",
    "poisson_constant",
    "potential",
    "prepare",
    "pressure",
    "record",
    "render_config",
    "riccati_residual",
    "run_simulation",
    "simulate",
    "solve_velocity_amplitude",
    "sound_speed",
    "step",
    "unit_ball_volume",
    "weighted_mass",
    "weighted_momentum",
]
