"""Finite-volume solver for the radial system.

Conservative update on the uniform radial mesh with Rusanov (local
Lax-Friedrichs) interface fluxes for U = (rho, rho V):

    U_i <- U_i - dt/omega_i * (A_{i+1/2} F_{i+1/2} - A_{i-1/2} F_{i-1/2}) + dt S_i

The momentum source combines the field term rho Phi_r with the geometric
pressure term P_i (A_{i+1/2} - A_{i-1/2}) / omega_i; the update is arranged so
that a uniform resting state is preserved exactly (well balanced).  The axis
face has zero area for N >= 2 and acts as a reflecting wall for N = 1; the
outer boundary is a solid wall (zero mass flux, pressure-only momentum flux).

Reconstruction is either first-order (with a single forward-Euler stage) or
MUSCL with minmod slopes (with a two-stage second-order update).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import TimeSeriesRecord, record
from .errors import NonFiniteStateError
from .model import (
    VACUUM_FLOOR_RATIO,
    FluidState,
    ModelParams,
    RadialGrid,
    field_gradient,
    pressure,
    sound_speed,
)

logger = logging.getLogger(__name__)

RECONSTRUCTIONS = ("first-order", "muscl-minmod")


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping and detection settings."""

    t_end: float
    cfl: float = 0.45
    dt_min: float = 1e-10
    dt_max: float = 1e-2
    record_every: int = 10
    reconstruction: str = "first-order"
    density_ratio: float = 1e6  # blowup trigger: max rho over initial max rho
    gradient_scale: float = 1e3  # blowup trigger: max |dV| across one cell

    def __post_init__(self):
        if self.t_end < 0:
            raise ValueError(f"solver.t_end must be >= 0, got {self.t_end}")
        if not 0 < self.cfl < 1:
            raise ValueError(f"solver.cfl must lie in (0, 1), got {self.cfl}")
        if not self.dt_min > 0:
            raise ValueError(f"solver.dt_min must be positive, got {self.dt_min}")
        if not self.dt_max > 0:
            raise ValueError(f"solver.dt_max must be positive, got {self.dt_max}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError(
                f"solver.record_every must be an integer >= 1, got {self.record_every}"
            )
        if self.reconstruction not in RECONSTRUCTIONS:
            raise ValueError(
                f"solver.reconstruction must be one of {RECONSTRUCTIONS}, "
                f"got {self.reconstruction!r}"
            )
        if not self.density_ratio > 0:
            raise ValueError(
                f"solver.blowup.density_ratio must be positive, got {self.density_ratio}"
            )
        if not self.gradient_scale > 0:
            raise ValueError(
                f"solver.blowup.gradient_scale must be positive, got {self.gradient_scale}"
            )


@dataclass(frozen=True)
class SingularityStatus:
    """Whether a blowup heuristic fired, when, and which one."""

    triggered: bool
    time: float | None = None
    cause: str | None = None


def compute_dt(
    state: FluidState, grid: RadialGrid, params: ModelParams, config: SolverConfig
) -> float:
    """CFL step dt = cfl * dr / max(|V| + c), capped by the field time scale
    sqrt(dr / max|Phi_r|) and by dt_max.  Falls back to dt_max when no signal."""
    if not (np.all(np.isfinite(state.rho)) and np.all(np.isfinite(state.V))):
        raise NonFiniteStateError("compute_dt: state contains NaN or inf")
    signal = np.abs(state.V) + sound_speed(state.rho, params)
    smax = float(signal.max())
    dt = config.dt_max
    if smax > 0:
        dt = min(dt, config.cfl * grid.dr / smax)
    if params.delta != 0:
        gmax = float(np.abs(field_gradient(state, grid, params)).max())
        if gmax > 0:
            dt = min(dt, math.sqrt(grid.dr / gmax))
    return dt


def _minmod_slopes(q: np.ndarray) -> np.ndarray:
    """Minmod of one-sided differences; zero slope in the boundary cells."""
    dq = np.diff(q)
    left, right = dq[:-1], dq[1:]
    s = np.where(
        (left > 0) & (right > 0),
        np.minimum(left, right),
        np.where((left < 0) & (right < 0), np.maximum(left, right), 0.0),
    )
    slopes = np.zeros_like(q)
    slopes[1:-1] = s
    return slopes


def _interface_states(rho, V, reconstruction):
    if reconstruction == "first-order":
        return rho[:-1], rho[1:], V[:-1], V[1:]
    srho = _minmod_slopes(rho)
    sv = _minmod_slopes(V)
    rho_l = rho[:-1] + 0.5 * srho[:-1]
    rho_r = rho[1:] - 0.5 * srho[1:]
    v_l = V[:-1] + 0.5 * sv[:-1]
    v_r = V[1:] - 0.5 * sv[1:]
    return rho_l, rho_r, v_l, v_r


def step(
    state: FluidState,
    grid: RadialGrid,
    params: ModelParams,
    dt: float,
    reconstruction: str = "first-order",
    vacuum_floor: float | None = None,
) -> FluidState:
    """One forward-Euler stage of the conservative update."""
    if reconstruction not in RECONSTRUCTIONS:
        raise ValueError(f"unknown reconstruction {reconstruction!r}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    rho, V = state.rho, state.V
    nc = grid.cell_count
    if vacuum_floor is None:
        vacuum_floor = VACUUM_FLOOR_RATIO * float(rho.max()) if rho.size else 0.0

    P = pressure(rho, params)
    phi = field_gradient(state, grid, params)

    rho_l, rho_r, v_l, v_r = _interface_states(rho, V, reconstruction)
    p_l = pressure(rho_l, params)
    p_r = pressure(rho_r, params)
    lam = np.maximum(np.abs(v_l) + sound_speed(rho_l, params),
                     np.abs(v_r) + sound_speed(rho_r, params))
    m_l = rho_l * v_l
    m_r = rho_r * v_r

    f_rho = np.zeros(nc + 1)
    f_mom = np.zeros(nc + 1)
    f_rho[1:-1] = 0.5 * (m_l + m_r) - 0.5 * lam * (rho_r - rho_l)
    f_mom[1:-1] = 0.5 * (m_l * v_l + p_l + m_r * v_r + p_r) - 0.5 * lam * (m_r - m_l)
    # axis: zero-area face for N >= 2, reflecting wall for N = 1
    f_mom[0] = P[0] if params.N == 1 else 0.0
    # outer solid wall: no mass flux, pressure of the adjacent interior cell
    f_mom[-1] = P[-1]

    A = grid.face_areas
    omega = grid.volumes
    rho_new = rho - (dt / omega) * np.diff(A * f_rho)
    # momentum flux and geometric pressure source combined so that a uniform
    # state cancels exactly
    mom_div = A[1:] * (f_mom[1:] - P) - A[:-1] * (f_mom[:-1] - P)
    m_new = rho * V - (dt / omega) * mom_div + dt * rho * phi

    negative = rho_new < 0
    if np.any(negative):
        logger.warning(
            "step: flooring %d negative-density cells at t=%.6g (min rho %.3e)",
            int(negative.sum()),
            state.t + dt,
            float(rho_new.min()),
        )
        rho_new = np.where(negative, 0.0, rho_new)
    V_new = np.where(
        rho_new > vacuum_floor, m_new / np.where(rho_new > 0, rho_new, 1.0), 0.0
    )
    return FluidState(t=state.t + dt, rho=rho_new, V=V_new)


def advance(
    state: FluidState,
    grid: RadialGrid,
    params: ModelParams,
    dt: float,
    config: SolverConfig,
    vacuum_floor: float | None = None,
) -> FluidState:
    """One time step: forward Euler at first order, two-stage (Heun) with MUSCL."""
    if config.reconstruction == "first-order":
        return step(state, grid, params, dt, "first-order", vacuum_floor)
    s1 = step(state, grid, params, dt, "muscl-minmod", vacuum_floor)
    s2 = step(s1, grid, params, dt, "muscl-minmod", vacuum_floor)
    rho = 0.5 * (state.rho + s2.rho)
    m = 0.5 * (state.rho * state.V + s2.rho * s2.V)
    floor = vacuum_floor
    if floor is None:
        floor = VACUUM_FLOOR_RATIO * float(state.rho.max()) if state.rho.size else 0.0
    V = np.where(rho > floor, m / np.where(rho > 0, rho, 1.0), 0.0)
    return FluidState(t=state.t + dt, rho=rho, V=V)


def detect_singularity(
    state: FluidState,
    grid: RadialGrid,
    config: SolverConfig,
    initial_max_rho: float,
    dt: float,
) -> SingularityStatus:
    """Blowup heuristics: nonfinite values, density ratio, one-cell velocity
    jump (|dV/dr| > gradient_scale / dr), or collapse of the CFL step."""
    if not (np.all(np.isfinite(state.rho)) and np.all(np.isfinite(state.V))):
        return SingularityStatus(True, state.t, "nonfinite")
    if state.rho.max() > config.density_ratio * initial_max_rho:
        return SingularityStatus(True, state.t, "density-ratio")
    if state.V.size > 1 and np.abs(np.diff(state.V)).max() > config.gradient_scale:
        return SingularityStatus(True, state.t, "gradient-scale")
    if dt < config.dt_min:
        return SingularityStatus(True, state.t, "dt-collapse")
    return SingularityStatus(False)


@dataclass(eq=False)
class SimulationOutcome:
    """Everything the time loop produces."""

    series: list[TimeSeriesRecord]
    final_state: FluidState
    status: SingularityStatus
    wall_contact_time: float | None
    steps: int


def simulate(
    state: FluidState,
    grid: RadialGrid,
    params: ModelParams,
    config: SolverConfig,
    n: float,
) -> SimulationOutcome:
    """Run the time loop until t_end or the first detected singularity.

    Records are taken at t = 0, every record_every steps, at t_end and at the
    detection time.  The run also notes the first time the gas support touches
    the outer wall.
    """
    initial_max_rho = float(state.rho.max()) if state.rho.size else 0.0
    floor = VACUUM_FLOOR_RATIO * initial_max_rho
    series = [record(state, grid, params, n, dt=0.0, floor=floor)]
    status = SingularityStatus(False)
    wall_contact = state.t if state.rho.size and state.rho[-1] > floor else None
    steps = 0
    last_dt = 0.0
    t_end = config.t_end
    eps = 1e-12 * max(1.0, t_end)

    while True:
        try:
            dt_cfl = compute_dt(state, grid, params, config)
        except NonFiniteStateError:
            status = SingularityStatus(True, state.t, "nonfinite")
            break
        found = detect_singularity(state, grid, config, initial_max_rho, dt_cfl)
        if found.triggered:
            status = found
            break
        if state.t >= t_end - eps:
            break
        dt = min(dt_cfl, t_end - state.t)
        state = advance(state, grid, params, dt, config, floor)
        steps += 1
        last_dt = dt
        if wall_contact is None and state.rho[-1] > floor:
            wall_contact = state.t
        if steps % config.record_every == 0 or state.t >= t_end - eps:
            series.append(record(state, grid, params, n, dt=dt, floor=floor))

    if series[-1].t != state.t:
        if np.all(np.isfinite(state.rho)) and np.all(np.isfinite(state.V)):
            series.append(record(state, grid, params, n, dt=last_dt, floor=floor))
    return SimulationOutcome(series, state, status, wall_contact, steps)
