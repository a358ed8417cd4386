"""Time-series diagnostics: functionals, energies, and the Riccati residual.

Radial integrals of a density f are taken as N Vol(N) sum_i f_i r_i^(N-1) dr.
The potential Phi is reconstructed (N >= 3 only) by integrating Phi_r inward
from Phi(R) = -delta alpha(N) Mtilde R^(2-N) / (N-2), the decaying-at-infinity
normalization with Mtilde = integral rho s^(N-1) ds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    VACUUM_FLOOR_RATIO,
    FluidState,
    ModelParams,
    RadialGrid,
    field_gradient,
    poisson_constant,
    unit_ball_volume,
)
from .initial import weighted_momentum
from .model import weighted_mass
from .riccati import RiccatiBound


@dataclass(frozen=True)
class TimeSeriesRecord:
    """One sampled row of run diagnostics."""

    t: float
    dt: float
    H: float
    M_weighted: float  # serialized under the CSV column name M_paper
    mass_discrete: float
    kinetic: float
    internal: float
    gravitational: float | None  # absent for N <= 2
    max_rho: float
    max_absV: float
    max_dVdr: float
    support_edge: float


def potential(state: FluidState, grid: RadialGrid, params: ModelParams) -> np.ndarray:
    """Potential Phi at cell centers by inward trapezoid integration of Phi_r."""
    if params.N < 3:
        raise ValueError(f"potential reconstruction requires N >= 3, got {params.N}")
    N = params.N
    alpha = poisson_constant(N)
    g = field_gradient(state, grid, params)
    rnm1 = grid.centers ** (N - 1)
    mtilde = float(np.sum(state.rho * rnm1)) * grid.dr
    R = grid.domain_radius
    phi_wall = -params.delta * alpha * mtilde * R ** (2 - N) / (N - 2)
    g_wall = params.delta * alpha * mtilde / R ** (N - 1)
    phi = np.empty(grid.cell_count)
    phi[-1] = phi_wall - 0.5 * (g[-1] + g_wall) * (grid.dr / 2.0)
    if grid.cell_count > 1:
        segments = 0.5 * (g[:-1] + g[1:]) * grid.dr
        phi[:-1] = phi[-1] - np.cumsum(segments[::-1])[::-1]
    return phi


def record(
    state: FluidState,
    grid: RadialGrid,
    params: ModelParams,
    n: float,
    dt: float = 0.0,
    floor: float | None = None,
) -> TimeSeriesRecord:
    """Sample all diagnostics of a state."""
    if floor is None:
        floor = VACUUM_FLOOR_RATIO * float(state.rho.max()) if state.rho.size else 0.0
    rnm1dr = grid.centers ** (params.N - 1) * grid.dr
    shell = params.N * unit_ball_volume(params.N)  # area of the unit sphere
    kinetic = shell * float(np.sum(0.5 * state.rho * state.V**2 * rnm1dr))
    if params.K > 0 and params.gamma > 1:
        internal = shell * float(
            np.sum(params.K / (params.gamma - 1.0) * state.rho**params.gamma * rnm1dr)
        )
    else:
        internal = 0.0
    if params.N >= 3:
        phi = potential(state, grid, params)
        gravitational = shell * float(np.sum(0.5 * state.rho * phi * rnm1dr))
    else:
        gravitational = None
    above = np.nonzero(state.rho > floor)[0]
    support_edge = float(grid.faces[above[-1] + 1]) if above.size else 0.0
    if state.V.size > 1:
        max_dVdr = float(np.abs(np.diff(state.V)).max()) / grid.dr
    else:
        max_dVdr = 0.0
    return TimeSeriesRecord(
        t=state.t,
        dt=dt,
        H=weighted_momentum(state, grid, n),
        M_weighted=weighted_mass(state, grid, params),
        mass_discrete=float(np.sum(state.rho * grid.volumes)),
        kinetic=kinetic,
        internal=internal,
        gravitational=gravitational,
        max_rho=float(state.rho.max()),
        max_absV=float(np.abs(state.V).max()),
        max_dVdr=max_dVdr,
        support_edge=support_edge,
    )


@dataclass(frozen=True, eq=False)
class ResidualSeries:
    """Centered-difference check of dH/dt >= a H^2 - b at interior record times."""

    t: np.ndarray
    dHdt: np.ndarray
    rhs: np.ndarray
    residual: np.ndarray  # dHdt - rhs; negative values flag violations


def riccati_residual(series, bound: RiccatiBound) -> ResidualSeries:
    """Residuals dH/dt - (a H^2 - b) from recorded samples.

    Needs at least three records at distinct times.
    """
    ts = np.array([rec.t for rec in series], dtype=float)
    hs = np.array([rec.H for rec in series], dtype=float)
    if ts.size < 3 or np.any(np.diff(ts) <= 0):
        raise ValueError(
            "insufficient data: the residual needs >= 3 records at strictly "
            "increasing times"
        )
    dHdt = (hs[2:] - hs[:-2]) / (ts[2:] - ts[:-2])
    rhs = bound.a * hs[1:-1] ** 2 - bound.b
    return ResidualSeries(t=ts[1:-1], dHdt=dHdt, rhs=rhs, residual=dHdt - rhs)
