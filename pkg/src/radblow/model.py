"""Physics core for the radially symmetric compressible Euler / Euler-Poisson system.

The model evolves density rho(t, r) and radial velocity V(t, r) on [0, R]:

    rho_t + V rho_r + rho V_r + (N-1)/r * rho V = 0
    rho (V_t + V V_r) + P_r = rho Phi_r

with barotropic pressure P = K rho^gamma and a reduced radial field

    Phi_r = delta * alpha(N) / r^(N-1) * integral_0^r rho(t, s) s^(N-1) ds

where delta = -1 (attractive), 0 (no field) or +1 (repulsive).  alpha(N) is
the normalization constant of the field equation Delta(Phi) = delta alpha(N) rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Cells with density below this fraction of the initial maximum are treated as
# vacuum: their velocity is forced to zero.
VACUUM_FLOOR_RATIO = 1e-14


def poisson_constant(n_dim: int) -> float:
    """Field-equation normalization alpha(N).

    alpha(1) = 1, alpha(2) = 2*pi, and for N >= 3
    alpha(N) = N (N-2) pi^(N/2) / Gamma(N/2 + 1).
    """
    if int(n_dim) != n_dim or n_dim < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {n_dim}")
    if n_dim == 1:
        return 1.0
    if n_dim == 2:
        return 2.0 * math.pi
    return n_dim * (n_dim - 2) * math.pi ** (n_dim / 2) / math.gamma(n_dim / 2 + 1)


def unit_ball_volume(n_dim: int) -> float:
    """Volume of the unit ball, pi^(N/2) / Gamma(N/2 + 1)."""
    if int(n_dim) != n_dim or n_dim < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {n_dim}")
    return math.pi ** (n_dim / 2) / math.gamma(n_dim / 2 + 1)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters: dimension, field sign, gas law, support radius."""

    N: int
    delta: int
    K: float
    gamma: float
    R: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"model.N must be an integer >= 1, got {self.N}")
        if self.delta not in (-1, 0, 1):
            raise ValueError(f"model.delta must be -1, 0 or 1, got {self.delta}")
        if self.K < 0:
            raise ValueError(f"model.K must be >= 0, got {self.K}")
        if self.K > 0 and self.gamma <= 1:
            raise ValueError(
                f"model.gamma must exceed 1 when K > 0, got gamma={self.gamma}"
            )
        if not self.R > 0:
            raise ValueError(f"model.R must be positive, got {self.R}")


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Uniform radial mesh of cell_count cells on [0, domain_radius].

    Faces sit at i*dr, centers at (i+1/2)*dr.  Face areas are r^(N-1) and the
    cell measure is omega_i = (r_+^N - r_-^N) / N, so that sum(omega) =
    domain_radius^N / N exactly up to round-off.
    """

    cell_count: int
    domain_radius: float
    N: int
    dr: float = field(init=False)
    faces: np.ndarray = field(init=False)
    centers: np.ndarray = field(init=False)
    face_areas: np.ndarray = field(init=False)
    volumes: np.ndarray = field(init=False)

    def __post_init__(self):
        if int(self.cell_count) != self.cell_count or self.cell_count < 8:
            raise ValueError(
                f"grid.cells must be an integer >= 8, got {self.cell_count}"
            )
        if not self.domain_radius > 0:
            raise ValueError(
                f"grid domain radius must be positive, got {self.domain_radius}"
            )
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"grid dimension must be an integer >= 1, got {self.N}")
        dr = self.domain_radius / self.cell_count
        faces = dr * np.arange(self.cell_count + 1, dtype=float)
        object.__setattr__(self, "dr", dr)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "centers", 0.5 * (faces[:-1] + faces[1:]))
        object.__setattr__(self, "face_areas", faces ** (self.N - 1))
        object.__setattr__(
            self, "volumes", np.diff(faces**self.N) / self.N
        )


@dataclass(eq=False)
class FluidState:
    """Cell-averaged density and velocity at time t."""

    t: float
    rho: np.ndarray
    V: np.ndarray

    def copy(self) -> "FluidState":
        return FluidState(self.t, self.rho.copy(), self.V.copy())


def pressure(rho, params: ModelParams):
    """Barotropic pressure P = K rho^gamma (elementwise)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise ValueError("pressure: negative density")
    if params.K == 0:
        return np.zeros_like(rho)
    return params.K * rho**params.gamma


def sound_speed(rho, params: ModelParams):
    """c = sqrt(K gamma rho^(gamma-1)); identically zero for pressureless gas."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise ValueError("sound_speed: negative density")
    if params.K == 0:
        return np.zeros_like(rho)
    return np.sqrt(params.K * params.gamma * rho ** (params.gamma - 1))


def field_gradient(state: FluidState, grid: RadialGrid, params: ModelParams):
    """Reduced radial field Phi_r at cell centers.

    Phi_r,i = delta * alpha(N) * G_i / r_i^(N-1) with the cumulative midpoint
    quadrature G_i = sum_{j<i} rho_j r_j^(N-1) dr + 0.5 rho_i r_i^(N-1) dr.
    """
    if params.delta == 0:
        return np.zeros(grid.cell_count)
    rnm1 = grid.centers ** (params.N - 1)
    w = state.rho * rnm1 * grid.dr
    partial = np.cumsum(w) - 0.5 * w  # sum over j < i plus half of cell i
    return params.delta * poisson_constant(params.N) * partial / rnm1


def weighted_mass(state: FluidState, grid: RadialGrid, params: ModelParams) -> float:
    """Mass-like constant M = alpha(N) * integral_0^R rho s^(N-1) ds (midpoint rule).

    This is the constant entering the blowup threshold and the Riccati sink
    term; for N = 3 it coincides with the total mass.
    """
    rnm1 = grid.centers ** (params.N - 1)
    return poisson_constant(params.N) * float(np.sum(state.rho * rnm1)) * grid.dr
