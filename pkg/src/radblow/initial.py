"""Initial data: compactly supported profiles, the weighted momentum functional,
and the initial-data blowup threshold.

The weighted momentum H(t) = integral_0^R r^n V(t, r) dr drives the blowup
criteria.  For the attractive field (delta = -1) smooth solutions break down in
finite time whenever

    H(0) > sqrt( 2 R^(2n-N+4) M / (n (n+1) (n-N+2)) ),   n > max(N-2, 0),

while for delta in {0, +1} any H(0) > 0 (with n > 0) forces breakdown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import HypothesisError
from .model import FluidState, ModelParams, RadialGrid, weighted_mass

PROFILE_KINDS = ("poly-bump",)


@dataclass(frozen=True)
class ProfileSpec:
    """Compactly supported C^1 initial profile.

    poly-bump:  rho0(r) = rho_center * (1 - (r/R0)^2)^2
                V0(r)   = v_amplitude * (r/R0) * (1 - (r/R0)^2)^2
    for r < R0 = support_radius, both identically zero outside.
    """

    kind: str
    rho_center: float
    v_amplitude: float
    support_radius: float

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(
                f"unknown profile kind {self.kind!r}; known: {PROFILE_KINDS}"
            )
        if not self.rho_center > 0:
            raise ValueError(f"profile.rho_center must be positive, got {self.rho_center}")
        if not self.support_radius > 0:
            raise ValueError(
                f"profile.support_radius must be positive, got {self.support_radius}"
            )


def build_profile(spec: ProfileSpec, grid: RadialGrid) -> FluidState:
    """Sample the profile at cell centers."""
    if spec.support_radius > grid.domain_radius:
        raise ValueError(
            f"profile support radius {spec.support_radius} exceeds the grid "
            f"domain radius {grid.domain_radius}"
        )
    x = grid.centers / spec.support_radius
    inside = x < 1.0
    shape = np.where(inside, (1.0 - x**2) ** 2, 0.0)
    rho = spec.rho_center * shape
    V = spec.v_amplitude * np.where(inside, x, 0.0) * shape
    return FluidState(t=0.0, rho=rho, V=V)


def weighted_momentum(state: FluidState, grid: RadialGrid, n: float) -> float:
    """H = integral_0^R r^n V dr by the midpoint rule."""
    if not n > 0:
        raise ValueError(f"weight exponent n must be positive, got {n}")
    return float(np.sum(grid.centers**n * state.V)) * grid.dr


def blowup_threshold(N: int, n: float, R: float, M: float) -> float:
    """Attractive-field threshold sqrt(2 R^(2n-N+4) M / (n (n+1) (n-N+2)))."""
    if not n > max(N - 2, 0):
        raise HypothesisError(
            f"weight exponent n must exceed max(N-2, 0) = {max(N - 2, 0)} "
            f"for the attractive threshold, got n={n}"
        )
    if not R > 0:
        raise ValueError(f"support radius R must be positive, got {R}")
    if M < 0:
        raise ValueError(f"mass constant M must be >= 0, got {M}")
    return math.sqrt(2.0 * R ** (2 * n - N + 4) * M / (n * (n + 1) * (n - N + 2)))


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the initial-data check: is H0 above the blowup threshold?"""

    n: float
    H0: float
    M: float
    threshold: float
    satisfied: bool
    margin: float


def check_hypotheses(
    state: FluidState, grid: RadialGrid, params: ModelParams, n: float
) -> HypothesisReport:
    """Evaluate H0, M and the threshold; satisfied means H0 > threshold strictly.

    For delta in {0, +1} the threshold is zero (any positive H0 qualifies) and
    only n > 0 is required; delta = -1 additionally needs n > max(N-2, 0).
    """
    H0 = weighted_momentum(state, grid, n)
    M = weighted_mass(state, grid, params)
    if params.delta == -1:
        threshold = blowup_threshold(params.N, n, params.R, M)
    else:
        threshold = 0.0
    return HypothesisReport(
        n=n,
        H0=H0,
        M=M,
        threshold=threshold,
        satisfied=H0 > threshold,
        margin=H0 - threshold,
    )


def solve_velocity_amplitude(
    spec: ProfileSpec, grid: RadialGrid, n: float, target_H0: float
) -> float:
    """Amplitude v_c with weighted_momentum(profile(v_c)) = target_H0.

    H is linear in the velocity amplitude, so v_c = target / H(v_c = 1).
    """
    unit = weighted_momentum(build_profile(replace(spec, v_amplitude=1.0), grid), grid, n)
    if unit == 0.0:
        raise ValueError(
            "velocity amplitude is unsolvable: the unit-amplitude profile has "
            "zero weighted momentum on this grid"
        )
    return target_H0 / unit
