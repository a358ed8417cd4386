"""Riccati comparison machinery for the weighted momentum functional.

Along smooth flows H(t) = integral r^n V dr obeys the differential inequality

    dH/dt >= a H^2 - b,   a = n (n+1) / (2 R^(n+2)),
                          b = R^(n-N+2) M / (n-N+2)   (delta = -1; else b = 0).

The comparison solution of the equality ODE blows up at

    T* = 1 / (a H0)                                    (b = 0, H0 > 0)
    T* = ln((H0+beta)/(H0-beta)) / (2 sqrt(a b))       (b > 0, H0 > beta)

with equilibrium beta = sqrt(b/a); every H starting above the curve reaches a
pole no later than T*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import HypothesisError

# Comparison solutions are considered numerically divergent past this magnitude.
DIVERGENCE_CAP = 1e12


@dataclass(frozen=True)
class RiccatiBound:
    """Coefficients of dH/dt >= a H^2 - b, optionally anchored at H(0) = H0."""

    a: float
    b: float
    beta: float
    H0: float | None = None
    T_star: float | None = None


def coefficients(N: int, n: float, R: float, M: float, delta: int) -> RiccatiBound:
    """Build the Riccati coefficients for the given model constants."""
    if not n > 0:
        raise ValueError(f"weight exponent n must be positive, got {n}")
    if not R > 0:
        raise ValueError(f"support radius R must be positive, got {R}")
    if M < 0:
        raise ValueError(f"mass constant M must be >= 0, got {M}")
    a = n * (n + 1) / (2.0 * R ** (n + 2))
    if delta == -1:
        if not n > max(N - 2, 0):
            raise HypothesisError(
                f"weight exponent n must exceed max(N-2, 0) = {max(N - 2, 0)} "
                f"when delta = -1, got n={n}"
            )
        b = R ** (n - N + 2) * M / (n - N + 2)
    else:
        b = 0.0
    return RiccatiBound(a=a, b=b, beta=math.sqrt(b / a))


def blowup_time(bound: RiccatiBound) -> float | None:
    """Pole time T* of the comparison solution, or None when it never blows up."""
    if bound.H0 is None:
        raise ValueError("blowup_time needs a bound with H0 attached")
    a, b, H0 = bound.a, bound.b, bound.H0
    if b == 0.0:
        return 1.0 / (a * H0) if H0 > 0 else None
    beta = bound.beta
    if H0 <= beta:
        return None
    return math.log((H0 + beta) / (H0 - beta)) / (2.0 * math.sqrt(a * b))


def with_initial(bound: RiccatiBound, H0: float) -> RiccatiBound:
    """Anchor the bound at H(0) = H0 and fill in T_star."""
    anchored = replace(bound, H0=H0, T_star=None)
    return replace(anchored, T_star=blowup_time(anchored))


def comparison_solution(bound: RiccatiBound, t: float) -> float:
    """Exact solution of dH/dt = a H^2 - b with H(0) = H0, evaluated at t < T*.

    b = 0:  H(t) = H0 / (1 - a H0 t)
    b > 0:  H(t) = beta (1+u)/(1-u),  u = u0 exp(2 sqrt(ab) t),
            u0 = (H0-beta)/(H0+beta).
    """
    if bound.H0 is None:
        raise ValueError("comparison_solution needs a bound with H0 attached")
    T = bound.T_star if bound.T_star is not None else blowup_time(bound)
    if T is None:
        raise ValueError(
            f"no finite-time blowup: H0 = {bound.H0} does not exceed "
            f"beta = {bound.beta}"
        )
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if t >= T:
        raise ValueError(f"time {t} is at or past the pole T* = {T}")
    a, b, H0 = bound.a, bound.b, bound.H0
    if b == 0.0:
        return H0 / (1.0 - a * H0 * t)
    beta = bound.beta
    u = (H0 - beta) / (H0 + beta) * math.exp(2.0 * math.sqrt(a * b) * t)
    return beta * (1.0 + u) / (1.0 - u)


@dataclass(frozen=True, eq=False)
class RiccatiSeries:
    """Sampled numeric integration of the comparison ODE."""

    t: np.ndarray
    H: np.ndarray
    diverged: bool  # |H| crossed DIVERGENCE_CAP
    nonfinite: bool  # integration produced NaN/inf (expected near the pole)
    last_time: float


def integrate_riccati_numeric(
    a: float, b: float, H0: float, t_max: float, dt: float
) -> RiccatiSeries:
    """Fourth-order (RK4) integration of dH/dt = a H^2 - b.

    Serves as the independent oracle for the closed forms.  Halts once |H|
    exceeds DIVERGENCE_CAP or a non-finite value appears; the latter is
    reported, not raised, since it is the expected behaviour near the pole.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")
    ts = [0.0]
    hs = [float(H0)]
    t = 0.0
    H = float(H0)
    diverged = False
    nonfinite = False
    while t < t_max - 1e-15 * max(1.0, t_max):
        h = dt if t + dt <= t_max else t_max - t
        k1 = a * H * H - b
        H1 = H + 0.5 * h * k1
        k2 = a * H1 * H1 - b
        H2 = H + 0.5 * h * k2
        k3 = a * H2 * H2 - b
        H3 = H + h * k3
        k4 = a * H3 * H3 - b
        H = H + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t + h
        if not math.isfinite(H):
            nonfinite = True
            break
        ts.append(t)
        hs.append(H)
        if abs(H) > DIVERGENCE_CAP:
            diverged = True
            break
    return RiccatiSeries(
        t=np.array(ts),
        H=np.array(hs),
        diverged=diverged,
        nonfinite=nonfinite,
        last_time=ts[-1],
    )


@dataclass(frozen=True, eq=False)
class EmdenTrajectory:
    """Trajectory of the boundary-point ODE R'' = delta M / R^(N-1)."""

    t: np.ndarray
    radius: np.ndarray
    speed: np.ndarray


def emden_boundary(
    delta: int, M: float, N: int, R0: float, t_max: float, dt: float
) -> EmdenTrajectory:
    """RK4 integration of R'' = delta M / R^(N-1), R(0) = R0, R'(0) = 0.

    For the attractive field the trajectory stops before the radius would
    cross zero.
    """
    if not R0 > 0:
        raise ValueError(f"initial radius must be positive, got {R0}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if M < 0:
        raise ValueError(f"mass constant M must be >= 0, got {M}")

    def acc(r):
        return delta * M / r ** (N - 1)

    ts = [0.0]
    rs = [float(R0)]
    vs = [0.0]
    t, r, v = 0.0, float(R0), 0.0
    while t < t_max - 1e-15 * max(1.0, t_max):
        h = dt if t + dt <= t_max else t_max - t
        k1r, k1v = v, acc(r)
        r1 = r + 0.5 * h * k1r
        if r1 <= 0:
            break
        k2r, k2v = v + 0.5 * h * k1v, acc(r1)
        r2 = r + 0.5 * h * k2r
        if r2 <= 0:
            break
        k3r, k3v = v + 0.5 * h * k2v, acc(r2)
        r3 = r + h * k3r
        if r3 <= 0:
            break
        k4r, k4v = v + h * k3v, acc(r3)
        r_new = r + h / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r)
        v_new = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if r_new <= 0:
            break
        t, r, v = t + h, r_new, v_new
        ts.append(t)
        rs.append(r)
        vs.append(v)
    return EmdenTrajectory(t=np.array(ts), radius=np.array(rs), speed=np.array(vs))
