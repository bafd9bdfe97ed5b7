"""Independent checks of the analytic solutions.

The reference here is deliberately boring: classic fixed-step
fourth-order Runge-Kutta on theta' = omega, omega' = -sin theta.  Its
global error scales like dt^4, so dt = 1e-5 resolves trajectories to
roughly rounding level over the time spans used in the test suite,
making it a trustworthy oracle for everything the series methods claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import Regime
from .resummation import eval_resummed
from .series import eval_poly
from .trajectory import TrajectorySolution, canonical_initial_state, theta_at

__all__ = [
    "ErrorReport",
    "rk4_pendulum",
    "rk4_sample",
    "sup_error",
]


@dataclass(frozen=True)
class ErrorReport:
    """Sup-norm deviation of one solution from the RK4 oracle."""

    energy: float
    method: str
    order: int
    grid_points: int
    sup_error: float
    grid_span: tuple[float, float]


def _rk4_advance(theta: float, omega: float, h: float, steps: int,
                 sin=math.sin) -> tuple[float, float]:
    for _ in range(steps):
        k1t = omega
        k1w = -sin(theta)
        k2t = omega + 0.5 * h * k1w
        k2w = -sin(theta + 0.5 * h * k1t)
        k3t = omega + 0.5 * h * k2w
        k3w = -sin(theta + 0.5 * h * k2t)
        k4t = omega + h * k3w
        k4w = -sin(theta + h * k3t)
        theta += h * (k1t + 2.0 * (k2t + k3t) + k4t) / 6.0
        omega += h * (k1w + 2.0 * (k2w + k3w) + k4w) / 6.0
    return theta, omega


def rk4_pendulum(theta0: float, omega0: float, t_end: float, dt: float,
                 stride: int = 1):
    """Integrate the pendulum to t_end, recording every `stride` steps.

    The step is h = t_end / ceil(t_end / dt) <= dt so the final sample
    lands exactly on t_end.  Returns (times, thetas, omegas) arrays.
    """
    if t_end < 0.0:
        raise ValueError("t_end must be >= 0")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    steps = max(1, math.ceil(t_end / dt)) if t_end > 0.0 else 0
    h = t_end / steps if steps else 0.0
    stride = max(1, int(stride))
    times = [0.0]
    thetas = [theta0]
    omegas = [omega0]
    theta, omega = theta0, omega0
    done = 0
    while done < steps:
        chunk = min(stride, steps - done)
        theta, omega = _rk4_advance(theta, omega, h, chunk)
        done += chunk
        times.append(done * h)
        thetas.append(theta)
        omegas.append(omega)
    return np.array(times), np.array(thetas), np.array(omegas)


def rk4_sample(theta0: float, omega0: float, times, dt: float):
    """RK4 state at each requested time, hitting every sample exactly.

    Each gap between consecutive sorted sample times is covered by
    uniform substeps of size <= dt, so no interpolation ever happens.
    Returns (thetas, omegas) aligned with `times`.
    """
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if ts[0] < 0.0 or np.any(np.diff(ts) < 0.0):
        raise ValueError("times must be sorted and non-negative")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    thetas = np.empty(ts.size)
    omegas = np.empty(ts.size)
    theta, omega = theta0, omega0
    prev = 0.0
    for i, t in enumerate(ts):
        span = t - prev
        if span > 0.0:
            steps = math.ceil(span / dt)
            theta, omega = _rk4_advance(theta, omega, span / steps, steps)
        thetas[i] = theta
        omegas[i] = omega
        prev = t
    return thetas, omegas


def sup_error(sol: TrajectorySolution, upto: int | None = None,
              grid_points: int = 1001, oracle_dt: float = 1e-4,
              span: float | None = None, oracle=None) -> ErrorReport:
    """Max |theta_series - theta_RK4| over an even grid.

    The grid covers [0, T*] unless `span` overrides the endpoint (the
    separatrix has no T*, so there `span` is required).  `upto` evaluates
    a lower-order partial sum of a stored raw or resummed solution,
    letting one high-order build serve a whole truncation sweep.  A
    precomputed `oracle` (thetas on the same grid) skips the RK4 run.
    """
    if span is None:
        span = sol.period_info.T_star
        if not math.isfinite(span):
            raise ValueError("no finite T*; pass an explicit span")
    if grid_points < 2:
        raise ValueError("grid needs at least 2 points")
    if upto is not None and sol.method == "efficient":
        raise ValueError("the two-monomial correction is tied to its own order; "
                         "rebuild instead of truncating")
    grid = np.linspace(0.0, span, grid_points)
    if upto is None:
        approx = theta_at(sol, grid)
    else:
        # partial sums only make sense on the canonical branch
        if span > sol.period_info.T_star * (1.0 + 1e-12):
            raise ValueError("partial-sum evaluation is limited to [0, T*]")
        canonical = _tilde_partial(sol, grid, upto)
        state = sol.energy_state
        if state.regime is Regime.ROTATION:
            approx = canonical if state.direction < 0 else 2.0 * math.pi - canonical
        else:
            approx = canonical if state.direction > 0 else -canonical
    if oracle is None:
        theta0, omega0 = canonical_initial_state(sol)
        oracle, _ = rk4_sample(theta0, omega0, grid, oracle_dt)
    else:
        oracle = np.asarray(oracle, dtype=float)
        if oracle.shape != grid.shape:
            raise ValueError("oracle samples must match the grid")
    sup = float(np.max(np.abs(approx - oracle)))
    return ErrorReport(sol.energy_state.energy, sol.method,
                       upto if upto is not None else sol.order,
                       grid_points, sup, (0.0, float(span)))


def _tilde_partial(sol: TrajectorySolution, grid, upto: int):
    if sol.method == "raw":
        return eval_poly(sol.raw, grid, upto)
    if sol.method == "resummed":
        return eval_resummed(sol.resummed, grid, upto)
    raise ValueError(f"partial sums unavailable for method {sol.method!r}")