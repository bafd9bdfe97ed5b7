"""Complete elliptic integral of the first kind and pendulum periods.

K(k) enters the period both below the separatrix, T = 4 K(sqrt(E/2)),
and above it, T = 2 sqrt(2/E) K(sqrt(2/E)).  Three evaluation routes are
provided with one contract:

* ``ellipk_agm``       -- arithmetic-geometric mean iteration, converges
                          quadratically; the reference the others are
                          measured against.
* ``ellipk_series``    -- the Maclaurin series in k^2.  Converges for
                          k < 1 but uselessly slowly near 1.
* ``ellipk_resummed``  -- same series with its slow geometric tail summed
                          in closed form through arctanh; the remaining
                          bracketed coefficients decay like 1/(8 n^2), so
                          the truncation error stays O(1/N) even at the
                          logarithmic singularity k -> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import EnergyState, Regime, SeparatrixError

__all__ = [
    "EllipticEval",
    "PeriodInfo",
    "ellipk_agm",
    "ellipk_series",
    "ellipk_resummed",
    "resummed_order_for",
    "ellipk_prime",
    "evaluate_k",
    "period",
]

# Below this modulus arctanh(k)/k is replaced by its own series; the
# direct quotient loses digits to 0/0 cancellation as k -> 0.
_SMALL_K = 1e-4

_MAX_AUTO_ORDER = 4_000_000


@dataclass(frozen=True)
class EllipticEval:
    """One K(k) evaluation together with how it was obtained."""

    modulus: float
    value: float
    method: str


@dataclass(frozen=True)
class PeriodInfo:
    """Full period T and effective period T* of one orbit.

    T* is the span the series solvers actually have to cover: a quarter
    period for libration, a half period for rotation.  Both are +inf on
    the separatrix.
    """

    T: float
    T_star: float
    regime: Regime

    def __post_init__(self):
        if self.regime is not Regime.SEPARATRIX:
            if not (math.isfinite(self.T) and self.T > 0.0):
                raise ValueError(f"period must be positive and finite, got {self.T!r}")


def _check_modulus(k: float) -> float:
    k = float(k)
    if not (0.0 <= k < 1.0):
        raise ValueError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
    return k


def ellipk_agm(k: float) -> float:
    """K(k) by the arithmetic-geometric mean, accurate to rounding."""
    k = _check_modulus(k)
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    # the gap a - b shrinks quadratically until it hits rounding noise,
    # where it may cycle by an ulp forever; stop on any non-decrease
    gap = math.inf
    for _ in range(64):
        new_gap = a - b
        if new_gap <= 0.0 or new_gap >= gap:
            break
        gap = new_gap
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def ellipk_series(k: float, order: int) -> float:
    """Partial sum of K(k) = (pi/2) sum_n beta_n k^(2n) through n = order.

    beta_n = ((2n)! / (2^n n!)^2)^2 is generated by the stable product
    beta_(n+1) = beta_n ((2n+1)/(2n+2))^2, folded with k^2.
    """
    k = float(k)
    order = int(order)
    if k * k >= 1.0:
        raise ValueError(f"series requires k^2 < 1, got k={k!r}")
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return 0.5 * math.pi
    n = np.arange(1.0, order + 1)
    terms = np.cumprod(((2.0 * n - 1.0) / (2.0 * n)) ** 2 * (k * k))
    return 0.5 * math.pi * (1.0 + float(np.sum(terms)))


def _arctanh_over_k(k: float) -> float:
    if abs(k) < _SMALL_K:
        k2 = k * k
        return 1.0 + k2 / 3.0 + k2 * k2 / 5.0
    return math.atanh(k) / k


def ellipk_resummed(k: float, order: int) -> float:
    """Resummed K(k): bracketed series through n = order plus arctanh tail.

    K(k) = sum_n [ (pi/2) beta_n - 1/(2n+1) ] k^(2n)  +  arctanh(k)/k.

    The subtracted geometric-harmonic part carries the entire k -> 1
    divergence into the closed-form arctanh term, leaving brackets of
    size ~ 1/(8 n^2) that converge at the same slow-but-sure rate for
    every modulus below 1.
    """
    k = float(k)
    order = int(order)
    if k * k >= 1.0:
        raise ValueError(f"resummed series requires k^2 < 1, got k={k!r}")
    if order < 0:
        raise ValueError("order must be >= 0")
    total = 0.5 * math.pi - 1.0  # n = 0 bracket
    if order > 0:
        k2 = k * k
        n = np.arange(1.0, order + 1)
        beta_k2n = np.cumprod(((2.0 * n - 1.0) / (2.0 * n)) ** 2 * k2)
        k2n = np.cumprod(np.full(order, k2))
        total += float(np.sum(0.5 * math.pi * beta_k2n - k2n / (2.0 * n + 1.0)))
    return total + _arctanh_over_k(k)


def resummed_order_for(k: float, tol: float = 1e-13) -> int:
    """Truncation order that bounds the resummed-series tail below tol.

    Uses bracket_n <= 1/(4 n^2), so the tail after N is at most
    k^(2(N+1)) / (4 N^2 (1 - k^2)).
    """
    k = float(k)
    if k == 0.0:
        return 0
    if k * k >= 1.0:
        raise ValueError(f"resummed series requires k^2 < 1, got k={k!r}")
    k2 = k * k
    order = 8
    while order <= _MAX_AUTO_ORDER:
        tail = k2 ** (order + 1) / (4.0 * order * order * (1.0 - k2))
        if tail < tol:
            return order
        order *= 2
    raise ValueError(f"modulus {k!r} too close to 1 for tail tolerance {tol:g}")


def ellipk_prime(k: float, method: str = "quadrature", order: int | None = None) -> float:
    """Complementary integral K'(k) = K(sqrt(1 - k^2)) for 0 < k <= 1."""
    k = float(k)
    if not (0.0 < k <= 1.0):
        raise ValueError(f"K' requires 0 < k <= 1, got {k!r} (it diverges as k -> 0)")
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    return evaluate_k(kp, method, order).value


def evaluate_k(k: float, method: str = "quadrature", order: int | None = None) -> EllipticEval:
    """Evaluate K(k) by the requested route, recording the route used."""
    if method == "quadrature":
        if order is not None:
            raise ValueError("quadrature route takes no truncation order")
        return EllipticEval(k, ellipk_agm(k), "quadrature")
    if method == "series":
        if order is None:
            raise ValueError("series route requires a truncation order")
        return EllipticEval(k, ellipk_series(k, order), f"series(order={order})")
    if method == "resummed":
        if order is None:
            order = resummed_order_for(k)
        return EllipticEval(k, ellipk_resummed(k, order), f"resummed(order={order})")
    raise ValueError(f"unknown method {method!r}")


def period(state: EnergyState, method: str = "quadrature",
           order: int | None = None) -> PeriodInfo:
    """Exact period of the orbit with the given energy.

    Libration: T = 4 K(sqrt(E/2)), effective period T* = T/4.
    Rotation:  T = 2 sqrt(2/E) K(sqrt(2/E)), effective period T* = T/2.
    The separatrix has no period; requesting it raises.
    """
    if state.regime is Regime.SEPARATRIX:
        raise SeparatrixError("the separatrix orbit has infinite period")
    if state.regime is Regime.LIBRATION:
        k = math.sqrt(0.5 * state.energy)
        t_full = 4.0 * evaluate_k(k, method, order).value
        return PeriodInfo(t_full, 0.25 * t_full, state.regime)
    k = math.sqrt(2.0 / state.energy)
    t_full = 2.0 * k * evaluate_k(k, method, order).value
    return PeriodInfo(t_full, 0.5 * t_full, state.regime)
