"""Formal power series in time: containers and coefficient recurrences.

A series is stored as the coefficient vector (a_0, ..., a_N) of
sum_n a_n t^n.  All arithmetic is double precision.  The nonlinear
recurrences below (exp, sin/cos, and the pendulum solution itself)
cost O(N^2) total via running Cauchy-product sums; each new order is
one dot product of previously computed coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SeriesCoefficients",
    "cauchy_product",
    "eval_poly",
    "exp_of_series",
    "sincos_of_series",
    "pendulum_series",
]


@dataclass(frozen=True, eq=False)
class SeriesCoefficients:
    """Truncated Taylor coefficients (a_0, ..., a_N) of a real series."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must form a non-empty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite coefficient encountered")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:  # keep reprs short for large N
        n = self.truncation_order
        if n <= 6:
            return f"SeriesCoefficients({self.coeffs.tolist()})"
        head = ", ".join(f"{c:g}" for c in self.coeffs[:3])
        return f"SeriesCoefficients([{head}, ...], N={n})"


def _as01(x) -> np.ndarray:
    if isinstance(x, SeriesCoefficients):
        return x.coeffs
    return np.asarray(x, dtype=float)


def _dot(u: np.ndarray, v: np.ndarray, compensated: bool) -> float:
    # compensated mode trades speed for exactly-rounded accumulation;
    # useful when sweeping truncation orders past a few hundred.
    if compensated:
        return math.fsum((u * v).tolist())
    return float(np.dot(u, v))


def cauchy_product(a, b, order: int | None = None) -> SeriesCoefficients:
    """Coefficients of the product series, truncated at `order`."""
    ca, cb = _as01(a), _as01(b)
    if order is None:
        order = min(ca.size, cb.size) - 1
    if order >= min(ca.size, cb.size):
        raise ValueError("factors carry too few coefficients for requested order")
    out = np.empty(order + 1)
    for n in range(order + 1):
        out[n] = np.dot(ca[: n + 1], cb[n::-1])
    return SeriesCoefficients(out)


def eval_poly(a, t, upto: int | None = None):
    """Horner evaluation of the truncated series at t (scalar or array).

    `upto` evaluates the partial sum through order `upto`; by default the
    whole stored series is used.
    """
    c = _as01(a)
    n = c.size - 1 if upto is None else int(upto)
    if n < 0 or n > c.size - 1:
        raise ValueError(f"upto={upto} outside stored orders 0..{c.size - 1}")
    t = np.asarray(t, dtype=float)
    acc = np.full_like(t, c[n])
    for k in range(n - 1, -1, -1):
        acc = acc * t + c[k]
    if acc.ndim == 0:
        return float(acc)
    return acc


def exp_of_series(a, order: int | None = None, *, compensated: bool = False) -> SeriesCoefficients:
    """Taylor coefficients of exp(A(t)) given those of A(t).

    Differentiating exp(A) = B gives B' = A'B, hence
        b_{n+1} = (1/(n+1)) sum_{k=0}^{n} (k+1) a_{k+1} b_{n-k},
    seeded with b_0 = exp(a_0).
    """
    ca = _as01(a)
    n_max = ca.size - 1 if order is None else int(order)
    if n_max > ca.size - 1:
        raise ValueError("input carries too few coefficients for requested order")
    try:
        b0 = math.exp(ca[0])
    except OverflowError as exc:
        raise OverflowError(f"exp of constant term {ca[0]!r} overflows") from exc
    b = np.empty(n_max + 1)
    b[0] = b0
    d = np.arange(1.0, n_max + 1) * ca[1 : n_max + 1]  # d_k = (k+1) a_{k+1}
    for m in range(1, n_max + 1):
        b[m] = _dot(d[:m], b[m - 1 :: -1], compensated) / m
    return SeriesCoefficients(b)


def sincos_of_series(a, order: int | None = None, *, compensated: bool = False):
    """Taylor coefficients of sin(A(t)) and cos(A(t)), as a pair.

    The pair obeys the coupled recurrences obtained from
    (sin A)' = A' cos A and (cos A)' = -A' sin A:

        s_{n+1} =  (1/(n+1)) sum_{k=0}^{n} (k+1) a_{k+1} c_{n-k}
        c_{n+1} = -(1/(n+1)) sum_{k=0}^{n} (k+1) a_{k+1} s_{n-k}

    with s_0 = sin a_0, c_0 = cos a_0.
    """
    ca = _as01(a)
    n_max = ca.size - 1 if order is None else int(order)
    if n_max > ca.size - 1:
        raise ValueError("input carries too few coefficients for requested order")
    s = np.empty(n_max + 1)
    c = np.empty(n_max + 1)
    s[0] = math.sin(ca[0])
    c[0] = math.cos(ca[0])
    d = np.arange(1.0, n_max + 1) * ca[1 : n_max + 1]
    for m in range(1, n_max + 1):
        s[m] = _dot(d[:m], c[m - 1 :: -1], compensated) / m
        c[m] = -_dot(d[:m], s[m - 1 :: -1], compensated) / m
    return SeriesCoefficients(s), SeriesCoefficients(c)


def pendulum_series(theta0: float, omega0: float, order: int,
                    *, compensated: bool = False) -> SeriesCoefficients:
    """Taylor coefficients of the pendulum angle theta(t) about t = 0.

    Solves theta'' = -sin(theta), theta(0) = theta0, theta'(0) = omega0,
    order by order.  The sine of the unknown series is generated alongside
    it with the sin/cos recurrences, so

        a_{n+2} = -s_n / ((n+1)(n+2)),

    and every order is closed: s_{n+1}, c_{n+1} only need a up to n+1.
    """
    order = int(order)
    if order < 2:
        raise ValueError("order must be at least 2 to feed the recurrence")
    a = np.zeros(order + 1)
    a[0] = theta0
    a[1] = omega0
    s = np.zeros(order - 1)
    c = np.zeros(order - 1)
    s[0] = math.sin(theta0)
    c[0] = math.cos(theta0)
    d = np.zeros(order)  # d_k = (k+1) a_{k+1}
    for n in range(order - 1):
        a[n + 2] = -s[n] / ((n + 1) * (n + 2))
        m = n + 1
        if m <= order - 2:
            d[n] = m * a[m]
            s[m] = _dot(d[:m], c[m - 1 :: -1], compensated) / m
            c[m] = -_dot(d[:m], s[m - 1 :: -1], compensated) / m
    return SeriesCoefficients(a)
