"""Legendre polynomials, their derivatives and continuous norms on [-1, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LegendreEval:
    degree: int
    value: float
    derivative: float


def _check_degree(k: int) -> None:
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")


def legendre_all(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of P_0..P_n at every point of `x`.

    Returns two arrays of shape ``(n + 1,) + x.shape``. Values use Bonnet's
    recurrence and derivatives the recurrence obtained by differentiating
    it; endpoint derivatives are overwritten with the closed form
    ``k(k+1)/2 * (+-1)^(k+1)``.

    Points outside [-1, 1] are accepted (extrapolation).
    """
    _check_degree(n)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("Legendre evaluation requires finite arguments")
    p = np.empty((n + 1,) + x.shape)
    dp = np.empty_like(p)
    p[0] = 1.0
    dp[0] = 0.0
    if n >= 1:
        p[1] = x
        dp[1] = 1.0
    for k in range(1, n):
        p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1)
        dp[k + 1] = ((2 * k + 1) * (p[k] + x * dp[k]) - k * dp[k - 1]) / (k + 1)
    right = x == 1.0
    left = x == -1.0
    if right.any() or left.any():
        k = np.arange(n + 1).reshape((-1,) + (1,) * x.ndim)
        end = 0.5 * k * (k + 1)
        dp[:] = np.where(right, end, dp)
        dp[:] = np.where(left, end * (-1.0) ** (k + 1), dp)
    return p, dp


def legendre_values(n: int, x) -> np.ndarray:
    """P_n(x) only, streaming the recurrence in O(n) memory."""
    _check_degree(n)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("Legendre evaluation requires finite arguments")
    prev, cur = np.ones_like(x), x.copy()
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur


def legendre_with_derivatives(n: int, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """P_n, P_n' and P_n'' at interior points, streaming in O(n) memory.

    The second derivative comes from Legendre's differential equation, so
    `x` must avoid +-1.
    """
    _check_degree(n)
    x = np.asarray(x, dtype=float)
    p0, p1 = np.ones_like(x), x.copy()
    d0, d1 = np.zeros_like(x), np.ones_like(x)
    if n == 0:
        return p0, d0, np.zeros_like(x)
    for k in range(1, n):
        p0, p1, d0, d1 = (
            p1,
            ((2 * k + 1) * x * p1 - k * p0) / (k + 1),
            d1,
            ((2 * k + 1) * (p1 + x * d1) - k * d0) / (k + 1),
        )
    d2 = (2.0 * x * d1 - n * (n + 1) * p1) / (1.0 - x * x)
    return p1, d1, d2


def legendre(k: int, x: float) -> LegendreEval:
    """Evaluate P_k and P_k' at a single point."""
    if not math.isfinite(x):
        raise ValueError(f"Legendre evaluation requires a finite argument, got {x}")
    p, dp = legendre_all(k, np.float64(x))
    return LegendreEval(k, float(p[k]), float(dp[k]))


def continuous_norm(k: int) -> float:
    """h_k = int_{-1}^{1} P_k(x)^2 dx = 2 / (2k + 1)."""
    _check_degree(k)
    return 2.0 / (2 * k + 1)
