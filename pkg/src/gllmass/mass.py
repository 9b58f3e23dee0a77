"""Exact Gauss-Lobatto mass matrix and its inverse as diagonal + rank-1 operators.

On a GLL grid the mass matrix M_ij = int ell_i ell_j differs from the lumped
diagonal diag(w) by alpha (w*p_N)(w*p_N)^T, and its inverse differs from
diag(1/w) by beta p_N p_N^T, where p_N is the degree-N Legendre polynomial
sampled at the nodes. Both apply in O(N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthopoly import legendre_values
from .quadrature import NodeFamily, NodeSet, gauss_nodes
from .transform import lagrange_product


class WrongFamilyError(ValueError):
    """A Gauss grid was passed where the Lobatto correction is required."""


@dataclass(frozen=True, eq=False)
class RankOneOperator:
    """diag(d) + c * a a^T, never stored densely."""

    diagonal: np.ndarray
    update: np.ndarray
    scale: float

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        a = np.asarray(self.update, dtype=float)
        if d.shape != a.shape or d.ndim != 1:
            raise ValueError("diagonal and update must be 1-D arrays of equal length")
        d.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "update", a)
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return d*v + (c (a.v)) a. A 2-D `v` is treated as a stack of columns."""
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.dim:
            raise ValueError(f"vector of length {v.shape[0]} applied to operator of size {self.dim}")
        d, a = self.diagonal, self.update
        if v.ndim == 1:
            return d * v + (self.scale * np.dot(a, v)) * a
        return d[:, None] * v + np.outer(a, self.scale * (a @ v))

    __matmul__ = apply

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + self.scale * np.outer(self.update, self.update)


def apply(op: RankOneOperator, v) -> np.ndarray:
    return op.apply(v)


def lobatto_alpha(N: int) -> float:
    """(h_N - gamma_N) / gamma_N^2, with h_N = 2/(2N+1) and gamma_N = 2/N.

    Reduced to -N(N+1) / (2(2N+1)) so the result is a single correctly
    rounded division.
    """
    if N < 1:
        raise ValueError("Lobatto correction needs N >= 1")
    return -(N * (N + 1)) / (2.0 * (2 * N + 1))


def lobatto_beta(N: int) -> float:
    """-(h_N - gamma_N) / (gamma_N h_N), which reduces to (N + 1) / 2."""
    if N < 1:
        raise ValueError("Lobatto correction needs N >= 1")
    return 0.5 * (N + 1)


@dataclass(frozen=True, eq=False)
class MassPair:
    grid: NodeSet
    alpha: float
    beta: float
    exact: RankOneOperator
    inverse: RankOneOperator

    @property
    def lumped(self) -> np.ndarray:
        return self.grid.weights

    @property
    def lumped_inverse(self) -> RankOneOperator:
        return RankOneOperator(1.0 / self.grid.weights, self.inverse.update, 0.0)

    def inverse_for(self, mode: str) -> RankOneOperator:
        """The inverse mass for ``"exact"`` or ``"lumped"``."""
        if mode == "exact":
            return self.inverse
        if mode == "lumped":
            return self.lumped_inverse
        raise ValueError(f"mass mode must be 'exact' or 'lumped', got {mode!r}")

    def mass_for(self, mode: str) -> RankOneOperator:
        if mode == "exact":
            return self.exact
        if mode == "lumped":
            return RankOneOperator(self.grid.weights, self.exact.update, 0.0)
        raise ValueError(f"mass mode must be 'exact' or 'lumped', got {mode!r}")


def build_mass_pair(grid: NodeSet) -> MassPair:
    if grid.family is not NodeFamily.GAUSS_LOBATTO:
        raise WrongFamilyError(
            "Gauss grids need no rank-1 correction: their quadrature already gives the exact, diagonal mass matrix"
        )
    N = grid.order
    if N < 1:
        raise ValueError("Lobatto mass matrix needs N >= 1")
    w = grid.weights
    pn = legendre_values(N, grid.nodes)
    alpha, beta = lobatto_alpha(N), lobatto_beta(N)
    return MassPair(
        grid=grid,
        alpha=alpha,
        beta=beta,
        exact=RankOneOperator(w, w * pn, alpha),
        inverse=RankOneOperator(1.0 / w, pn, beta),
    )


def dense_mass_oracle(grid: NodeSet) -> np.ndarray:
    """M_ij = int ell_i ell_j by an (N+1)-order Gauss rule and the literal product form.

    Shares nothing with the rank-1 formulas; the Gauss rule is exact to degree
    2N + 3 while the integrand has degree 2N.
    """
    if grid.order > 32:
        raise ValueError("dense oracle limited to N <= 32")
    q = gauss_nodes(grid.order + 1)
    L = lagrange_product(grid.nodes, q.nodes)
    return L.T @ (q.weights[:, None] * L)
