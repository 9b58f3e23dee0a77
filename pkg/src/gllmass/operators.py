"""Stiffness and differentiation matrices and the lumped-inverse identity D = M^-1 S."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .orthopoly import legendre_values
from .quadrature import NodeFamily, NodeSet
from .transform import barycentric_weights, cardinal_matrices


class IdentityResiduals(NamedTuple):
    lumped_identity: float  # max |diag(1/w) S - D|
    annihilation: float  # max_k |sum_j p_N(x_j) w_j ell_k'(x_j)|


def _require_lobatto(grid: NodeSet) -> None:
    if grid.family is not NodeFamily.GAUSS_LOBATTO or grid.order < 1:
        raise ValueError("a Gauss-Lobatto grid with N >= 1 is required")


def stiffness_matrix(grid: NodeSet) -> np.ndarray:
    """S_jk = int ell_j ell_k' = w_j ell_k'(x_j).

    The derivatives come from the Legendre expansion of the cardinal
    functions, not from the barycentric differentiation matrix.
    """
    _require_lobatto(grid)
    _, dL = cardinal_matrices(grid, grid.nodes)
    return grid.weights[:, None] * dL


def differentiation_matrix(grid: NodeSet) -> np.ndarray:
    """D_ij = ell_j'(x_i) from barycentric weights; diagonal by negative row sums."""
    if grid.order < 1:
        raise ValueError("differentiation needs N >= 1")
    x = grid.nodes
    lam = barycentric_weights(x)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (lam[None, :] / lam[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def boundary_matrix(n: int) -> np.ndarray:
    """diag(-1, 0, ..., 0, 1) of size n."""
    B = np.zeros((n, n))
    B[0, 0], B[-1, -1] = -1.0, 1.0
    return B


def sbp_residual(grid: NodeSet) -> float:
    """max |S + S^T - B|."""
    S = stiffness_matrix(grid)
    return float(np.max(np.abs(S + S.T - boundary_matrix(grid.size))))


def verify_diffmatrix_identity(grid: NodeSet) -> IdentityResiduals:
    """Residuals showing the lumped inverse mass already gives the exact D.

    The first is the identity itself; the second is the quadrature inner
    product <p_N, ell_k'> that kills the rank-1 part of the exact inverse.
    """
    _require_lobatto(grid)
    S = stiffness_matrix(grid)
    D = differentiation_matrix(grid)
    r1 = np.max(np.abs(S / grid.weights[:, None] - D))
    pn = legendre_values(grid.order, grid.nodes)
    r2 = np.max(np.abs(pn @ S))
    return IdentityResiduals(float(r1), float(r2))
