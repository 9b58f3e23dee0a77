"""Nodal <-> modal transforms and cardinal (Lagrange) functions on a NodeSet.

Nodal values and modal coefficients are plain 1-D arrays of length N + 1;
a 2-D array transforms column by column.
"""

from __future__ import annotations

import numpy as np

from .orthopoly import legendre_all
from .quadrature import NodeSet


def vandermonde(grid: NodeSet, x=None) -> np.ndarray:
    """V[i, k] = P_k(x_i), at the grid nodes unless `x` is given."""
    x = grid.nodes if x is None else np.atleast_1d(np.asarray(x, dtype=float))
    p, _ = legendre_all(grid.order, x)
    return p.T


def _check_length(a: np.ndarray, grid: NodeSet, what: str) -> None:
    if a.shape[0] != grid.size:
        raise ValueError(f"{what} has length {a.shape[0]}, grid of order {grid.order} needs {grid.size}")


def modal_to_nodal(b, grid: NodeSet) -> np.ndarray:
    """u_i = sum_k b_k P_k(x_i)."""
    b = np.asarray(b, dtype=float)
    _check_length(b, grid, "modal coefficient vector")
    return vandermonde(grid) @ b


def nodal_to_modal(u, grid: NodeSet) -> np.ndarray:
    """b_k = (1/gamma_k) sum_j w_j P_k(x_j) u_j."""
    u = np.asarray(u, dtype=float)
    _check_length(u, grid, "nodal value vector")
    V = vandermonde(grid)
    proj = V.T @ (grid.weights[:, None] * u.reshape(grid.size, -1))
    return (proj / grid.discrete_norms[:, None]).reshape(u.shape)


def cardinal_eval(j: int, x, grid: NodeSet):
    """ell_j(x) from its Legendre expansion w_j sum_k P_k(x_j) P_k(x) / gamma_k."""
    if not 0 <= j <= grid.order:
        raise IndexError(f"node index {j} outside 0..{grid.order}")
    scalar = np.ndim(x) == 0
    coef = grid.weights[j] * vandermonde(grid, grid.nodes[j])[0] / grid.discrete_norms
    val = vandermonde(grid, x) @ coef
    return float(val[0]) if scalar else val


def cardinal_derivative(j: int, x, grid: NodeSet):
    """ell_j'(x), differentiating the Legendre expansion term by term."""
    if not 0 <= j <= grid.order:
        raise IndexError(f"node index {j} outside 0..{grid.order}")
    scalar = np.ndim(x) == 0
    coef = grid.weights[j] * vandermonde(grid, grid.nodes[j])[0] / grid.discrete_norms
    _, dp = legendre_all(grid.order, np.atleast_1d(np.asarray(x, dtype=float)))
    val = dp.T @ coef
    return float(val[0]) if scalar else val


def cardinal_matrices(grid: NodeSet, x) -> tuple[np.ndarray, np.ndarray]:
    """All cardinal functions and their derivatives at `x` via the expansion.

    Returns (L, dL) with L[i, j] = ell_j(x_i), dL[i, j] = ell_j'(x_i).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p, dp = legendre_all(grid.order, x)
    # C[k, j] = w_j P_k(x_j) / gamma_k
    C = vandermonde(grid).T * grid.weights[None, :] / grid.discrete_norms[:, None]
    return p.T @ C, dp.T @ C


def barycentric_weights(nodes) -> np.ndarray:
    """lambda_j = 1 / prod_{i != j} (x_j - x_i), rescaled to max |lambda| = 1."""
    x = np.asarray(nodes, dtype=float)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    # log-sum keeps large N from overflowing
    logmag = np.sum(np.log(np.abs(diff)), axis=1)
    sign = np.prod(np.sign(diff), axis=1)
    lam = sign * np.exp(-(logmag - logmag.min()))
    return lam / np.max(np.abs(lam))


def lagrange_product(nodes, x) -> np.ndarray:
    """L[i, j] = prod_{m != j} (x_i - x_m) / (x_j - x_m), the literal product form."""
    nodes = np.asarray(nodes, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = len(nodes)
    out = np.ones((len(x), n))
    for j in range(n):
        for m in range(n):
            if m != j:
                out[:, j] *= (x - nodes[m]) / (nodes[j] - nodes[m])
    return out


def interpolation_matrix(source: NodeSet, targets) -> np.ndarray:
    """I[i, j] = ell_j(target_i) for the cardinal functions of `source`.

    Uses the second (true) barycentric formula; a target that coincides with
    a source node gets the exact unit row.
    """
    x = np.atleast_1d(np.asarray(targets, dtype=float))
    nodes = source.nodes
    lam = barycentric_weights(nodes)
    diff = x[:, None] - nodes[None, :]
    hit = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = lam[None, :] / diff
        out = terms / terms.sum(axis=1, keepdims=True)
    rows = hit.any(axis=1)
    out[rows] = hit[rows].astype(float)
    return out
