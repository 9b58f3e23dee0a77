"""Deterministic text tables for node sets, mass corrections and operator residuals."""

from __future__ import annotations

import math

import numpy as np

from ..mass import build_mass_pair
from ..operators import differentiation_matrix, stiffness_matrix, verify_diffmatrix_identity
from ..quadrature import NodeFamily, make_nodes

SEP = ", "


def fmt_real(x) -> str:
    """Shortest round-trip repr; integral values lose the trailing '.0'."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0.0:
        return "0"
    s = repr(x)
    return s[:-2] if s.endswith(".0") else s


def fmt_row(label: str, values) -> str:
    return SEP.join([label] + [v if isinstance(v, str) else fmt_real(v) for v in values])


def _matrix_rows(label: str, A: np.ndarray) -> list[str]:
    return [fmt_row(label, [str(i)] + [fmt_real(v) for v in row]) for i, row in enumerate(A)]


def emit_tables(N: int, family="gll") -> str:
    """Nodes, weights, gamma_k, alpha, beta, mass matrix, S, D and the identity residuals."""
    if N < 1:
        raise ValueError("tables need N >= 1")
    family = NodeFamily.parse(family)
    grid = make_nodes(family, N)
    lines = [fmt_row("family", [family.value]), fmt_row("N", [str(N)]), "node, index, x, w"]
    for j, (x, w) in enumerate(zip(grid.nodes, grid.weights)):
        lines.append(fmt_row("node", [str(j), fmt_real(x), fmt_real(w)]))
    lines.append(fmt_row("gamma", grid.discrete_norms))
    if family is NodeFamily.GAUSS_LOBATTO:
        pair = build_mass_pair(grid)
        res = verify_diffmatrix_identity(grid)
        lines += [fmt_row("alpha", [pair.alpha]), fmt_row("beta", [pair.beta])]
        lines += _matrix_rows("mass", pair.exact.to_dense())
        lines += _matrix_rows("mass_inverse", pair.inverse.to_dense())
        lines += _matrix_rows("stiffness", stiffness_matrix(grid))
        lines += _matrix_rows("diff", differentiation_matrix(grid))
        lines += [fmt_row("r1", [res.lumped_identity]), fmt_row("r2", [res.annihilation])]
    else:
        lines += [fmt_row("alpha", ["n/a"]), fmt_row("beta", ["n/a"])]
        lines += _matrix_rows("mass", np.diag(grid.weights))
        lines += _matrix_rows("diff", differentiation_matrix(grid))
        lines += [fmt_row("r1", ["n/a"]), fmt_row("r2", ["n/a"])]
    return "\n".join(lines) + "\n"
