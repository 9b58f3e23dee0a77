"""Named residual checks shared by the ``verify`` and ``mortar`` commands."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..mass import build_mass_pair, dense_mass_oracle
from ..mortar import (
    conservation_defect,
    l2_projection_matrix,
    verify_projection_equals_interpolation,
)
from ..operators import sbp_residual, verify_diffmatrix_identity
from ..orthopoly import continuous_norm, legendre_values
from ..quadrature import NodeFamily, NodeSet, discrete_norms, gauss_lobatto_nodes, gauss_nodes
from ..transform import interpolation_matrix

CHECK_COLUMNS = ("check", "value", "tolerance", "status")


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    # "le": value <= tolerance; "gt": value > tolerance
    kind: str = "le"

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.value <= self.tolerance if self.kind == "le" else self.value > self.tolerance

    def csv_row(self) -> list:
        return [self.name, self.value, self.tolerance, "pass" if self.passed else "FAIL"]


def exactness_sweep(grid: NodeSet) -> tuple[float, float]:
    """(worst error over m <= exactness degree, error at the next even degree)."""
    x, w = grid.nodes, grid.weights
    deg = grid.exactness_degree

    def err(m):
        exact = 2.0 / (m + 1) if m % 2 == 0 else 0.0
        return abs(float(np.dot(w, x**m)) - exact)

    worst = max(err(m) for m in range(deg + 1))
    nxt = deg + 1 if (deg + 1) % 2 == 0 else deg + 2
    return worst, err(nxt)


def mass_checks(N: int, seed: int = 0) -> list[Check]:
    grid = gauss_lobatto_nodes(N)
    pair = build_mass_pair(grid)
    M, Minv = pair.exact.to_dense(), pair.inverse.to_dense()
    n = grid.size
    checks = []
    if N <= 32:
        checks.append(Check("mass_vs_oracle", float(np.max(np.abs(dense_mass_oracle(grid) - M))), 1e-12))
    checks.append(Check("mass_times_inverse", float(np.max(np.abs(M @ Minv - np.eye(n)))), 1e-10))
    V = np.random.default_rng(seed).standard_normal((n, 100))
    rt = pair.inverse.apply(pair.exact.apply(V))
    checks.append(Check("inverse_roundtrip", float(np.max(np.abs(rt - V))), 1e-10))

    h, g = continuous_norm(N), float(discrete_norms(grid)[N])
    alpha_sum = (h - g) / g**2
    beta_sum = -(h - g) / (g * h)
    checks.append(Check("alpha_vs_discrete_gamma", abs(pair.alpha - alpha_sum), 1e-13 * max(1.0, abs(pair.alpha))))
    checks.append(Check("beta_vs_discrete_gamma", abs(pair.beta - beta_sum), 1e-13 * max(1.0, abs(pair.beta))))

    pn = legendre_values(N, grid.nodes)
    filtered = pair.exact.apply(pn)
    expected = grid.weights * pn * (h / (2.0 / N))
    checks.append(Check("modal_filter", float(np.max(np.abs(filtered - expected))), 1e-12 * max(1.0, N)))
    return checks


def gamma_checks(N: int) -> list[Check]:
    out = []
    for fam, grid in ((NodeFamily.GAUSS_LOBATTO, gauss_lobatto_nodes(N)), (NodeFamily.GAUSS, gauss_nodes(N))):
        closed = np.array([continuous_norm(k) for k in range(N + 1)])
        if fam is NodeFamily.GAUSS_LOBATTO:
            closed[N] = 2.0 / N
        out.append(Check(f"gamma_{fam.value}", float(np.max(np.abs(discrete_norms(grid) - closed))), 1e-13))
    return out


def quadrature_checks(N: int) -> list[Check]:
    out = []
    for fam, grid in (("gll", gauss_lobatto_nodes(N)), ("gauss", gauss_nodes(N))):
        worst, nxt = exactness_sweep(grid)
        out.append(Check(f"exactness_{fam}", worst, 1e-12))
        out.append(Check(f"next_degree_defect_{fam}", nxt, 1e-12, kind="gt"))
    return out


def operator_checks(N: int) -> list[Check]:
    grid = gauss_lobatto_nodes(N)
    r = verify_diffmatrix_identity(grid)
    return [
        Check("lumped_inverse_identity", r.lumped_identity, 1e-11),
        Check("rank1_annihilation", r.annihilation, 1e-11),
        Check("summation_by_parts", sbp_residual(grid), 1e-12),
    ]


def verify_checks(N: int) -> list[Check]:
    return gamma_checks(N) + quadrature_checks(N) + mass_checks(N) + operator_checks(N)


def mortar_checks(N_s: int, N_t: int) -> list[Check]:
    s, t = gauss_lobatto_nodes(N_s), gauss_lobatto_nodes(N_t)
    res = verify_projection_equals_interpolation(N_s, N_t)
    checks = [
        Check("forward_exact_vs_interp", res.exact, 1e-11),
        Check("forward_lumped_vs_interp", res.lumped, 1e-11),
    ]
    if N_s < N_t:
        checks.append(Check("forward_hybrid_vs_interp", res.lumped_inverse_exact_b, 1e-11))
    fwd = l2_projection_matrix(s, t, "exact")
    for mode in ("exact", "lumped"):
        back = l2_projection_matrix(t, s, mode)
        checks.append(Check(f"backward_{mode}_conservation", conservation_defect(back, t, s), 1e-11))
        roundtrip = float(np.max(np.abs(back @ l2_projection_matrix(s, t, mode) - np.eye(s.size))))
        # lumped mass on the coarse side is not exact for degree 2 N_s, so only report it
        checks.append(Check(f"backward_{mode}_roundtrip", roundtrip, 1e-11 if mode == "exact" else math.inf))
    back = l2_projection_matrix(t, s, "exact")
    Ms, Mt = build_mass_pair(s).exact.to_dense(), build_mass_pair(t).exact.to_dense()
    checks.append(Check("backward_adjoint", float(np.max(np.abs(Ms @ back - fwd.T @ Mt))), 1e-11))
    if N_s < N_t:
        interp_back = interpolation_matrix(t, s.nodes)
        checks.append(Check("backward_differs_from_interp", float(np.max(np.abs(back - interp_back))), 1e-3, kind="gt"))
        # reported, not required: interpolation generally does not conserve
        checks.append(Check("interp_back_conservation_defect", conservation_defect(interp_back, t, s), math.inf))
    return checks
