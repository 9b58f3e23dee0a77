"""L2 transfer between Gauss-Lobatto grids of different degree (1-D mortars).

Two transfer schemes are provided, selected by ``mass_mode``:

``exact``
    Exact inverse mass on the receiving grid (rank-1 operator) and the
    mixed mass matrix B_ij = int ell_i^recv ell_j^send integrated exactly
    by a Gauss rule. This is the true L2 projection.
``lumped``
    Lumped mass on the receiving grid and B evaluated by the Gauss-Lobatto
    quadrature of the finer of the two grids, i.e. everything done with
    GLL quadrature.

Coarse to fine, both schemes reproduce plain interpolation. Fine to coarse
they differ from interpolation and from each other, but both conserve the
integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .mass import build_mass_pair
from .quadrature import NodeFamily, NodeSet, gauss_lobatto_nodes, gauss_nodes
from .transform import interpolation_matrix

MASS_MODES = ("exact", "lumped")


def _check(grid: NodeSet, role: str) -> None:
    if grid.family is not NodeFamily.GAUSS_LOBATTO or grid.order < 1:
        raise ValueError(f"{role} grid must be Gauss-Lobatto with N >= 1")


def mixed_mass_matrix(receiver: NodeSet, sender: NodeSet) -> np.ndarray:
    """B_ij = int ell_i^receiver ell_j^sender, exact (Gauss rule of order N_r + N_s + 2)."""
    q = gauss_nodes(receiver.order + sender.order + 2)
    Lr = interpolation_matrix(receiver, q.nodes)
    Ls = interpolation_matrix(sender, q.nodes)
    return Lr.T @ (q.weights[:, None] * Ls)


def lobatto_mixed_mass_matrix(receiver: NodeSet, sender: NodeSet) -> np.ndarray:
    """B_ij evaluated with the GLL quadrature of the finer grid."""
    q = receiver if receiver.order >= sender.order else sender
    Lr = interpolation_matrix(receiver, q.nodes)
    Ls = interpolation_matrix(sender, q.nodes)
    return Lr.T @ (q.weights[:, None] * Ls)


def l2_projection_matrix(source: NodeSet, target: NodeSet, mass_mode: str = "exact") -> np.ndarray:
    """P with M_target P = B, mapping nodal values on `source` to `target`."""
    _check(source, "source")
    _check(target, "target")
    if mass_mode == "exact":
        minv = build_mass_pair(target).inverse
        return minv.apply(mixed_mass_matrix(target, source))
    if mass_mode == "lumped":
        return lobatto_mixed_mass_matrix(target, source) / target.weights[:, None]
    raise ValueError(f"mass_mode must be one of {MASS_MODES}, got {mass_mode!r}")


def return_transfer_matrix(mortar: NodeSet, subdomain: NodeSet, mass_mode: str = "exact") -> np.ndarray:
    """Projection from a finer mortar back onto a coarser subdomain."""
    if subdomain.order >= mortar.order:
        raise ValueError("return transfer requires subdomain degree < mortar degree")
    return l2_projection_matrix(mortar, subdomain, mass_mode)


@dataclass(frozen=True, eq=False)
class MortarPair:
    source_grid: NodeSet
    target_grid: NodeSet
    forward: np.ndarray
    backward: np.ndarray
    mass_mode: str = "exact"


def build_mortar_pair(N_s: int, N_t: int, mass_mode: str = "exact") -> MortarPair:
    s, t = gauss_lobatto_nodes(N_s), gauss_lobatto_nodes(N_t)
    return MortarPair(s, t, l2_projection_matrix(s, t, mass_mode), l2_projection_matrix(t, s, mass_mode), mass_mode)


class ProjectionResiduals(NamedTuple):
    exact: float  # max |P_exact - I|
    lumped: float  # max |P_lumped - I|
    lumped_inverse_exact_b: float  # max |diag(1/w) B_exact - I|; nan when N_s == N_t


def verify_projection_equals_interpolation(N_s: int, N_t: int) -> ProjectionResiduals:
    """Compare coarse-to-fine projection with interpolation onto the target nodes.

    The third residual uses the exact mixed mass with the lumped inverse, which
    isolates the claim that the rank-1 correction contributes nothing. It is
    only meaningful for N_s < N_t: at equal degree the exact mixed mass is the
    full mass matrix and lumping it is a genuine approximation.
    """
    if N_t < N_s:
        raise ValueError("coarse-to-fine check needs N_t >= N_s")
    s, t = gauss_lobatto_nodes(N_s), gauss_lobatto_nodes(N_t)
    interp = interpolation_matrix(s, t.nodes)
    r_exact = np.max(np.abs(l2_projection_matrix(s, t, "exact") - interp))
    r_lumped = np.max(np.abs(l2_projection_matrix(s, t, "lumped") - interp))
    if N_s < N_t:
        hybrid = mixed_mass_matrix(t, s) / t.weights[:, None]
        r_hybrid = float(np.max(np.abs(hybrid - interp)))
    else:
        r_hybrid = float("nan")
    return ProjectionResiduals(float(r_exact), float(r_lumped), r_hybrid)


def conservation_defect(transfer: np.ndarray, sender: NodeSet, receiver: NodeSet) -> float:
    """max over unit vectors of |int(transfer v) - int(v)|, integrals exact for nodal polynomials."""
    return float(np.max(np.abs(receiver.weights @ transfer - sender.weights)))
