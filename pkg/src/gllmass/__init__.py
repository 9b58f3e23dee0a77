"""Exact Gauss-Lobatto mass matrices as diagonal plus rank-1 operators."""

from .mass import MassPair, RankOneOperator, apply, build_mass_pair, dense_mass_oracle
from .orthopoly import LegendreEval, continuous_norm, legendre
from .quadrature import NodeFamily, NodeSet, discrete_norms, gauss_lobatto_nodes, gauss_nodes, integrate
from .transform import cardinal_eval, interpolation_matrix, modal_to_nodal, nodal_to_modal

__version__ = "0.1.0"

__all__ = [
    "LegendreEval", "legendre", "continuous_norm",
    "NodeFamily", "NodeSet", "gauss_nodes", "gauss_lobatto_nodes", "discrete_norms", "integrate",
    "modal_to_nodal", "nodal_to_modal", "cardinal_eval", "interpolation_matrix",
    "RankOneOperator", "MassPair", "apply", "build_mass_pair", "dense_mass_oracle",
]
