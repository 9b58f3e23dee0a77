"""Gauss-Legendre and Gauss-Legendre-Lobatto rules on [-1, 1].

Throughout, ``N`` is the polynomial degree: a rule of order N has N + 1 nodes.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field

import numpy as np

from .orthopoly import continuous_norm, legendre_values, legendre_with_derivatives

NEWTON_TOL = 1e-15
NEWTON_MAXITER = 100


class ConvergenceError(RuntimeError):
    """Newton iteration for quadrature nodes did not converge."""


class NodeFamily(enum.Enum):
    GAUSS = "gauss"
    GAUSS_LOBATTO = "gll"

    def exactness_degree(self, n: int) -> int:
        return 2 * n + 1 if self is NodeFamily.GAUSS else 2 * n - 1

    @classmethod
    def parse(cls, s: "str | NodeFamily") -> "NodeFamily":
        if isinstance(s, cls):
            return s
        key = s.strip().lower()
        aliases = {"gauss": cls.GAUSS, "gl": cls.GAUSS, "gll": cls.GAUSS_LOBATTO,
                   "lobatto": cls.GAUSS_LOBATTO, "gauss-lobatto": cls.GAUSS_LOBATTO}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown node family {s!r}") from None


@dataclass(frozen=True, eq=False)
class NodeSet:
    """A quadrature rule of order N together with its discrete norms gamma_k."""

    family: NodeFamily
    order: int
    nodes: np.ndarray
    weights: np.ndarray
    discrete_norms: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("nodes", "weights", "discrete_norms"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (len(self.nodes) == len(self.weights) == len(self.discrete_norms) == self.order + 1):
            raise ValueError("nodes, weights and norms must each have order + 1 entries")

    @property
    def size(self) -> int:
        return self.order + 1

    @property
    def exactness_degree(self) -> int:
        return self.family.exactness_degree(self.order)

    def to_table(self) -> str:
        """Plain-text table ``index, x, w``, one row per node, round-trip precision."""
        buf = io.StringIO()
        buf.write("index, x, w\n")
        for j, (x, w) in enumerate(zip(self.nodes, self.weights)):
            buf.write(f"{j}, {float(x)!r}, {float(w)!r}\n")
        return buf.getvalue()


def _newton(f_step, x0: np.ndarray) -> np.ndarray:
    x = x0.copy()
    for _ in range(NEWTON_MAXITER):
        dx = f_step(x)
        x -= dx
        if np.max(np.abs(dx), initial=0.0) <= NEWTON_TOL:
            return x
    raise ConvergenceError(f"Newton iteration did not converge for {len(x0)} nodes")


def _symmetrize(x: np.ndarray) -> np.ndarray:
    x = 0.5 * (x - x[::-1])
    if len(x) % 2 == 1:
        x[len(x) // 2] = 0.0
    return x


def _closed_form_norms(family: NodeFamily, n: int) -> np.ndarray:
    gam = np.array([continuous_norm(k) for k in range(n + 1)])
    if family is NodeFamily.GAUSS_LOBATTO:
        gam[n] = 2.0 / n
    return gam


def gauss_nodes(N: int) -> NodeSet:
    """Gauss-Legendre rule: the N + 1 roots of P_{N+1}."""
    if N < 0:
        raise ValueError(f"Gauss order must be >= 0, got {N}")
    m = N + 1
    x0 = -np.cos(np.pi * (2 * np.arange(m) + 1) / (2 * m))

    def step(x):
        p, dp, _ = legendre_with_derivatives(m, x)
        return p / dp

    x = _symmetrize(_newton(step, x0))
    _, dp, _ = legendre_with_derivatives(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    w = 0.5 * (w + w[::-1])
    return NodeSet(NodeFamily.GAUSS, N, x, w, _closed_form_norms(NodeFamily.GAUSS, N))


def gauss_lobatto_nodes(N: int) -> NodeSet:
    """Gauss-Legendre-Lobatto rule: +-1 and the N - 1 roots of P_N'."""
    if N < 1:
        raise ValueError(f"Gauss-Lobatto order must be >= 1, got {N}")
    x = np.empty(N + 1)
    x[0], x[-1] = -1.0, 1.0
    if N >= 2:
        x0 = -np.cos(np.pi * np.arange(1, N) / N)

        def step(t):
            _, dp, d2p = legendre_with_derivatives(N, t)
            return dp / d2p

        x[1:-1] = _newton(step, x0)
        x = _symmetrize(x)
        x[0], x[-1] = -1.0, 1.0
    pn = legendre_values(N, x)
    w = 2.0 / (N * (N + 1) * pn * pn)
    w = 0.5 * (w + w[::-1])
    return NodeSet(NodeFamily.GAUSS_LOBATTO, N, x, w,
                   _closed_form_norms(NodeFamily.GAUSS_LOBATTO, N))


def make_nodes(family: "NodeFamily | str", N: int) -> NodeSet:
    family = NodeFamily.parse(family)
    return gauss_nodes(N) if family is NodeFamily.GAUSS else gauss_lobatto_nodes(N)


def discrete_norms(grid: NodeSet) -> np.ndarray:
    """gamma_k = sum_j w_j P_k(x_j)^2 for k = 0..N, computed from the rule itself."""
    x, w = grid.nodes, grid.weights
    out = np.empty(grid.size)
    prev, cur = np.ones_like(x), x.copy()
    out[0] = np.sum(w)
    if grid.order >= 1:
        out[1] = np.dot(w, cur * cur)
    for k in range(1, grid.order):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
        out[k + 1] = np.dot(w, cur * cur)
    return out


def integrate(f, grid: NodeSet) -> float:
    """sum_j w_j f(x_j). `f` is called once with the node array."""
    vals = np.asarray(f(grid.nodes), dtype=float)
    if vals.ndim == 0:
        vals = np.full(grid.size, float(vals))
    return float(np.dot(grid.weights, vals))
