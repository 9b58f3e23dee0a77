"""Periodic 1-D linear advection with nodal DG on Gauss-Lobatto elements.

u_t + c u_x = 0 on [-1, 1), K equal elements, upwind flux, classic RK4.
The only thing that changes between the two mass modes is which inverse
mass operator is applied to the weak-form residual.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..mass import build_mass_pair
from ..operators import stiffness_matrix
from ..quadrature import gauss_lobatto_nodes, gauss_nodes
from ..transform import interpolation_matrix

DOMAIN_LENGTH = 2.0
CSV_COLUMNS = ("mode", "N", "K", "steps", "l2_error", "linf_error", "conservation_defect", "wall_time_ns")


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class InitialCondition:
    kind: str  # "sine" or "gaussian"
    param: float  # wavenumber m, or width sigma

    @classmethod
    def parse(cls, text: str) -> "InitialCondition":
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if kind not in ("sine", "gaussian"):
            raise ConfigError("initial_condition", f"unknown kind {kind!r}")
        default = 1.0 if kind == "sine" else 0.2
        try:
            param = float(arg) if arg else default
        except ValueError:
            raise ConfigError("initial_condition", f"bad parameter {arg!r}") from None
        return cls(kind, param)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "sine":
            return np.sin(self.param * np.pi * x)
        return np.exp(-((x / self.param) ** 2))

    def __str__(self) -> str:
        return f"{self.kind}:{self.param:g}"


def _wrap(x: np.ndarray) -> np.ndarray:
    return (x + 1.0) % DOMAIN_LENGTH - 1.0


@dataclass(frozen=True)
class AdvectionConfig:
    degree: int = 8
    elements: int = 4
    wave_speed: float = 1.0
    cfl: float = 0.25
    final_time: float = 2.0
    mass_mode: str = "exact"
    initial_condition: InitialCondition = InitialCondition("sine", 1.0)

    def __post_init__(self):
        if isinstance(self.initial_condition, str):
            object.__setattr__(self, "initial_condition", InitialCondition.parse(self.initial_condition))
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ConfigError("degree", f"must be an integer >= 1, got {self.degree!r}")
        if not isinstance(self.elements, int) or self.elements < 1:
            raise ConfigError("elements", f"must be an integer >= 1, got {self.elements!r}")
        if not math.isfinite(self.wave_speed):
            raise ConfigError("wave_speed", "must be finite")
        if not (self.cfl > 0 and math.isfinite(self.cfl)):
            raise ConfigError("cfl", f"must be positive, got {self.cfl!r}")
        if not (self.final_time > 0 and math.isfinite(self.final_time)):
            raise ConfigError("final_time", f"must be positive, got {self.final_time!r}")
        if self.mass_mode not in ("exact", "lumped"):
            raise ConfigError("mass_mode", f"must be 'exact' or 'lumped', got {self.mass_mode!r}")
        ic = self.initial_condition
        if ic.kind == "gaussian" and not ic.param > 0:
            raise ConfigError("initial_condition", "gaussian width must be positive")

    @property
    def element_width(self) -> float:
        return DOMAIN_LENGTH / self.elements

    def time_step(self) -> tuple[float, int]:
        """(dt, steps): dt = cfl h / (|c| N^2), shrunk so steps * dt == final_time."""
        speed = abs(self.wave_speed) or 1.0
        dt_max = self.cfl * self.element_width / (speed * self.degree**2)
        steps = max(1, math.ceil(self.final_time / dt_max - 1e-12))
        return self.final_time / steps, steps


@dataclass
class RunReport:
    l2_error: float
    linf_error: float
    conservation_defect: float
    wall_time_ns: int
    steps: int
    config: AdvectionConfig
    solution: np.ndarray = field(default=None, repr=False)  # final nodal values, (N+1, K)

    def csv_row(self) -> list:
        c = self.config
        return [c.mass_mode, c.degree, c.elements, self.steps,
                self.l2_error, self.linf_error, self.conservation_defect, self.wall_time_ns]

    def as_dict(self) -> dict:
        c = self.config
        return {
            "l2_error": self.l2_error,
            "linf_error": self.linf_error,
            "conservation_defect": self.conservation_defect,
            "wall_time_ns": self.wall_time_ns,
            "steps": self.steps,
            "config": {
                "degree": c.degree, "elements": c.elements, "wave_speed": c.wave_speed,
                "cfl": c.cfl, "final_time": c.final_time, "mass_mode": c.mass_mode,
                "initial_condition": str(c.initial_condition),
            },
        }


class DGAdvection:
    """Semidiscrete operator du/dt = L(u) for nodal values stored as (N+1, K)."""

    def __init__(self, cfg: AdvectionConfig):
        self.cfg = cfg
        self.grid = gauss_lobatto_nodes(cfg.degree)
        self.minv = build_mass_pair(self.grid).inverse_for(cfg.mass_mode)
        self.ST = stiffness_matrix(self.grid).T
        h = cfg.element_width
        self.jac_inv = 2.0 / h
        left = -1.0 + h * np.arange(cfg.elements)
        self.x = left[None, :] + 0.5 * h * (self.grid.nodes[:, None] + 1.0)

    def rhs(self, u: np.ndarray) -> np.ndarray:
        c = self.cfg.wave_speed
        r = c * (self.ST @ u)
        # flux through the right face of each element; left faces wrap
        flux = max(c, 0.0) * u[-1, :] + min(c, 0.0) * np.roll(u[0, :], -1)
        r[-1, :] -= flux
        r[0, :] += np.roll(flux, 1)
        return self.jac_inv * self.minv.apply(r)

    def dense_operator(self) -> np.ndarray:
        """L as a dense matrix on the element-major flattening u[i + e(N+1)]."""
        n = self.grid.size * self.cfg.elements
        shape = (self.grid.size, self.cfg.elements)
        L = np.empty((n, n))
        for col in range(n):
            e = np.zeros(n)
            e[col] = 1.0
            L[:, col] = self.rhs(e.reshape(shape, order="F")).ravel(order="F")
        return L


def _rk4(f, u: np.ndarray, dt: float, steps: int) -> np.ndarray:
    for _ in range(steps):
        k1 = f(u)
        k2 = f(u + 0.5 * dt * k1)
        k3 = f(u + 0.5 * dt * k2)
        k4 = f(u + dt * k3)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return u


def run_advection(cfg: AdvectionConfig) -> RunReport:
    solver = DGAdvection(cfg)
    u0 = cfg.initial_condition(solver.x)
    dt, steps = cfg.time_step()

    t0 = time.perf_counter_ns()
    u = _rk4(solver.rhs, u0, dt, steps)
    wall = time.perf_counter_ns() - t0

    # errors on an independent Gauss rule, mapped to every element
    q = gauss_nodes(cfg.degree + 4)
    interp = interpolation_matrix(solver.grid, q.nodes)
    h = cfg.element_width
    xq = -1.0 + h * np.arange(cfg.elements)[None, :] + 0.5 * h * (q.nodes[:, None] + 1.0)
    uq = interp @ u
    exact = cfg.initial_condition(_wrap(xq - cfg.wave_speed * cfg.final_time))
    err = uq - exact
    wq = 0.5 * h * q.weights[:, None]
    l2 = math.sqrt(float(np.sum(wq * err * err)))
    linf = float(np.max(np.abs(err)))
    mass_defect = abs(float(np.sum(wq * uq)) - float(np.sum(wq * (interp @ u0))))
    return RunReport(l2, linf, mass_defect, wall, steps, cfg, u)
