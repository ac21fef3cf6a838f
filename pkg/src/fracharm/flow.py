"""Nonlocal energy, projected gradient flow towards n/2-harmonic maps into
spheres, and the antisymmetric-potential system of Proposition 1.1."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import manifold, norms, spectral
from .commutators import (
    L,
    frac,
    mul,
    omega_fields,
    op_f_structure,
    op_R_remainder,
    op_T_adjoint,
    riesz_bar,
)
from .errors import StepFailure
from .spectral import PeriodicGrid

MAX_BACKTRACKS = 30


def energy(grid: PeriodicGrid, u) -> float:
    """sum_i ||(-Delta)^{n/4} u_i||_{L^2}^2 evaluated by Plancherel."""
    a = spectral.to_frequency(grid, u) / grid.size
    w = grid.abs_xi**grid.n
    return float((2 * math.pi) ** grid.n * np.sum(w * np.abs(a) ** 2))


def energy_gradient(grid: PeriodicGrid, u) -> np.ndarray:
    """Ambient L^2 gradient 2 (-Delta)^{n/2} u of the energy."""
    return 2.0 * frac(grid, u, grid.n / 2)


def el_residual(grid: PeriodicGrid, u) -> float:
    """max_x |P^T(x) ((-Delta)^{n/2} u)(x)|, the weak Euler-Lagrange defect."""
    PT = manifold.projector_fields(grid, u).PT
    r = manifold.matvec(PT, frac(grid, u, grid.n / 2))
    return float(np.sqrt((r**2).sum(axis=0)).max())


def directional_derivative(grid: PeriodicGrid, u, phi, t: float = 1e-4) -> tuple:
    """(analytic, central difference) derivative of E(Pi(u + t phi)) at t = 0.

    ``phi`` is first projected onto the tangent space; the analytic value is
    ``<2 (-Delta)^{n/2} u, phi>``.
    """
    PT = manifold.projector_fields(grid, u).PT
    phi = manifold.matvec(PT, phi)
    exact = spectral.inner(grid, energy_gradient(grid, u), phi)
    ep = energy(grid, manifold.nearest_projection(grid, u + t * phi))
    em = energy(grid, manifold.nearest_projection(grid, u - t * phi))
    return exact, (ep - em) / (2 * t)


@dataclass(frozen=True)
class FlowConfig:
    """Parameters of a projected gradient-flow run.

    ``tau=None`` selects the default ``0.1 / (N/2)^n``.
    """

    n: int = 1
    N: int = 256
    m: int = 2
    tau: float | None = None
    max_iter: int = 5000
    tol: float = 1e-6
    backtrack: float = 0.5
    seed: int = 0
    amplitude: float = 0.1
    along_x1: bool = False

    def __post_init__(self):
        if self.tau is not None and not self.tau > 0:
            raise ValueError("step size must be positive")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if not 0 < self.backtrack < 1:
            raise ValueError("backtracking factor must lie in (0, 1)")

    @property
    def grid(self) -> PeriodicGrid:
        return PeriodicGrid(self.n, self.N)

    @property
    def step(self) -> float:
        return self.tau if self.tau is not None else 0.1 / (self.N / 2) ** self.n

    def initial_map(self) -> np.ndarray:
        return manifold.perturbed_circle_map(
            self.grid, self.amplitude, self.seed, self.m, along_x1=self.along_x1
        )


@dataclass(frozen=True)
class FlowState:
    u: np.ndarray
    energy: float
    residual: float
    iteration: int = 0
    tau: float = 0.0

    @classmethod
    def start(cls, grid, u, tau):
        return cls(u, energy(grid, u), el_residual(grid, u), 0, tau)


def flow_step(grid: PeriodicGrid, state: FlowState, config: FlowConfig) -> FlowState:
    """u <- Pi(u - tau (-Delta)^{n/2} u), halving tau while the energy rises.

    The reduced step size is carried forward in the returned state.
    """
    lap = frac(grid, state.u, grid.n / 2)
    tau = state.tau
    for _ in range(MAX_BACKTRACKS + 1):
        u_new = manifold.nearest_projection(grid, state.u - tau * lap)
        e_new = energy(grid, u_new)
        if e_new <= state.energy:
            return FlowState(u_new, e_new, el_residual(grid, u_new), state.iteration + 1, tau)
        tau *= config.backtrack
    raise StepFailure(f"energy still increasing after {MAX_BACKTRACKS} backtracks")


def flow_run(config: FlowConfig, u0=None) -> tuple:
    """Iterate until ``el_residual <= tol`` or ``max_iter`` steps.

    Returns ``(final_state, trace)`` with trace rows ``(iter, energy, residual, tau)``.
    """
    grid = config.grid
    u = config.initial_map() if u0 is None else np.asarray(u0, dtype=float)
    state = FlowState.start(grid, u, config.step)
    trace = [(0, state.energy, state.residual, state.tau)]
    while state.residual > config.tol and state.iteration < config.max_iter:
        state = flow_step(grid, state, config)
        trace.append((state.iteration, state.energy, state.residual, state.tau))
    return state, trace


# --------------------------------------------------------------------------
# Potential system
# --------------------------------------------------------------------------

@dataclass
class PotentialSystem:
    """Blocks of (-Delta)^{n/4} v = Omega v + 2 Omega~_1 v + Omega~_2."""

    v: np.ndarray
    Omega: np.ndarray
    Omega_tilde_1: np.ndarray
    Omega_tilde_2: np.ndarray
    Omega_tilde_2_smoothed: np.ndarray
    omega: np.ndarray
    omega1: np.ndarray
    omega2: np.ndarray
    PT: np.ndarray
    PN: np.ndarray
    extras: dict = field(default_factory=dict)

    def antisymmetry_error(self) -> float:
        return float(np.abs(self.Omega + self.Omega.swapaxes(0, 1)).max())


def _blocks(a, b, c, d):
    return np.concatenate([np.concatenate([a, b], axis=1), np.concatenate([c, d], axis=1)], axis=0)


def assemble_system(grid: PeriodicGrid, u) -> PotentialSystem:
    """Assemble v, Omega, Omega~_1, Omega~_2 from Section 3's displays.

    ``Omega~_2 = (T(P^T,u), R(P^T,u) + R-bar (-Delta)^{n/4} f(P^N,u))`` with T the
    adjoint form :func:`op_T_adjoint` (the form for which (euler1) holds).
    """
    proj = manifold.projector_fields(grid, u)
    PT, PN = proj.PT, proj.PN
    w = L(grid, u)
    v = np.concatenate([mul(grid, PT, w), mul(grid, PN, w)])
    om, om1, om2 = omega_fields(grid, PT)
    Omega = 2 * _blocks(-om, om, om, -om)
    Omega_t1 = _blocks(-om1, -(om1 + om2), om1, om1 + om2)
    f = op_f_structure(grid, PN, u)
    top = op_T_adjoint(grid, PT, u)
    bottom = op_R_remainder(grid, PT, u) + L(grid, riesz_bar(grid, f))
    Omega_t2 = np.concatenate([top, bottom])
    smoothed = frac(grid, Omega_t2, -grid.n / 4)
    return PotentialSystem(v, Omega, Omega_t1, Omega_t2, smoothed, om, om1, om2, PT, PN, {"f": f})


def system_residual(grid: PeriodicGrid, sys: PotentialSystem) -> float:
    """L^2 norm of |xi|^{-n/2} applied to L v - Omega v - 2 Omega~_1 v - Omega~_2."""
    r = (
        L(grid, sys.v)
        - mul(grid, sys.Omega, sys.v)
        - 2 * mul(grid, sys.Omega_tilde_1, sys.v)
        - sys.Omega_tilde_2
    )
    return norms.lp_norm(grid, frac(grid, r, -grid.n / 4), 2)
