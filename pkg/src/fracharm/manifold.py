"""Sphere-valued maps on the grid, their projector fields and residuals.

A map into S^{m-1} is an array of shape ``(m, *grid.shape)`` with unit length at
every grid point; matrix fields have shape ``(m, m, *grid.shape)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import DimensionMismatch, NearZeroVector
from .spectral import PeriodicGrid, check_same_grid

MAP_TOL = 1e-9
NEAR_ZERO = 1e-6


@dataclass(frozen=True)
class SphereTarget:
    """Round unit sphere S^{m-1} in R^m: k = m - 1, normal spanned by the point."""

    m: int

    def __post_init__(self):
        if not 2 <= self.m <= 8:
            raise DimensionMismatch("sphere targets need 2 <= m <= 8")

    @property
    def k(self) -> int:
        return self.m - 1

    def project(self, grid, w):
        return nearest_projection(grid, w)

    def normal_projector(self, grid, u):
        return np.einsum("i...,j...->ij...", u, u)


@dataclass(frozen=True)
class ProjectorField:
    """Pointwise tangent and normal projectors along a map."""

    PT: np.ndarray
    PN: np.ndarray

    def invariant_errors(self) -> dict:
        PT, PN = self.PT, self.PN
        m = PT.shape[0]
        eye = np.eye(m).reshape((m, m) + (1,) * (PT.ndim - 2))
        mm = lambda a, b: np.einsum("ij...,jk...->ik...", a, b)
        return {
            "symmetry": float(max(np.abs(PT - PT.swapaxes(0, 1)).max(), np.abs(PN - PN.swapaxes(0, 1)).max())),
            "idempotence": float(max(np.abs(mm(PT, PT) - PT).max(), np.abs(mm(PN, PN) - PN).max())),
            "complement": float(np.abs(PT + PN - eye).max()),
            "orthogonality": float(np.abs(mm(PN, PT)).max()),
        }


def check_map(grid: PeriodicGrid, u, tol: float = MAP_TOL) -> None:
    check_same_grid(grid, u)
    dev = np.abs(np.sqrt((np.asarray(u) ** 2).sum(axis=0)) - 1.0).max()
    if dev > tol:
        raise ValueError(f"not a sphere map: | |u| - 1 | reaches {dev:.2e}")


def nearest_projection(grid: PeriodicGrid, w) -> np.ndarray:
    """Pi_N(w) = w / |w| pointwise."""
    w = np.asarray(w, dtype=float)
    check_same_grid(grid, w)
    r = np.sqrt((w**2).sum(axis=0))
    if r.min() < NEAR_ZERO:
        raise NearZeroVector(f"|w| drops to {r.min():.2e}; projection undefined")
    return w / r


def projector_fields(grid: PeriodicGrid, u) -> ProjectorField:
    """P^N = u u^T and P^T = Id - u u^T."""
    u = np.asarray(u, dtype=float)
    check_same_grid(grid, u)
    m = u.shape[0]
    PN = np.einsum("i...,j...->ij...", u, u)
    eye = np.eye(m).reshape((m, m) + (1,) * grid.n)
    return ProjectorField(PT=eye - PN, PN=PN)


def gauss_map(grid: PeriodicGrid, u) -> np.ndarray:
    """Unit normal 1-vector field; for the sphere this is u itself."""
    check_same_grid(grid, u)
    return np.array(u, dtype=float)


def matvec(A, v) -> np.ndarray:
    """Pointwise matrix-vector product of fields."""
    return np.einsum("ij...,j...->i...", A, v)


def matmul(A, B) -> np.ndarray:
    return np.einsum("ij...,jk...->ik...", A, B)


def tangency_residual(grid: PeriodicGrid, u) -> float:
    """max over x and k of |P^N(x) d_k u(x)|."""
    PN = projector_fields(grid, u).PN
    grad = spectral.gradient(grid, u)
    worst = 0.0
    for k in range(grid.n):
        r = matvec(PN, grad[k])
        worst = max(worst, float(np.sqrt((r**2).sum(axis=0)).max()))
    return worst


def wedge_residual(grid: PeriodicGrid, u) -> float:
    """max over x of |(-Delta)^{n/2} u ^ nu(u)|, the norm of a 2-vector.

    The 2-vector of 1-vectors a, b has coefficients ``a_i b_j - a_j b_i`` on
    ``eps_i ^ eps_j`` (i < j); they are formed directly to avoid cancellation.
    """
    a = spectral.fractional_laplacian(grid, u, grid.n / 2)
    nu = gauss_map(grid, u)
    m = a.shape[0]
    sq = np.zeros(grid.shape)
    for i in range(m):
        for j in range(i + 1, m):
            sq += (a[i] * nu[j] - a[j] * nu[i]) ** 2
    return float(np.sqrt(sq).max())


def circle_map(grid: PeriodicGrid, m: int = 2) -> np.ndarray:
    """u(x) = (cos x_1, sin x_1, 0, ..., 0)."""
    x1 = grid.coordinates()[0]
    u = np.zeros((m,) + grid.shape)
    u[0], u[1] = np.cos(x1), np.sin(x1)
    return u


def perturbed_circle_map(grid: PeriodicGrid, amplitude: float = 0.1, seed: int = 0,
                         m: int = 2, s: float = 3.0, along_x1: bool = False) -> np.ndarray:
    """Circle map pushed along its tangent by a smooth random field.

    ``u = Pi(c + amplitude * g * t)`` with ``c`` the circle map, ``t`` its unit
    tangent ``(-sin x_1, cos x_1)`` and ``g`` a Gaussian random field of
    regularity ``s`` scaled to ``max |g| = 1``.  With ``along_x1`` the field g
    depends on x_1 only (drawn on the 1-D grid and broadcast).
    """
    c = circle_map(grid, m)
    if along_x1 and grid.n > 1:
        g1 = spectral.gaussian_random_field(PeriodicGrid(1, grid.N), s, seed)
        g = np.broadcast_to(g1.reshape((grid.N,) + (1,) * (grid.n - 1)), grid.shape)
    else:
        g = spectral.gaussian_random_field(grid, s, seed)
    g = g / np.abs(g).max()
    t = np.zeros_like(c)
    t[0], t[1] = -c[1], c[0]
    return nearest_projection(grid, c + amplitude * g * t)


def random_sphere_map(grid: PeriodicGrid, m: int, seed: int, s: float | None = None,
                      amplitude: float = 0.5) -> np.ndarray:
    """Pi(e_m + amplitude * g / max|g|) with g an R^m-valued random field.

    Component ``i`` of g uses seed ``1000 * seed + i``; the default regularity
    is ``s = n/2``.
    """
    if s is None:
        s = grid.n / 2
    g = np.stack([spectral.gaussian_random_field(grid, s, 1000 * seed + i) for i in range(m)])
    g = g / np.sqrt((g**2).sum(axis=0)).max()
    w = amplitude * g
    w[m - 1] += 1.0
    return nearest_projection(grid, w)


def kink_profile(x) -> np.ndarray:
    """sum_{k>=1} cos(k x) / k^4 in closed form: a C^2 periodic function.

    On ``[0, 2 pi]`` it equals ``pi^4/90 - pi^2 x^2/12 + pi x^3/12 - x^4/48``;
    its third derivative jumps at ``x = 0``, so Fourier coefficients decay like
    ``k^{-4}`` and spectral first derivatives converge at order ``h^2``.
    """
    x = np.mod(np.asarray(x, dtype=float), 2 * np.pi)
    return np.pi**4 / 90 - np.pi**2 * x**2 / 12 + np.pi * x**3 / 12 - x**4 / 48


def kinked_sphere_map(grid: PeriodicGrid, m: int = 3, seed: int = 0, amplitude: float = 0.5) -> np.ndarray:
    """Sphere map of finite smoothness, defined independently of the grid.

    ``w = e_m + amplitude * g / G`` with
    ``g_i(x) = sum_d c_{id} kink_profile(x_d - s_{id})``, random ``c`` and
    shifts ``s`` from ``seed``, and ``G >= max|g|`` the bound obtained from
    ``|kink_profile| <= pi^4/90``, so the same map is sampled at every grid.
    """
    rng = np.random.default_rng([int(seed), 77])
    c = rng.standard_normal((m, grid.n))
    s = rng.uniform(0, 2 * np.pi, (m, grid.n))
    coords = grid.coordinates()
    g = np.stack([
        sum(c[i, d] * kink_profile(coords[d] - s[i, d]) for d in range(grid.n)) for i in range(m)
    ])
    bound = np.sqrt(((np.abs(c).sum(axis=1) * np.pi**4 / 90) ** 2).sum())
    w = amplitude * g / bound
    w[m - 1] += 1.0
    return nearest_projection(grid, w)
