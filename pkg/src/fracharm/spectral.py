"""Periodic grids and Fourier-multiplier calculus on the torus [0, 2pi)^n.

Fields are plain ``numpy`` arrays whose trailing ``n`` axes are the grid axes
(row-major, ``x_k = 2 pi i_k / N``).  Any leading axes are component axes, so a
map into R^m has shape ``(m, N, ..., N)`` and a matrix field ``(m, m, N, ..., N)``;
every operator here acts componentwise on leading axes.

Transform convention
--------------------
``to_frequency`` is the unnormalised forward DFT over the grid axes,
``c(xi) = sum_x f(x) exp(-i xi.x)``, and ``from_frequency`` carries the factor
``1/N^n``.  The physical amplitudes ``a(xi) = c(xi) / N^n`` satisfy
``f(x) = sum_xi a(xi) exp(i xi.x)`` and Plancherel reads

    ||f||_{L^2}^2 = sum_x |f(x)|^2 * cell_measure = (2 pi)^n * sum_xi |a(xi)|^2 .

Homogeneous symbols of nonzero order (``|xi|^{2s}``, ``i xi/|xi|``) are set to
zero at ``xi = 0``.  Odd symbols (Riesz transforms, odd derivatives) are set to
zero on the Nyquist planes ``xi_k = -N/2`` of the axis they act on, because a
purely imaginary value there has no real-valued counterpart on the grid.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GridMismatch, MeanNotZero, NonHermitianSymbol, OrderTooHigh

__all__ = [
    "PeriodicGrid",
    "FourierMultiplier",
    "to_frequency",
    "from_frequency",
    "apply_multiplier",
    "fractional_laplacian",
    "riesz_transform",
    "riesz_contraction",
    "partial_derivative",
    "gradient",
    "gaussian_random_field",
    "field_mean",
    "remove_mean",
    "inner",
    "check_same_grid",
]

HERMITIAN_TOL = 1e-12
RANDOM_FIELD_EPS = 0.05
MAX_DERIVATIVE_ORDER = 8


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform grid on the torus [0, 2pi)^n with ``N`` points per axis.

    Parameters
    ----------
    n : int
        Spatial dimension, 1 or 3.
    N : int
        Even number of points per axis, at least 8.
    """

    n: int
    N: int

    def __post_init__(self):
        if self.n not in (1, 3):
            raise ValueError(f"spatial dimension must be 1 or 3, got {self.n}")
        if self.N < 8 or self.N % 2:
            raise ValueError(f"points per axis must be even and >= 8, got {self.N}")

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.n

    @property
    def size(self) -> int:
        return self.N**self.n

    @property
    def spacing(self) -> float:
        return 2 * math.pi / self.N

    @property
    def cell_measure(self) -> float:
        return (2 * math.pi / self.N) ** self.n

    @property
    def axes(self) -> tuple:
        """Grid axes of an array carrying this grid in its trailing dimensions."""
        return tuple(range(-self.n, 0))

    @cached_property
    def wavenumbers(self) -> tuple:
        """Integer frequencies per axis in FFT order, broadcastable to ``shape``."""
        k = np.fft.fftfreq(self.N, d=1.0 / self.N).round().astype(np.int64)
        out = []
        for axis in range(self.n):
            s = [1] * self.n
            s[axis] = self.N
            out.append(k.reshape(s))
        return tuple(out)

    @cached_property
    def abs_xi(self) -> np.ndarray:
        """|xi| on the full frequency lattice (FFT order)."""
        sq = np.zeros(self.shape)
        for k in self.wavenumbers:
            sq = sq + k.astype(float) ** 2
        return np.sqrt(sq)

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """True where any frequency component equals -N/2."""
        mask = np.zeros(self.shape, dtype=bool)
        for k in self.wavenumbers:
            mask = mask | (k == -self.N // 2)
        return mask

    def coordinates(self) -> tuple:
        """Grid coordinates per axis, each of full grid shape."""
        x = self.spacing * np.arange(self.N)
        return tuple(np.meshgrid(*([x] * self.n), indexing="ij"))

    def refined(self, factor: int = 2) -> "PeriodicGrid":
        return PeriodicGrid(self.n, self.N * factor)

    def reflect(self, a: np.ndarray) -> np.ndarray:
        """Return ``b`` with ``b[xi] = a[-xi]`` on the lattice (indices mod N)."""
        for ax in self.axes:
            a = np.roll(np.flip(a, axis=ax), 1, axis=ax)
        return a


def check_same_grid(grid: PeriodicGrid, *fields) -> None:
    for f in fields:
        f = np.asarray(f)
        if f.ndim < grid.n or f.shape[-grid.n:] != grid.shape:
            raise GridMismatch(f"field of shape {f.shape} does not live on {grid}")


def to_frequency(grid: PeriodicGrid, f) -> np.ndarray:
    """Unnormalised forward DFT over the grid axes (see module docstring)."""
    f = np.asarray(f)
    check_same_grid(grid, f)
    return np.fft.fftn(f, axes=grid.axes)


def from_frequency(grid: PeriodicGrid, c, real: bool = True) -> np.ndarray:
    """Inverse of :func:`to_frequency`; returns the real part when ``real``."""
    out = np.fft.ifftn(c, axes=grid.axes)
    return out.real if real else out


class FourierMultiplier:
    """A scalar Fourier multiplier tabulated on a grid's frequency lattice.

    The symbol must be Hermitian, ``symbol(-xi) = conj(symbol(xi))``, so that
    real fields are mapped to real fields.  This is checked at construction.

    Parameters
    ----------
    grid : PeriodicGrid
    symbol : array_like or callable
        Either an array of shape ``grid.shape`` in FFT order, or a callable
        ``symbol(*wavenumbers)`` evaluated on the integer lattice.
    zero_mode_value : complex, optional
        Value used at ``xi = 0`` (overrides whatever the symbol gives there).
    """

    def __init__(self, grid: PeriodicGrid, symbol, zero_mode_value=None, check=True):
        self.grid = grid
        if callable(symbol):
            with np.errstate(divide="ignore", invalid="ignore"):
                symbol = symbol(*grid.wavenumbers)
        sym = np.array(np.broadcast_to(symbol, grid.shape))
        if zero_mode_value is not None:
            sym = sym.astype(np.result_type(sym, complex(zero_mode_value)))
            sym[(0,) * grid.n] = zero_mode_value
        if not np.all(np.isfinite(sym)):
            raise ValueError("symbol is not finite on the lattice; set zero_mode_value")
        if np.iscomplexobj(sym) and np.abs(sym.imag).max() == 0:
            sym = sym.real.copy()
        self.symbol = sym
        if check:
            self.check_hermitian()

    def check_hermitian(self, tol: float = HERMITIAN_TOL) -> None:
        sym = self.symbol
        if not np.iscomplexobj(sym):
            mismatch = np.abs(self.grid.reflect(sym) - sym)
        else:
            mismatch = np.abs(self.grid.reflect(sym) - np.conj(sym))
        scale = max(1.0, float(np.abs(sym).max()))
        if mismatch.max() > tol * scale:
            raise NonHermitianSymbol(
                f"symbol violates symbol(-xi) = conj(symbol(xi)) by {mismatch.max():.3e}"
            )

    @property
    def zero_mode_value(self):
        return self.symbol[(0,) * self.grid.n]

    def __mul__(self, other: "FourierMultiplier") -> "FourierMultiplier":
        if other.grid != self.grid:
            raise GridMismatch("multipliers live on different grids")
        return FourierMultiplier(self.grid, self.symbol * other.symbol, check=False)

    def __call__(self, f) -> np.ndarray:
        return apply_multiplier(self.grid, f, self)


def apply_multiplier(grid: PeriodicGrid, f, mult) -> np.ndarray:
    """Apply a multiplier (a :class:`FourierMultiplier` or a raw symbol array).

    Raw symbol arrays are checked for Hermitian symmetry before use.
    """
    if not isinstance(mult, FourierMultiplier):
        mult = FourierMultiplier(grid, mult)
    elif mult.grid != grid:
        raise GridMismatch("multiplier and field live on different grids")
    c = to_frequency(grid, f)
    return from_frequency(grid, c * mult.symbol)


@functools.lru_cache(maxsize=256)
def _power_symbol(grid: PeriodicGrid, s: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        sym = grid.abs_xi ** (2.0 * s) if s != 0 else np.ones(grid.shape)
    if s != 0:
        sym[(0,) * grid.n] = 0.0
    sym.setflags(write=False)
    return sym


def field_mean(grid: PeriodicGrid, f) -> np.ndarray:
    f = np.asarray(f)
    return f.mean(axis=grid.axes)


def remove_mean(grid: PeriodicGrid, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    return f - np.expand_dims(field_mean(grid, f), grid.axes)


def _check_mean_zero(grid, f, rtol=1e-10):
    f = np.asarray(f)
    scale = max(float(np.abs(f).max()) if f.size else 0.0, 1e-300)
    if np.abs(field_mean(grid, f)).max() > rtol * scale:
        raise MeanNotZero("negative-order operator applied to a field with nonzero mean")


def fractional_laplacian(grid: PeriodicGrid, f, s: float, strict: bool = True) -> np.ndarray:
    """(-Delta)^s f: multiply frequency coefficients by |xi|^{2s}.

    The zero mode is annihilated for ``s != 0``.  For ``s < 0`` the input must
    have zero mean, otherwise :class:`MeanNotZero` is raised; ``strict=False``
    skips that check and simply drops the mean (operators of negative order
    inside the commutators act on the homogeneous class modulo constants).
    """
    f = np.asarray(f, dtype=float)
    check_same_grid(grid, f)
    if s == 0:
        return f.copy()
    if s < 0 and strict:
        _check_mean_zero(grid, f)
    c = to_frequency(grid, f)
    return from_frequency(grid, c * _power_symbol(grid, float(s)))


@functools.lru_cache(maxsize=64)
def _riesz_symbols(grid: PeriodicGrid) -> tuple:
    out = []
    abs_xi = grid.abs_xi.copy()
    abs_xi[(0,) * grid.n] = 1.0
    for k in grid.wavenumbers:
        sym = np.broadcast_to(1j * k / abs_xi, grid.shape).copy()
        sym[(0,) * grid.n] = 0.0
        sym[np.broadcast_to(k == -grid.N // 2, grid.shape)] = 0.0
        sym.setflags(write=False)
        out.append(sym)
    return tuple(out)


def riesz_transform(grid: PeriodicGrid, f) -> np.ndarray:
    """Riesz transforms R_k f, symbol i xi_k/|xi|, stacked on a new leading axis.

    The mean of ``f`` is annihilated (zero mode mapped to 0).
    """
    f = np.asarray(f, dtype=float)
    c = to_frequency(grid, f)
    return np.stack([from_frequency(grid, c * sym) for sym in _riesz_symbols(grid)])


def riesz_contraction(grid: PeriodicGrid, g) -> np.ndarray:
    """Sum_k of the multiplier -i xi_k/|xi| applied to ``g[k]``.

    This is the adjoint of :func:`riesz_transform`, hence its left inverse on
    mean-zero fields without Nyquist content.
    """
    g = np.asarray(g, dtype=float)
    if g.shape[0] != grid.n:
        raise GridMismatch(f"expected {grid.n} components, got {g.shape[0]}")
    check_same_grid(grid, g)
    acc = 0
    for k, sym in enumerate(_riesz_symbols(grid)):
        acc = acc + to_frequency(grid, g[k]) * np.conj(sym)
    return from_frequency(grid, acc)


def partial_derivative(grid: PeriodicGrid, f, alpha) -> np.ndarray:
    """Spectral derivative d^alpha f, symbol prod_k (i xi_k)^{alpha_k}."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != grid.n or min(alpha) < 0:
        raise ValueError(f"multi-index {alpha} does not match dimension {grid.n}")
    if sum(alpha) > MAX_DERIVATIVE_ORDER:
        raise OrderTooHigh(f"|alpha| = {sum(alpha)} exceeds {MAX_DERIVATIVE_ORDER}")
    f = np.asarray(f, dtype=float)
    if sum(alpha) == 0:
        return f.copy()
    sym = np.ones(grid.shape, dtype=complex)
    for k, a in zip(grid.wavenumbers, alpha):
        if a == 0:
            continue
        factor = (1j * k.astype(float)) ** a
        if a % 2:
            factor = np.where(k == -grid.N // 2, 0.0, factor)
        sym = sym * factor
    return from_frequency(grid, to_frequency(grid, f) * sym)


def gradient(grid: PeriodicGrid, f) -> np.ndarray:
    """Stack of first derivatives d_k f on a new leading axis."""
    eye = np.eye(grid.n, dtype=int)
    return np.stack([partial_derivative(grid, f, eye[k]) for k in range(grid.n)])


def inner(grid: PeriodicGrid, f, g) -> float:
    """L^2 pairing sum f*g*cell_measure over all components."""
    return float(np.sum(np.asarray(f) * np.asarray(g)) * grid.cell_measure)


def _lattice_box(n, half):
    k = np.arange(-half, half + 1)
    return np.stack(np.meshgrid(*([k] * n), indexing="ij"), axis=-1).reshape(-1, n)


def gaussian_random_field(grid: PeriodicGrid, s: float, seed: int) -> np.ndarray:
    """Mean-zero random field with regularity just above ``s``.

    Physical amplitudes are independent complex Gaussians with standard
    deviation ``(1 + |xi|^2)^{-(s + n/2 + eps)/2}``, ``eps = 0.05``, made
    Hermitian.  Draws are nested in the lattice: frequencies inside the box
    ``max |xi_k| <= K/2 - 1`` are drawn by a generator seeded with ``(seed, K)``
    for ``K = 8, 16, 32, ...``, so refining the grid keeps every coefficient
    already present and only adds new ones.  The zero mode and the Nyquist
    planes are left empty.
    """
    if s < 0:
        raise ValueError("regularity must be nonnegative")
    n, N = grid.n, grid.N
    top = N // 2 - 1
    amp = np.zeros(grid.shape, dtype=complex)
    prev_half = -1
    K = 8
    while True:
        half = min(K // 2 - 1, top)
        pts = _lattice_box(n, half)
        rng = np.random.default_rng([int(seed), K])
        z = rng.standard_normal((len(pts), 2)) @ np.array([1.0, 1j]) / math.sqrt(2)
        new = np.abs(pts).max(axis=1) > prev_half
        idx = tuple((pts[new] % N).T)
        amp[idx] = z[new]
        prev_half = half
        if half >= top:
            break
        K *= 2
    amp = (amp + np.conj(grid.reflect(amp))) / math.sqrt(2)
    sigma = (1.0 + grid.abs_xi**2) ** (-(s + n / 2 + RANDOM_FIELD_EPS) / 2)
    amp = amp * sigma
    amp[(0,) * n] = 0.0
    amp[grid.nyquist_mask] = 0.0
    return from_frequency(grid, amp * grid.size)
