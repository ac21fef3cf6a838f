"""Function-space norms on the periodic grid.

Vector- and matrix-valued fields (extra leading axes) are measured through
their pointwise Euclidean / Frobenius magnitude, except for the Hilbert-space
norms ``sobolev_norm`` with ``q=None`` which sum the squared component norms
(the same thing for ``p = 2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import spectral
from .errors import BadExponent
from .spectral import PeriodicGrid, check_same_grid

INF = math.inf


@dataclass(frozen=True)
class NormReport:
    name: str
    value: float
    params: dict = field(default_factory=dict)
    grid: tuple = ()

    def row(self):
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        return [self.name, params, repr(float(self.value))]


def magnitude(grid: PeriodicGrid, f) -> np.ndarray:
    """Pointwise |f|, collapsing any leading component axes."""
    f = np.asarray(f, dtype=float)
    check_same_grid(grid, f)
    if f.ndim == grid.n:
        return np.abs(f)
    return np.sqrt((f**2).reshape((-1,) + grid.shape).sum(axis=0))


def _check_exponent(p, lo=1.0, allow_inf=True):
    if not (p >= lo) or (p == INF and not allow_inf):
        raise BadExponent(f"exponent {p} not admissible")


def lp_norm(grid: PeriodicGrid, f, p=2.0) -> float:
    """(sum |f|^p cell_measure)^{1/p}; the maximum for p = inf."""
    _check_exponent(p)
    a = magnitude(grid, f)
    if p == INF:
        return float(a.max())
    return float((np.sum(a**p) * grid.cell_measure) ** (1.0 / p))


def decreasing_rearrangement(values, cell_measure: float = 1.0):
    """Step function f* of |values|, each value occupying ``cell_measure``.

    Returns ``(heights, ends)``: f* equals ``heights[i]`` on
    ``[ends[i-1], ends[i])`` with ``ends[-1] = 0``.
    """
    heights = np.sort(np.abs(np.asarray(values, dtype=float)).ravel())[::-1]
    ends = cell_measure * np.arange(1, heights.size + 1, dtype=float)
    return heights, ends


def _lorentz(heights, ends, p, q):
    if q == INF:
        return float(np.max(heights * ends ** (1.0 / p), initial=0.0))
    starts = np.concatenate(([0.0], ends[:-1]))
    pieces = heights**q * (p / q) * (ends ** (q / p) - starts ** (q / p))
    return float(pieces.sum() ** (1.0 / q))


def lorentz_norm_values(values, cell_measure, p, q) -> float:
    """Lorentz L^{(p,q)} norm of a step function given by cell values.

    The integral of (t^{1/p} f*(t))^q dt/t is evaluated exactly on each
    constant piece; for ``q = inf`` the supremum of t^{1/p} f*(t) over a piece
    sits at its right endpoint.
    """
    _check_exponent(p, allow_inf=False)
    _check_exponent(q)
    heights, ends = decreasing_rearrangement(values, cell_measure)
    return _lorentz(heights, ends, p, q)


def lorentz_norm(grid: PeriodicGrid, f, p, q) -> float:
    return lorentz_norm_values(magnitude(grid, f), grid.cell_measure, p, q)


def _ball_kernels(grid: PeriodicGrid):
    idx = np.minimum(np.arange(grid.N), grid.N - np.arange(grid.N))
    d2 = np.zeros(grid.shape, dtype=np.int64)
    for ax in range(grid.n):
        s = [1] * grid.n
        s[ax] = grid.N
        d2 = d2 + (idx**2).reshape(s)
    return d2


def maximal_function(grid: PeriodicGrid, f) -> np.ndarray:
    """Discrete centred maximal function of |f|.

    Balls are ``{y : dist(x, y) < k h}`` for ``k = 1..N/2`` with ``h = 2 pi / N``
    and periodic distance; ``k = 1`` is the single cell, so ``M(f) >= |f|``.
    Ball averages are periodic convolutions done with the FFT.
    """
    a = magnitude(grid, f)
    out = a.copy()
    d2 = _ball_kernels(grid)
    fa = np.fft.fftn(a)
    for k in range(2, grid.N // 2 + 1):
        ball = (d2 < k * k).astype(float)
        avg = np.fft.ifftn(fa * np.conj(np.fft.fftn(ball))).real / ball.sum()
        np.maximum(out, avg, out=out)
    return out


def sobolev_norm(grid: PeriodicGrid, f, s, p=2.0, q=None) -> float:
    """Homogeneous norm of (-Delta)^{s/2} f.

    ``q=None`` gives the L^p norm (Hdot^s for p = 2); otherwise the Lorentz
    L^{(p,q)} norm of the multiplier image in physical space.  Negative ``s``
    requires mean-zero input.
    """
    g = spectral.fractional_laplacian(grid, f, s / 2.0)
    if q is None:
        return lp_norm(grid, g, p)
    return lorentz_norm(grid, g, p, q)


def besov_norm(partition, f, s, p, q) -> float:
    """l^q over shells of 2^{js} ||f_j||_{L^p}."""
    _check_exponent(p)
    _check_exponent(q)
    grid = partition.grid
    terms = np.array(
        [2.0 ** (j * s) * lp_norm(grid, fj, p) for j, fj in zip(partition.js, _shells(partition, f))]
    )
    if q == INF:
        return float(terms.max())
    return float((terms**q).sum() ** (1.0 / q))


def triebel_norm(partition, f, s, p, q) -> float:
    """L^p norm of (sum_j 2^{jsq} |f_j|^q)^{1/q}."""
    _check_exponent(p)
    _check_exponent(q)
    grid = partition.grid
    mags = np.stack([magnitude(grid, fj) for fj in _shells(partition, f)])
    w = np.array([2.0 ** (j * s) for j in partition.js]).reshape((-1,) + (1,) * grid.n)
    if q == INF:
        sq = (w * mags).max(axis=0)
    else:
        sq = ((w * mags) ** q).sum(axis=0) ** (1.0 / q)
    return lp_norm(grid, sq, p)


def _shells(partition, f):
    f = np.asarray(f, dtype=float)
    shells = partition.shells_of(f)
    return [shells[i] for i in range(shells.shape[0])]


def hardy_norm(partition, f) -> float:
    """Square-function integral int (sum_j |f_j|^2)^{1/2}."""
    return triebel_norm(partition, f, 0.0, 1.0, 2.0)


def _cube_sides(N):
    sides, k = [], 0
    while True:
        side = max(1, int(round(N / 2**k)))
        if side not in sides:
            sides.append(side)
        if side == 1:
            return sides
        k += 1


def bmo_norm(grid: PeriodicGrid, f, full_offset_side: int = 16, stride: int = 4) -> float:
    """Max over periodic cubes of the mean of |f - mean_cube f|.

    Cube sides are ``2 pi 2^{-k}`` (``N 2^{-k}`` cells).  Cubes of at least
    ``full_offset_side`` cells are placed at every grid offset, smaller ones at
    every ``stride``-th offset per axis, so the value is a lower bound for the
    discrete BMO seminorm over all grid-aligned cubes.
    """
    a = magnitude(grid, f) if np.ndim(f) > grid.n else np.asarray(f, dtype=float)
    best = 0.0
    n, N = grid.n, grid.N
    for side in _cube_sides(N):
        if side >= N:
            best = max(best, float(np.abs(a - a.mean()).mean()))
            continue
        step = 1 if side >= full_offset_side else stride
        ext = np.pad(a, [(0, side - 1)] * n, mode="wrap")
        win = sliding_window_view(ext, (side,) * n)
        win = win[(slice(None, None, step),) * n]
        win_axes = tuple(range(n, 2 * n))
        for chunk in np.array_split(np.arange(win.shape[0]), max(1, win.shape[0] // 4)):
            w = win[chunk]
            m = w.mean(axis=win_axes, keepdims=True)
            best = max(best, float(np.abs(w - m).mean(axis=win_axes).max()))
    return best


def lorentz_holder_check(grid: PeriodicGrid, f, g, exponents) -> float:
    """||fg||_{(r,s)} / (||f||_{(p1,q1)} ||g||_{(p2,q2)}).

    ``exponents = (p1, q1, p2, q2)``; ``1/r = 1/p1 + 1/p2`` and
    ``1/s = 1/q1 + 1/q2``.  The product norm may be a quasi-norm (r or s < 1).
    """
    p1, q1, p2, q2 = exponents
    for e in (p1, p2):
        _check_exponent(e, allow_inf=False)
    for e in (q1, q2):
        _check_exponent(e)
    r = 1.0 / (1.0 / p1 + 1.0 / p2)
    s = 1.0 / (1.0 / q1 + 1.0 / q2) if (q1, q2) != (INF, INF) else INF
    fg = magnitude(grid, f) * magnitude(grid, g)
    num = _lorentz(*decreasing_rearrangement(fg, grid.cell_measure), r, s)
    den = lorentz_norm(grid, f, p1, q1) * lorentz_norm(grid, g, p2, q2)
    if den == 0.0:
        return 0.0
    return num / den


def norm_table(grid: PeriodicGrid, f, partition=None) -> list:
    """Every implemented norm of ``f`` with the parameters used by the harnesses."""
    from .littlewood_paley import DyadicPartition

    if partition is None:
        partition = DyadicPartition(grid)
    n = grid.n
    f0 = spectral.remove_mean(grid, f)
    g = (grid.n, grid.N)
    rows = [
        NormReport("L1", lp_norm(grid, f, 1), {"p": 1}, g),
        NormReport("L2", lp_norm(grid, f, 2), {"p": 2}, g),
        NormReport("Linf", lp_norm(grid, f, INF), {"p": "inf"}, g),
        NormReport("Lorentz", lorentz_norm(grid, f, 2, INF), {"p": 2, "q": "inf"}, g),
        NormReport("Lorentz", lorentz_norm(grid, f, 2, 1), {"p": 2, "q": 1}, g),
        NormReport("Hdot", sobolev_norm(grid, f, n / 2), {"s": n / 2}, g),
        NormReport("Hdot", sobolev_norm(grid, f0, -n / 2), {"s": -n / 2}, g),
        NormReport("Wdot", sobolev_norm(grid, f, n / 2, 2, INF), {"s": n / 2, "p": 2, "q": "inf"}, g),
        NormReport("Wdot", sobolev_norm(grid, f0, -n / 2, 2, 1), {"s": -n / 2, "p": 2, "q": 1}, g),
        NormReport("Besov", besov_norm(partition, f, 0, INF, INF), {"s": 0, "p": "inf", "q": "inf"}, g),
        NormReport("Besov", besov_norm(partition, f, 0, 2, 2), {"s": 0, "p": 2, "q": 2}, g),
        NormReport("Triebel", triebel_norm(partition, f, 0, 2, 2), {"s": 0, "p": 2, "q": 2}, g),
        NormReport("Hardy", hardy_norm(partition, f), {}, g),
        NormReport("BMO", bmo_norm(grid, f), {}, g),
    ]
    return rows
