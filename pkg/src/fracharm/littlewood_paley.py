"""Dyadic Littlewood-Paley ladder, shell projections and paraproducts."""

from __future__ import annotations

import csv
import itertools
import math

import numpy as np

from . import spectral
from .errors import DivisionByZero, GridMismatch, GridTooSmall, ShellOutOfRange
from .spectral import PeriodicGrid, check_same_grid, from_frequency, to_frequency


def profile(r):
    """Radial cutoff: 1 on r <= 1, 0 on r >= 2, C-infinity in between."""
    r = np.asarray(r, dtype=float)
    t = np.clip(r - 1.0, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(t < 1.0, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
        b = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
    return a / (a + b)


class DyadicPartition:
    """Tabulated ladder psi_j, j = j_min..j_max, on a grid's frequency lattice.

    The lowest shell absorbs everything below it, ``psi_{j_min} = phi(2^{-j_min} xi)``
    with ``j_min = 0``, and ``psi_j = phi(2^{-j} xi) - phi(2^{-j+1} xi)`` above.
    ``j_max`` is the smallest integer with ``2^{j_max} >= max |xi|`` on the
    lattice, so the shells sum to one at every lattice frequency.

    Parameters
    ----------
    grid : PeriodicGrid
    shift : int
        Gap between the high and low factors of the paraproducts (default 4).
    """

    j_min = 0

    def __init__(self, grid: PeriodicGrid, shift: int = 4):
        if shift < 4:
            raise ValueError("paraproduct gap must be at least 4")
        self.grid = grid
        self.shift = int(shift)
        top = float(grid.abs_xi.max())
        self.j_max = max(int(math.ceil(math.log2(top) - 1e-12)), 0)
        if self.j_max - self.j_min < 3:
            raise GridTooSmall(f"only {self.j_max - self.j_min + 1} shells on {grid}")
        abs_xi = grid.abs_xi
        shells = [profile(abs_xi)]
        for j in range(self.j_min + 1, self.j_max + 1):
            shells.append(profile(abs_xi * 2.0**-j) - profile(abs_xi * 2.0 ** (1 - j)))
        self.psi = np.stack(shells)
        self.phi = np.cumsum(self.psi, axis=0)

    @property
    def js(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def _index(self, j):
        if j < self.j_min or j > self.j_max:
            raise ShellOutOfRange(f"shell {j} outside [{self.j_min}, {self.j_max}]")
        return j - self.j_min

    def shell_symbol(self, j) -> np.ndarray:
        return self.psi[self._index(j)]

    def low_symbol(self, j) -> np.ndarray:
        if j < self.j_min:
            return np.zeros(self.grid.shape)
        return self.phi[min(j, self.j_max) - self.j_min]

    def shells_of(self, f) -> np.ndarray:
        """All shell pieces f_j stacked on a new leading axis."""
        c = to_frequency(self.grid, f)
        return np.stack([from_frequency(self.grid, c * p) for p in self.psi])

    def lows_of(self, f) -> np.ndarray:
        """All low-pass pieces f^j stacked on a new leading axis."""
        c = to_frequency(self.grid, f)
        return np.stack([from_frequency(self.grid, c * p) for p in self.phi])

    def table(self):
        """Rows ``(j, |xi|, psi_j)`` over the distinct lattice radii."""
        radii, first = np.unique(np.round(self.grid.abs_xi.ravel(), 12), return_index=True)
        rows = []
        for j in self.js:
            vals = self.psi[j - self.j_min].ravel()[first]
            rows.extend((j, float(r), float(v)) for r, v in zip(radii, vals))
        return rows

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["j", "abs_xi", "psi"])
            for j, r, v in self.table():
                w.writerow([j, repr(r), repr(v)])


def build_partition(grid: PeriodicGrid, shift: int = 4) -> DyadicPartition:
    return DyadicPartition(grid, shift)


def project_shell(partition: DyadicPartition, f, j) -> np.ndarray:
    """f_j = P_j f."""
    return spectral.apply_multiplier(partition.grid, f, partition.shell_symbol(j))


def project_low(partition: DyadicPartition, f, j) -> np.ndarray:
    """f^j = P_{<=j} f.  Indices above the ladder return f, below return 0."""
    if j > partition.j_max:
        return np.array(f, dtype=float)
    return spectral.apply_multiplier(partition.grid, f, partition.low_symbol(j))


def paraproduct(partition: DyadicPartition, f, g, kind: int) -> np.ndarray:
    """Paraproduct pieces of f*g.

    kind 1: sum_j f_j g^{j-s};  kind 2: sum_j g_j f^{j-s};
    kind 3: sum_j f_j sum_{|k-j|<s} g_k,  with ``s = partition.shift``.
    The three kinds add up to the pointwise product.
    """
    grid = partition.grid
    check_same_grid(grid, f, g)
    if np.shape(f) != np.shape(g):
        raise GridMismatch("paraproduct factors have different shapes")
    s = partition.shift
    fs, gs = partition.shells_of(f), partition.shells_of(g)
    if kind == 2:
        fs, gs = gs, fs
        kind = 1
    out = np.zeros(np.shape(f))
    J = len(fs)
    if kind == 1:
        low = np.cumsum(gs, axis=0)
        for i in range(s, J):
            out += fs[i] * low[i - s]
    elif kind == 3:
        for i in range(J):
            lo, hi = max(0, i - s + 1), min(J, i + s)
            out += fs[i] * gs[lo:hi].sum(axis=0)
    else:
        raise ValueError(f"paraproduct kind must be 1, 2 or 3, got {kind}")
    return out


def _pad_amplitudes(grid: PeriodicGrid, amp, factor=2):
    """Embed lattice amplitudes into a ``factor``-times finer lattice.

    Nyquist entries are split evenly between +N/2 and -N/2 so that Hermitian
    symmetry survives.
    """
    N, M = grid.N, grid.N * factor
    for ax in grid.axes:
        amp = np.moveaxis(amp, ax, 0)
        new = np.zeros((M,) + amp.shape[1:], dtype=complex)
        new[: N // 2] = amp[: N // 2]
        new[M - N // 2 + 1 :] = amp[N // 2 + 1 :]
        new[N // 2] = amp[N // 2] / 2
        new[M - N // 2] = amp[N // 2] / 2
        amp = np.moveaxis(new, 0, ax)
    return amp


def support_check(partition: DyadicPartition, f, g, dealias: bool = True) -> dict:
    """Spectral leakage of the products f^{j-s} g_j outside 2^{j-2} <= |xi| <= 2^{j+2}.

    With ``dealias`` the products are formed on the twice-finer grid, so the
    exact product spectrum is inspected.  Without it, the report also carries
    ``alias_leakage``: the part of the exact product spectrum lying outside the
    grid's lattice, which an on-grid evaluation folds back onto it.  Leakage is
    measured in amplitude units relative to ``||a_f||_2 ||a_g||_2``.
    """
    grid = partition.grid
    check_same_grid(grid, f, g)
    fine = grid.refined(2)
    a_f = to_frequency(grid, f) / grid.size
    a_g = to_frequency(grid, g) / grid.size
    scale = float(np.linalg.norm(a_f) * np.linalg.norm(a_g))
    if scale == 0.0:
        return {"leakage": 0.0, "annulus_leakage": 0.0, "alias_leakage": 0.0,
                "dealias": dealias, "conforming": True}
    in_lattice = np.ones(fine.shape, dtype=bool)
    for k in fine.wavenumbers:
        in_lattice = in_lattice & (k >= -grid.N // 2) & (k < grid.N // 2)
    annulus = alias = 0.0
    s = partition.shift
    for j in partition.js:
        if j - s < partition.j_min:
            continue
        lo = _pad_amplitudes(grid, a_f * partition.low_symbol(j - s))
        hi = _pad_amplitudes(grid, a_g * partition.shell_symbol(j))
        prod = np.fft.ifftn(lo * fine.size, axes=fine.axes) * np.fft.ifftn(hi * fine.size, axes=fine.axes)
        spec = np.abs(np.fft.fftn(prod, axes=fine.axes)) / fine.size
        outside = (fine.abs_xi < 2.0 ** (j - 2)) | (fine.abs_xi > 2.0 ** (j + 2))
        if dealias:
            annulus = max(annulus, float(spec[outside].max(initial=0.0)))
        else:
            annulus = max(annulus, float(spec[outside & in_lattice].max(initial=0.0)))
            alias = max(alias, float(spec[~in_lattice].max(initial=0.0)))
    leak = max(annulus, alias) / scale
    return {
        "leakage": leak,
        "annulus_leakage": annulus / scale,
        "alias_leakage": alias / scale,
        "dealias": dealias,
        "conforming": leak <= 1e-10,
    }


def derivative_tensor_norm(grid: PeriodicGrid, f, k: int) -> np.ndarray:
    """Pointwise Euclidean norm of the full k-th derivative tensor of f."""
    if k == 0:
        return np.abs(np.asarray(f, dtype=float))
    acc = np.zeros(grid.shape)
    for idx in itertools.product(range(grid.n), repeat=k):
        alpha = np.bincount(idx, minlength=grid.n)
        acc += spectral.partial_derivative(grid, f, alpha) ** 2
    return np.sqrt(acc)


def lemma_a1_ratio(partition: DyadicPartition, f) -> float:
    """max_x sup_j |f^j(x)| / M(f)(x) with M the discrete maximal function."""
    from .norms import maximal_function

    f = np.asarray(f, dtype=float)
    if not np.any(f):
        raise DivisionByZero("maximal-function ratio of the zero field")
    sup = np.abs(partition.lows_of(f)).max(axis=0)
    return float((sup / maximal_function(partition.grid, f)).max())


def lemma_a2_check(partition: DyadicPartition, k: int, level: int = 1, symbol=None) -> float:
    """||grad^k F^{-1}[phi(2^{-level} .)]||_{L^1} / (4^k 2^{level k}).

    The kernel is normalised so that convolution with it is the multiplier,
    ``K(x) = (2 pi)^{-n} sum_xi phi(2^{-level} xi) exp(i xi.x)``; the factor
    ``2^{level k}`` removes the trivial dilation so the value is that of the
    unit-scale profile.  ``symbol`` replaces the profile when given.
    """
    if k < 0 or k > 2:
        raise ValueError("derivative order must be 0, 1 or 2")
    grid = partition.grid
    if symbol is None:
        symbol = profile(grid.abs_xi * 2.0**-level)
    kernel = from_frequency(grid, np.asarray(symbol, dtype=complex)) * grid.size / (2 * math.pi) ** grid.n
    dk = derivative_tensor_norm(grid, kernel, k)
    return float(dk.sum() * grid.cell_measure / (4.0**k * 2.0 ** (level * k)))


def lemma_a3_check(partition: DyadicPartition, f, j, k: int) -> float:
    """2^{-kj} ||grad^k f_j||_inf / (4^k ||f_j||_inf)."""
    fj = project_shell(partition, f, j)
    sup = float(np.abs(fj).max())
    if sup == 0.0:
        return 0.0
    dk = float(derivative_tensor_norm(partition.grid, fj, k).max())
    return 2.0 ** (-k * j) * dk / (4.0**k * sup)


def equiv_ratio(partition: DyadicPartition, X) -> float:
    """int sum_j 2^{-jn} (X^j)^2  divided by  int sum_k 2^{-kn} (X_k)^2."""
    n = partition.grid.n
    w = np.array([2.0 ** (-j * n) for j in partition.js])
    w = w.reshape((-1,) + (1,) * (np.ndim(X)))
    lows = partition.lows_of(X)
    shells = partition.shells_of(X)
    return float((w * lows**2).sum() / (w * shells**2).sum())


def lemma_a1_constant(partition: DyadicPartition) -> float:
    """max_j ||K_j*||_{L^1}: the constant for which sup_j |f^j| <= C M(f) holds.

    ``K_j`` is the periodic kernel of the low-pass multiplier ``phi_j`` and
    ``K_j*`` its least radially nonincreasing majorant in periodic distance.
    Lemma A.1 states the bound with constant 1; the standard argument only
    gives this constant, which exceeds 1 because ``K_j`` changes sign.
    """
    grid = partition.grid
    idx = np.minimum(np.arange(grid.N), grid.N - np.arange(grid.N))
    d2 = np.zeros(grid.shape, dtype=np.int64)
    for ax in range(grid.n):
        s = [1] * grid.n
        s[ax] = grid.N
        d2 = d2 + (idx**2).reshape(s)
    order = np.argsort(d2.ravel(), kind="stable")
    d_sorted = d2.ravel()[order]
    best = 0.0
    for j in partition.js:
        kernel = from_frequency(grid, partition.low_symbol(j).astype(complex)) * grid.size / (2 * math.pi) ** grid.n
        mag = np.abs(kernel).ravel()[order]
        tail = np.maximum.accumulate(mag[::-1])[::-1]
        # equal distances share the majorant value of their whole shell
        _, first = np.unique(d_sorted, return_index=True)
        shell_val = tail[first]
        counts = np.diff(np.append(first, d_sorted.size))
        best = max(best, float((shell_val * counts).sum() * grid.cell_measure))
    return best
