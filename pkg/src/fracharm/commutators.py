"""Three-term commutators, the auxiliary operators of Section 3 and Appendix A,
the Taylor machinery for the symbol difference, and the estimate-ratio harness.

Conventions: ``L = (-Delta)^{n/4}``.  ``Q`` is a scalar field (shape = grid
shape) or a matrix field ``(a, b, *grid)``; it multiplies ``u`` pointwise
(scalar product, matrix-vector or matrix-matrix as the shapes dictate) and
every Fourier multiplier acts entrywise.  Negative-order multipliers drop the
mean of their argument instead of raising.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import littlewood_paley as lp
from . import manifold, norms, spectral
from .errors import (
    DegreeTooHigh,
    GridMismatch,
    NonZeroOrder,
    UnknownEstimate,
    WrongDimension,
)
from .spectral import FourierMultiplier, PeriodicGrid, check_same_grid

INF = math.inf
MAX_TAYLOR_DEGREE = 16


def frac(grid: PeriodicGrid, f, s: float) -> np.ndarray:
    """(-Delta)^s on the homogeneous class (mean dropped when s != 0)."""
    return spectral.fractional_laplacian(grid, f, s, strict=False)


def L(grid: PeriodicGrid, f) -> np.ndarray:
    return frac(grid, f, grid.n / 4)


def mul(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """Pointwise product Q u with Q scalar or matrix valued."""
    Q, u = np.asarray(Q, dtype=float), np.asarray(u, dtype=float)
    check_same_grid(grid, Q, u)
    n = grid.n
    if Q.ndim == n:
        return Q * u
    if Q.ndim != n + 2:
        raise GridMismatch(f"Q of shape {Q.shape} is neither scalar nor matrix valued")
    if u.ndim == n + 1:
        return np.einsum("ij...,j...->i...", Q, u)
    if u.ndim == n + 2:
        return np.einsum("ij...,jk...->ik...", Q, u)
    raise GridMismatch(f"cannot multiply matrix field by field of shape {u.shape}")


def transpose(grid: PeriodicGrid, Q) -> np.ndarray:
    Q = np.asarray(Q)
    return Q.swapaxes(0, 1) if Q.ndim == grid.n + 2 else Q


# --------------------------------------------------------------------------
# Section 1 operators
# --------------------------------------------------------------------------

def op_T(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """T_n(Q,u) = L[(LQ)u] - Q L^2 u + L[Q Lu], the display (opT) verbatim."""
    Lu = L(grid, u)
    return (
        L(grid, mul(grid, L(grid, Q), u))
        - mul(grid, Q, frac(grid, u, grid.n / 2))
        + L(grid, mul(grid, Q, Lu))
    )


def op_T_star(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """T_n^*(Q,u) = L[(LQ)u] - L^2(Qu) + L[Q Lu], the display (optildeT)."""
    return (
        L(grid, mul(grid, L(grid, Q), u))
        - frac(grid, mul(grid, Q, u), grid.n / 2)
        + L(grid, mul(grid, Q, L(grid, u)))
    )


def op_T_adjoint(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """L(Q Lu) - Q L^2 u + (LQ)(Lu): the L^2 adjoint of T_n^* in u.

    ``<T_n^*(Q, u), h> = <u, op_T_adjoint(Q^T, h)>``.  This is the form for
    which the Euler-Lagrange equation (euler1) holds exactly,
    ``L(Q Lu) = T(Q,u) - (LQ)(Lu) + Q L^2 u``, and it is the operator used in
    the potential system and in the Theorem 1.2 harness (see the ledger).
    """
    Lu = L(grid, u)
    return (
        L(grid, mul(grid, Q, Lu))
        - mul(grid, Q, frac(grid, u, grid.n / 2))
        + mul(grid, L(grid, Q), Lu)
    )


def op_T_star_paraproduct(partition, Q, u) -> dict:
    """T_n^* evaluated through the appendix grouping into Pi_1, Pi_2, Pi_3.

    Each of the three products inside T_n^* is split into its paraproducts
    and the outer multipliers are applied piece by piece.  Scalar Q and u.
    Returns the nine pieces keyed ``(k, term)`` plus ``"total"``.
    """
    grid = partition.grid
    n = grid.n
    LQ, Lu = L(grid, Q), L(grid, u)
    pieces = {}
    for k in (1, 2, 3):
        pieces[(k, "LQ_u")] = L(grid, lp.paraproduct(partition, LQ, u, k))
        pieces[(k, "Qu")] = -frac(grid, lp.paraproduct(partition, Q, u, k), n / 2)
        pieces[(k, "Q_Lu")] = L(grid, lp.paraproduct(partition, Q, Lu, k))
    pieces["total"] = sum(v for key, v in pieces.items() if key != "total")
    return pieces


def op_R_remainder(grid: PeriodicGrid, Q, u, form: str = "adjoint") -> np.ndarray:
    """R(Q,u) = L(Q Lu) - D'(Q D u) + D'(Q D u) - T(Q,u).

    ``D = (-Delta)^{1/2}``, ``D' = (-Delta)^{(n-1)/2}``.  The middle pair
    cancels identically but is evaluated as displayed.  ``form`` selects the
    T operator: ``"adjoint"`` (default, see :func:`op_T_adjoint`) or
    ``"literal"`` (:func:`op_T`).
    """
    T = op_T_adjoint if form == "adjoint" else op_T
    n = grid.n
    mid = frac(grid, mul(grid, Q, frac(grid, u, 0.5)), (n - 1) / 2)
    return L(grid, mul(grid, Q, L(grid, u))) - mid + mid - T(grid, Q, u)


def _gradient_field(grid: PeriodicGrid, u) -> np.ndarray:
    """Derivatives stacked on axis 0: shape (n, *u.shape)."""
    return spectral.gradient(grid, u)


def op_f_structure(grid: PeriodicGrid, PN, u) -> np.ndarray:
    """f(P^N,u)_k = R_k(P^N Lu) - (-Delta)^{n/4-1/2}(P^N d_k u), shape (n, m, *grid)."""
    n = grid.n
    PNw = mul(grid, PN, L(grid, u))
    first = spectral.riesz_transform(grid, PNw)
    grad = _gradient_field(grid, u)
    second = np.stack([frac(grid, mul(grid, PN, grad[k]), n / 4 - 0.5) for k in range(n)])
    return first - second


def riesz_bar(grid: PeriodicGrid, f) -> np.ndarray:
    """R-bar applied to an (n, ...) stack: sum_k of the symbol -i xi_k/|xi|."""
    f = np.asarray(f, dtype=float)
    lead = f.shape[1:-grid.n]
    flat = f.reshape((grid.n, -1) + grid.shape)
    out = np.stack([spectral.riesz_contraction(grid, flat[:, i]) for i in range(flat.shape[1])])
    return out.reshape(lead + grid.shape)


def structure_residual(grid: PeriodicGrid, u) -> float:
    """||L(P^N Lu) - L R-bar f(P^N,u)||, measured in Hdot^{-n/2} (eqstructbis)."""
    PN = manifold.projector_fields(grid, u).PN
    lhs = L(grid, mul(grid, PN, L(grid, u)))
    rhs = L(grid, riesz_bar(grid, op_f_structure(grid, PN, u)))
    r = frac(grid, lhs - rhs, -grid.n / 4)
    return norms.lp_norm(grid, r, 2)


def op_S1(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """S_1(Q,u) = L[Q Lu] - R[Q u'] + [LQ] R[Lu]  (n = 1).

    ``R`` is the Hilbert transform with symbol ``-i xi/|xi|``, the sign for
    which ``R d/dx = (-Delta)^{1/2}`` (see the ledger).
    """
    if grid.n != 1:
        raise WrongDimension("S_1 is defined for n = 1 only")
    H = lambda f: _hilbert(grid, f)
    du = spectral.partial_derivative(grid, u, (1,))
    return L(grid, mul(grid, Q, L(grid, u))) - H(mul(grid, Q, du)) + mul(grid, L(grid, Q), H(L(grid, u)))


def _hilbert(grid, f):
    f = np.asarray(f, dtype=float)
    flat = f.reshape((-1,) + grid.shape)
    out = np.stack([spectral.riesz_contraction(grid, g[None]) for g in flat])
    return out.reshape(f.shape)


# --------------------------------------------------------------------------
# Section 3 matrices
# --------------------------------------------------------------------------

def omega_fields(grid: PeriodicGrid, PT) -> tuple:
    """(omega, omega_1, omega_2) of (Omega), (omega1), (omega2)."""
    PT = np.asarray(PT, dtype=float)
    m = PT.shape[0]
    eye = np.eye(m).reshape((m, m) + (1,) * grid.n)
    PN = eye - PT
    A = L(grid, PT)
    mm = lambda X, Y: mul(grid, X, Y)
    omega = (mm(A, PT) - mm(PT, A)) / 2
    omega1 = (mm(A, PT) + mm(PT, A) - L(grid, mm(PT, PT))) / 2
    omega2 = mm(A, PN) + mm(PT, L(grid, PN)) - L(grid, mm(PT, PN))
    return omega, omega1, omega2


def rewriting_identities(grid: PeriodicGrid, PT, w) -> dict:
    """Max deviations of (pt), (pn), (TT), (TN), (NT), (NN), both sides evaluated."""
    PT = np.asarray(PT, dtype=float)
    m = PT.shape[0]
    eye = np.eye(m).reshape((m, m) + (1,) * grid.n)
    PN = eye - PT
    om, om1, om2 = omega_fields(grid, PT)
    A, B = L(grid, PT), L(grid, PN)
    mm = lambda X, Y: mul(grid, X, Y)
    vt, vn = mm(PT, w), mm(PN, w)
    dev = lambda a, b: float(np.abs(a - b).max())
    return {
        "pt": dev(mm(A, PT), om1 + om + A / 2),
        "pn": dev(mm(A, PN), om2 + om1 - om + A / 2),
        "TT": dev(mm(A, vt) / 2, mm(om1, vt) + mm(om, vt)),
        "TN": dev(mm(A, vn) / 2, mm(om1 + om2, vn) - mm(om, vn)),
        "NT": dev(mm(B, vt) / 2, -mm(om1, vt) - mm(om, vt)),
        "NN": dev(mm(B, vn) / 2, -mm(om2, vn) - mm(om1, vn) + mm(om, vn)),
    }


# --------------------------------------------------------------------------
# Appendix operators
# --------------------------------------------------------------------------

def m_coefficient(n: int, alpha) -> float:
    """c_alpha / alpha! for the M_1/M_2 sums.

    Read as the Taylor coefficient of the symbol difference (see
    :func:`taylor_coefficients`); for |alpha| = 1 it is the radial derivative
    of |x|^{n/2} at |x| = 1, i.e. ``-C[1, 0] = n/2``.
    """
    order = sum(alpha)
    if order != 1:
        raise NotImplementedError("only the band |alpha| = 1 occurs for n <= 3")
    return -taylor_coefficients(n / 2, 1).C[1, 0]


def _m_indices(n: int):
    top = n // 2
    for order in range(1, top + 1):
        for alpha in itertools.product(range(order + 1), repeat=n):
            if sum(alpha) == order:
                yield alpha


def op_M1(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """M_1(Q,u) of (opM1); identically zero for n = 1."""
    n = grid.n
    out = np.zeros(np.shape(mul(grid, Q, u)))
    for alpha in _m_indices(n):
        c = m_coefficient(n, alpha)
        dQ = _partial(grid, Q, alpha)
        du = _partial(grid, u, alpha)
        out += c * L(grid, mul(grid, frac(grid, dQ, n / 4 - sum(alpha)), du))
    return out


def op_M2(grid: PeriodicGrid, Q, u) -> np.ndarray:
    """M_2(Q,u) of (opM2); identically zero for n = 1."""
    n = grid.n
    out = np.zeros(np.shape(mul(grid, Q, u)))
    for alpha in _m_indices(n):
        c = m_coefficient(n, alpha)
        dQ = _partial(grid, Q, alpha)
        du = _partial(grid, u, alpha)
        out += c * L(grid, mul(grid, dQ, frac(grid, du, n / 4 - sum(alpha))))
    return out


def _partial(grid, f, alpha):
    return spectral.partial_derivative(grid, f, alpha)


def _shell_slope(grid: PeriodicGrid, symbol) -> float:
    mag = np.abs(np.asarray(symbol))
    r = grid.abs_xi
    js, maxes = [], []
    j = 0
    while 2.0**j <= r.max():
        sel = (r > 2.0 ** (j - 1)) & (r <= 2.0**j)
        if sel.any():
            js.append(j)
            maxes.append(max(float(mag[sel].max()), 1e-300))
        j += 1
    if len(js) < 2:
        return 0.0
    return float(np.polyfit(js, np.log2(maxes), 1)[0])


def pseudo_commutator(grid: PeriodicGrid, Q, u, P) -> np.ndarray:
    """P(Qu) - Q P u for an order-zero Fourier multiplier P.

    The order is checked on the lattice: the log2-slope of the dyadic-shell
    maxima of |symbol| must not exceed 0.1, else :class:`NonZeroOrder`.
    """
    if not isinstance(P, FourierMultiplier):
        P = FourierMultiplier(grid, P)
    slope = _shell_slope(grid, P.symbol)
    if slope > 0.1:
        raise NonZeroOrder(f"symbol grows like |xi|^{slope:.2f}")
    return P(mul(grid, Q, u)) - mul(grid, Q, P(u))


def half_order_commutator(grid: PeriodicGrid, Q, h) -> np.ndarray:
    """D(Qh) - Q D h with D = (-Delta)^{n/4 - 1/2} (Theorem A.5)."""
    s = grid.n / 4 - 0.5
    return frac(grid, mul(grid, Q, h), s) - mul(grid, Q, frac(grid, h, s))


# --------------------------------------------------------------------------
# Taylor machinery
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TaylorCoefficients:
    """Expansion of |e - y|^ex about y = 0 for a unit vector e.

    ``|e - y|^ex = sum_{a,b} C[a, b] (e.y)^a |y|^{2b}`` where
    ``C[a, b] = binom(ex/2, a + b) binom(a + b, a) (-2)^a``; the degree of a
    term is ``a + 2b``.  Only terms of degree ``1..degree`` are kept.
    """

    exponent: float
    degree: int
    C: np.ndarray

    def terms(self):
        for a in range(self.degree + 1):
            for b in range((self.degree - a) // 2 + 1):
                if a + 2 * b >= 1:
                    yield a, b

    def expansion(self, e, y) -> np.ndarray:
        """sum over kept terms of C[a,b] (e.y)^a |y|^{2b} (y: (..., n))."""
        e, y = np.asarray(e, float), np.asarray(y, float)
        ey = y @ e
        yy = (y * y).sum(axis=-1)
        return sum(self.C[a, b] * ey**a * yy**b for a, b in self.terms())

    def symbol_difference(self, xi, zeta) -> np.ndarray:
        """Partial sum for |zeta|^ex - |zeta - xi|^ex."""
        xi, zeta = np.asarray(xi, float), np.asarray(zeta, float)
        rz = np.linalg.norm(zeta, axis=-1)
        e = zeta / rz[..., None]
        y = xi / rz[..., None]
        ey = (e * y).sum(axis=-1)
        yy = (y * y).sum(axis=-1)
        s = sum(self.C[a, b] * ey**a * yy**b for a, b in self.terms())
        return -(rz**self.exponent) * s

    def monomial_coefficients(self, e) -> dict:
        """Coefficients per multi-index alpha (1 <= |alpha| <= degree) for fixed e."""
        e = np.asarray(e, float)
        n = e.shape[0]
        out: dict = {}
        for a, b in self.terms():
            poly = {(0,) * n: self.C[a, b]}
            for _ in range(a):
                poly = _poly_mul(poly, {tuple(np.eye(n, dtype=int)[i]): e[i] for i in range(n)})
            for _ in range(b):
                poly = _poly_mul(poly, {tuple(2 * np.eye(n, dtype=int)[i]): 1.0 for i in range(n)})
            for k, v in poly.items():
                out[k] = out.get(k, 0.0) + v
        return out


def _poly_mul(p, q):
    out = {}
    for ka, va in p.items():
        for kb, vb in q.items():
            k = tuple(i + j for i, j in zip(ka, kb))
            out[k] = out.get(k, 0.0) + va * vb
    return out


@functools.lru_cache(maxsize=64)
def taylor_coefficients(exponent: float, degree: int) -> TaylorCoefficients:
    """Coefficient table from the binomial recurrence b_{k+1} = b_k (ex/2 - k)/(k+1)."""
    if degree > MAX_TAYLOR_DEGREE:
        raise DegreeTooHigh(f"degree {degree} exceeds {MAX_TAYLOR_DEGREE}")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    half = exponent / 2
    binom = [1.0]
    for k in range(degree):
        binom.append(binom[-1] * (half - k) / (k + 1))
    C = np.zeros((degree + 1, degree // 2 + 1))
    for a in range(degree + 1):
        for b in range((degree - a) // 2 + 1):
            C[a, b] = binom[a + b] * math.comb(a + b, a) * (-2.0) ** a
    C.setflags(write=False)
    return TaylorCoefficients(float(exponent), int(degree), C)


def symbol_difference(exponent: float, xi, zeta) -> np.ndarray:
    """Direct |zeta|^ex - |zeta - xi|^ex."""
    xi, zeta = np.asarray(xi, float), np.asarray(zeta, float)
    return np.linalg.norm(zeta, axis=-1) ** exponent - np.linalg.norm(zeta - xi, axis=-1) ** exponent


def taylor_test_points(n: int = 3, count: int = 20, ratio: float = 0.5, seed: int = 0):
    """(xi, zeta) pairs with random directions, |zeta| = 1 and |xi| = ratio."""
    rng = np.random.default_rng(seed)
    d1 = rng.standard_normal((count, n))
    d2 = rng.standard_normal((count, n))
    zeta = d1 / np.linalg.norm(d1, axis=1, keepdims=True)
    xi = ratio * d2 / np.linalg.norm(d2, axis=1, keepdims=True)
    return xi, zeta


def taylor_max_error(exponent: float, degree: int, n: int = 3, count: int = 20,
                     ratio: float = 0.5, seed: int = 0) -> float:
    xi, zeta = taylor_test_points(n, count, ratio, seed)
    approx = taylor_coefficients(exponent, degree).symbol_difference(xi, zeta)
    return float(np.abs(approx - symbol_difference(exponent, xi, zeta)).max())


# --------------------------------------------------------------------------
# Estimate-ratio harness
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioReport:
    estimate: str
    left: float
    right: float
    ratio: float
    grid: tuple
    seed: int

    def row(self):
        return [self.estimate, self.seed, self.grid[1], repr(self.left), repr(self.right), repr(self.ratio)]


def hdot(grid, f, s) -> float:
    """Homogeneous Sobolev seminorm of order s, mean dropped."""
    return norms.lp_norm(grid, frac(grid, f, s / 2), 2)


def wdot(grid, f, s, p, q) -> float:
    """Lorentz-Sobolev seminorm ||(-Delta)^{s/2} f||_{L^{(p,q)}}, mean dropped."""
    return norms.lorentz_norm(grid, frac(grid, f, s / 2), p, q)


@dataclass(frozen=True)
class Estimate:
    name: str
    paper_ref: str
    n: int
    evaluate: object  # (grid, seed) -> (left, right)


def _field(grid, s, seed, role):
    return spectral.gaussian_random_field(grid, s, 1009 * seed + role)


def _est_T(grid, seed):
    n = grid.n
    Q, u = _field(grid, n / 2, seed, 0), _field(grid, n / 2, seed, 1)
    left = hdot(grid, op_T_adjoint(grid, Q, u), -n / 2)
    right = hdot(grid, Q, n / 2) * norms.lorentz_norm(grid, L(grid, u), 2, INF)
    return left, right


def _est_T_star(grid, seed, op=None):
    n = grid.n
    op = op or op_T_star
    Q, u = _field(grid, n / 2, seed, 0), _field(grid, n / 2, seed, 1)
    left = wdot(grid, op(grid, Q, u), -n / 2, 2, 1)
    right = hdot(grid, Q, n / 2) * hdot(grid, u, n / 2)
    return left, right


def _est_A5(grid, seed):
    n = grid.n
    Q, h = _field(grid, n / 2, seed, 0), _field(grid, 0.0, seed, 1)
    left = hdot(grid, half_order_commutator(grid, Q, h), -(n / 2 - 1))
    right = norms.lp_norm(grid, h, 2) * hdot(grid, Q, n / 2)
    return left, right


def _est_A6(grid, seed, lorentz=False):
    n = grid.n
    Q, f = _field(grid, n / 2, seed, 0), _field(grid, n / 2 - 1, seed, 1)
    c = -half_order_commutator(grid, Q, f)
    if lorentz:
        left = norms.lorentz_norm(grid, c, 2, INF)
        right = hdot(grid, Q, n / 2) * wdot(grid, f, n / 2 - 1, 2, INF)
    else:
        left = norms.lp_norm(grid, c, 2)
        right = hdot(grid, Q, n / 2) * hdot(grid, f, n / 2 - 1)
    return left, right


def _riesz1(grid):
    return FourierMultiplier(grid, spectral._riesz_symbols(grid)[0], check=False)


def _est_CRW(grid, seed, lorentz=False):
    n = grid.n
    Q, u = _field(grid, n / 2, seed, 0), _field(grid, 0.0, seed, 1)
    c = pseudo_commutator(grid, Q, u, _riesz1(grid))
    if lorentz:
        left = norms.lorentz_norm(grid, c, 2, INF)
        right = norms.bmo_norm(grid, Q) * norms.lorentz_norm(grid, u, 2, INF)
    else:
        left = norms.lp_norm(grid, c, 2)
        right = norms.bmo_norm(grid, Q) * norms.lp_norm(grid, u, 2)
    return left, right


def _est_Ps(grid, seed):
    u, h = _field(grid, 0.0, seed, 0), _field(grid, 0.0, seed, 1)
    P = _riesz1(grid)
    c = u * P(h) - P(u) * h
    left = norms.hardy_norm(_partition(grid), c)
    right = norms.lorentz_norm(grid, u, 2, INF) * norms.lorentz_norm(grid, h, 2, 1)
    return left, right


@functools.lru_cache(maxsize=16)
def _partition(grid):
    return lp.DyadicPartition(grid)


def _omega_inputs(grid, seed):
    from .flow import assemble_system

    u = manifold.random_sphere_map(grid, 3, seed)
    return u, assemble_system(grid, u)


def _est_Omega1(grid, seed):
    n = grid.n
    u, sys = _omega_inputs(grid, seed)
    left = norms.lorentz_norm(grid, sys.Omega_tilde_1, 2, 1)
    right = hdot(grid, sys.PN, n / 2) ** 2 + hdot(grid, sys.PT, n / 2) ** 2
    return left, right


def _est_Omega2(grid, seed):
    n = grid.n
    u, sys = _omega_inputs(grid, seed)
    left = norms.lorentz_norm(grid, sys.Omega_tilde_2_smoothed, 2, INF)
    right = (hdot(grid, sys.PN, n / 2) + hdot(grid, sys.PT, n / 2)) * norms.lorentz_norm(
        grid, L(grid, u), 2, INF
    )
    return left, right


ESTIMATES = {
    "T": Estimate("T", "Theorem 1.2 (commest1)", 3, _est_T),
    "T_star": Estimate("T_star", "Theorem 1.3 (commest2)", 3, _est_T_star),
    "M1": Estimate("M1", "Proposition A.4 (estM1)", 3, functools.partial(_est_T_star, op=op_M1)),
    "M2": Estimate("M2", "Proposition A.4 (estM2)", 3, functools.partial(_est_T_star, op=op_M2)),
    "A5": Estimate("A5", "Theorem A.5 (l2est4), r = 2", 3, _est_A5),
    "A6": Estimate("A6", "Theorem A.6 (l2est1), r = 2", 3, _est_A6),
    "A7": Estimate("A7", "Corollary A.7 (l2est3)", 3, functools.partial(_est_A6, lorentz=True)),
    "CRW": Estimate("CRW", "Lemma A.8, p = 2, P = Riesz", 1, _est_CRW),
    "CRW_lorentz": Estimate("CRW_lorentz", "Corollary A.9", 1, functools.partial(_est_CRW, lorentz=True)),
    "estPs": Estimate("estPs", "Eq. (estPs)", 1, _est_Ps),
    "Omega_tilde_1": Estimate("Omega_tilde_1", "Eq. (tildeomega2intr)", 3, _est_Omega1),
    "Omega_tilde_2": Estimate("Omega_tilde_2", "Eq. (tildeomega1intr)", 3, _est_Omega2),
}

DEFAULT_GRIDS = {1: (128, 256), 3: (16, 32)}


def estimate_ratio(estimate_id: str, seeds, grids=None) -> list:
    """RatioReports for every (seed, grid) cell of a registered estimate.

    ``grids`` holds :class:`PeriodicGrid` objects or point counts N (the
    dimension then comes from the registry entry).  Ratios are 0 when the
    left-hand side vanishes.
    """
    if estimate_id not in ESTIMATES:
        raise UnknownEstimate(f"unknown estimate id {estimate_id!r}; known: {sorted(ESTIMATES)}")
    est = ESTIMATES[estimate_id]
    if grids is None:
        grids = DEFAULT_GRIDS[est.n]
    grids = [g if isinstance(g, PeriodicGrid) else PeriodicGrid(est.n, int(g)) for g in grids]
    out = []
    for grid in grids:
        for seed in seeds:
            left, right = est.evaluate(grid, int(seed))
            ratio = 0.0 if left == 0.0 else (left / right if right > 0 else INF)
            out.append(RatioReport(estimate_id, float(left), float(right), float(ratio),
                                   (grid.n, grid.N), int(seed)))
    return out


def summarize(reports) -> dict:
    """Max and median ratio per grid size."""
    by_grid: dict = {}
    for r in reports:
        by_grid.setdefault(r.grid[1], []).append(r.ratio)
    return {N: {"max": float(np.max(v)), "median": float(np.median(v))} for N, v in sorted(by_grid.items())}
