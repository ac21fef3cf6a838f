"""Exterior algebra of R^m with the sign conventions of the paper's Section 3.

Basis multivectors eps_I are indexed by bitmasks: bit ``i - 1`` set means
``eps_i`` is a factor, factors in increasing order.

Interior multiplication follows the paper's rule verbatim:
``eps_I -| eps_J = 0`` unless ``I c J``, otherwise ``(-1)^M eps_{J \\ I}`` with
``M = #{(i, j) in I x J : j > i}``.  This differs from the usual left
contraction by the sign ``(-1)^{p(p-1)/2 + p(q-p)}`` (grades p, q), so the
projector formulas (tangpr)/(normpr) need a global sign per ``(m, k)``.  Those
signs are resolved against the Gram projector on the coordinate frame, see
:func:`projector_signs`.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import DimensionMismatch, GradeError, NonOrthonormalFrame

MAX_DIM = 8
FRAME_TOL = 1e-12


def _bits(mask: int) -> list:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


@functools.lru_cache(maxsize=None)
def _tables(m: int):
    size = 1 << m
    wedge = np.zeros((size, size), dtype=np.int8)
    inter = np.zeros((size, size), dtype=np.int8)
    for I in range(size):
        bi = _bits(I)
        for J in range(size):
            bj = _bits(J)
            if not I & J:
                inv = sum(1 for i in bi for j in bj if i > j)
                wedge[I, J] = -1 if inv % 2 else 1
            if I & J == I:
                M = sum(1 for i in bi for j in bj if j > i)
                inter[I, J] = -1 if M % 2 else 1
    grade = np.array([bin(I).count("1") for I in range(size)])
    return wedge, inter, grade


class MultiVector:
    """Element of the exterior algebra of R^m (m <= 8).

    Parameters
    ----------
    m : int
    coeffs : array_like, optional
        ``2**m`` coefficients indexed by bitmask.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        if not 1 <= m <= MAX_DIM:
            raise DimensionMismatch(f"ambient dimension must be in 1..{MAX_DIM}")
        self.m = m
        if coeffs is None:
            coeffs = np.zeros(1 << m)
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.shape != (1 << m,):
            raise DimensionMismatch(f"expected {1 << m} coefficients")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("multivector coefficients must be finite")
        self.coeffs = coeffs

    @classmethod
    def basis(cls, m: int, *indices) -> "MultiVector":
        """eps_{i1} ^ ... ^ eps_{ik} (1-based indices, any order)."""
        out = cls.scalar(m, 1.0)
        for i in indices:
            e = np.zeros(1 << m)
            e[1 << (i - 1)] = 1.0
            out = wedge(out, cls(m, e))
        return out

    @classmethod
    def scalar(cls, m: int, c: float = 1.0) -> "MultiVector":
        e = np.zeros(1 << m)
        e[0] = c
        return cls(m, e)

    @classmethod
    def vector(cls, v) -> "MultiVector":
        v = np.asarray(v, dtype=float)
        m = v.shape[0]
        e = np.zeros(1 << m)
        e[[1 << i for i in range(m)]] = v
        return cls(m, e)

    @classmethod
    def top(cls, m: int) -> "MultiVector":
        return cls.basis(m, *range(1, m + 1))

    def grade_part(self, p: int) -> "MultiVector":
        _, _, grade = _tables(self.m)
        return MultiVector(self.m, np.where(grade == p, self.coeffs, 0.0))

    def grades(self) -> list:
        _, _, grade = _tables(self.m)
        return sorted(set(grade[self.coeffs != 0].tolist()))

    def as_vector(self) -> np.ndarray:
        """Grade-1 coefficients as an array of length m."""
        return self.coeffs[[1 << i for i in range(self.m)]].copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other):
        _same_dim(self, other)
        return MultiVector(self.m, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same_dim(self, other)
        return MultiVector(self.m, self.coeffs - other.coeffs)

    def __neg__(self):
        return MultiVector(self.m, -self.coeffs)

    def __mul__(self, c):
        return MultiVector(self.m, self.coeffs * float(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, MultiVector) and self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    def allclose(self, other, atol=1e-12) -> bool:
        _same_dim(self, other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def __repr__(self):
        terms = [
            f"{c:+g}*e{''.join(map(str, _bits(I))) or '0'}"
            for I, c in enumerate(self.coeffs)
            if c != 0
        ]
        return f"MultiVector(m={self.m}: {' '.join(terms) or '0'})"


def _same_dim(a, b):
    if a.m != b.m:
        raise DimensionMismatch(f"ambient dimensions differ: {a.m} vs {b.m}")


def inner_product(a: MultiVector, b: MultiVector) -> float:
    """Induced inner product (the eps_I are orthonormal)."""
    _same_dim(a, b)
    return float(a.coeffs @ b.coeffs)


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    _same_dim(a, b)
    table, _, _ = _tables(a.m)
    I, J = np.nonzero(np.outer(a.coeffs != 0, b.coeffs != 0) & (table != 0))
    out = np.zeros(1 << a.m)
    np.add.at(out, I | J, table[I, J] * a.coeffs[I] * b.coeffs[J])
    return MultiVector(a.m, out)


def interior_mult(a: MultiVector, b: MultiVector) -> MultiVector:
    """a -| b with the paper's M-count sign rule, extended bilinearly."""
    _same_dim(a, b)
    ga, gb = a.grades(), b.grades()
    if ga and gb and max(ga) > max(gb):
        raise GradeError(f"grade {max(ga)} cannot contract against grade {max(gb)}")
    _, table, _ = _tables(a.m)
    I, J = np.nonzero(np.outer(a.coeffs != 0, b.coeffs != 0) & (table != 0))
    out = np.zeros(1 << a.m)
    np.add.at(out, J & ~I, table[I, J] * a.coeffs[I] * b.coeffs[J])
    return MultiVector(a.m, out)


def hodge_star(a: MultiVector) -> MultiVector:
    """*a = a -| (eps_1 ^ ... ^ eps_m)."""
    return interior_mult(a, MultiVector.top(a.m))


def blade(vectors) -> MultiVector:
    """Wedge product of a list of vectors in R^m."""
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    m = vectors[0].shape[0]
    out = MultiVector.scalar(m)
    for v in vectors:
        out = wedge(out, MultiVector.vector(v))
    return out


def _raw_projectors(e: MultiVector, nrm: MultiVector, v: MultiVector, m: int, k: int):
    pt = hodge_star(wedge(interior_mult(v, e), nrm)) * (-1) ** (m - 1)
    pn = hodge_star(wedge(e, interior_mult(v, nrm))) * (-1) ** (k - 1)
    return pt.as_vector(), pn.as_vector()


@functools.lru_cache(maxsize=None)
def projector_signs(m: int, k: int) -> tuple:
    """Global signs (s_T, s_N) that make (tangpr)/(normpr) the true projectors.

    Resolved on the coordinate frame e = eps_1..eps_k, n = eps_{k+1}..eps_m by
    comparison with the Gram projector, one basis vector at a time.
    """
    if not 1 <= k < m <= MAX_DIM:
        raise DimensionMismatch(f"need 1 <= k < m <= {MAX_DIM}, got k={k}, m={m}")
    eye = np.eye(m)
    e = blade(eye[:k])
    nrm = blade(eye[k:])
    s_t = s_n = 0
    for i in range(m):
        pt, pn = _raw_projectors(e, nrm, MultiVector.vector(eye[i]), m, k)
        if i < k:
            s_t = int(round(pt[i]))
        else:
            s_n = int(round(pn[i]))
    if abs(s_t) != 1 or abs(s_n) != 1:
        raise RuntimeError(f"sign resolution failed for m={m}, k={k}")
    return s_t, s_n


def projector_from_frame(tangent, normal, v) -> tuple:
    """Tangent and normal parts of v by the exterior-algebra formulas.

    ``P^T v = s_T o (-1)^{m-1} *((v -| e) ^ n)`` and
    ``P^N v = s_N o (-1)^{k-1} *(e ^ (v -| n))`` where ``e``, ``n`` are the
    blades of the frames, ``(s_T, s_N) = projector_signs(m, k)`` and
    ``o = <e ^ n, eps_1 ^ ... ^ eps_m>`` is the orientation of the full frame
    (the displays presume ``e ^ n`` is the positive top form).

    Parameters
    ----------
    tangent : array_like, shape (k, m)
    normal : array_like, shape (m - k, m)
    v : array_like, shape (m,)
    """
    tangent = np.atleast_2d(np.asarray(tangent, dtype=float))
    normal = np.atleast_2d(np.asarray(normal, dtype=float))
    k, m = tangent.shape
    if normal.shape != (m - k, m):
        raise DimensionMismatch("frames do not complement each other")
    frame = np.vstack([tangent, normal])
    if np.abs(frame @ frame.T - np.eye(m)).max() > FRAME_TOL:
        raise NonOrthonormalFrame("frame is not orthonormal to 1e-12")
    e, nrm = blade(tangent), blade(normal)
    orient = inner_product(wedge(e, nrm), MultiVector.top(m))
    s_t, s_n = projector_signs(m, k)
    pt, pn = _raw_projectors(e, nrm, MultiVector.vector(v), m, k)
    sign = 1.0 if orient > 0 else -1.0
    return s_t * sign * pt, s_n * sign * pn


def hodge_square_table(max_m: int = 6) -> dict:
    """Sign c with ** a = c a, for each (m, p), measured on basis elements."""
    out = {}
    for m in range(1, max_m + 1):
        for p in range(m + 1):
            signs = set()
            for idx in itertools.combinations(range(1, m + 1), p):
                a = MultiVector.basis(m, *idx)
                b = hodge_star(hodge_star(a))
                signs.add(int(round(inner_product(a, b))))
            if len(signs) != 1:
                raise RuntimeError(f"** is not a multiple of the identity for m={m}, p={p}")
            out[(m, p)] = signs.pop()
    return out
