import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracharm import grassmann as G
from fracharm.errors import DimensionMismatch, GradeError, NonOrthonormalFrame
from fracharm.grassmann import MultiVector as MV

fast = settings(max_examples=40, deadline=None)


def e(m, *idx):
    return MV.basis(m, *idx)


def test_wedge_examples():
    assert G.wedge(e(3, 1), e(3, 2)) == e(3, 1, 2)
    assert G.wedge(e(3, 2), e(3, 1)) == -e(3, 1, 2)
    a = e(3, 1) + e(3, 2)
    b = e(3, 1) - e(3, 2)
    assert G.wedge(a, b) == -2 * e(3, 1, 2)
    with pytest.raises(DimensionMismatch):
        G.wedge(e(3, 1), e(4, 1))


def test_interior_examples():
    assert G.interior_mult(e(3, 1), e(3, 1, 2)) == -e(3, 2)
    assert G.interior_mult(e(3, 3), e(3, 1, 2)) == MV(3)
    # M-count for I = J = {1,2}: pairs (i,j) with j > i are (1,2) only
    assert G.interior_mult(e(3, 1, 2), e(3, 1, 2)) == -MV.scalar(3)
    with pytest.raises(GradeError):
        G.interior_mult(e(3, 1, 2), e(3, 1))


def _m_count_oracle(I, J):
    return sum(1 for i in I for j in J if j > i)


@pytest.mark.parametrize("m", [3, 4])
def test_interior_matches_stated_rule(m):
    subsets = [c for k in range(m + 1) for c in itertools.combinations(range(1, m + 1), k)]
    for I in subsets:
        for J in subsets:
            if len(I) > len(J):
                continue
            out = G.interior_mult(e(m, *I), e(m, *J))
            if not set(I) <= set(J):
                assert out == MV(m)
            else:
                rest = tuple(j for j in J if j not in I)
                assert out == (-1) ** _m_count_oracle(I, J) * e(m, *rest)


def test_hodge_examples():
    assert G.hodge_star(e(3, 1)) == e(3, 2, 3)
    assert G.hodge_star(MV.scalar(3)) == MV.top(3)
    table = G.hodge_square_table(5)
    for (m, p), sign in table.items():
        for idx in itertools.combinations(range(1, m + 1), p):
            a = e(m, *idx)
            assert G.hodge_star(G.hodge_star(a)) == sign * a
    assert set(table.values()) <= {-1, 1}


def _random_mv(m, seed, grade=None):
    rng = np.random.default_rng(seed)
    c = rng.integers(-3, 4, 1 << m).astype(float)
    mv = MV(m, c)
    return mv.grade_part(grade) if grade is not None else mv


@fast
@given(seed=st.integers(0, 10**6), m=st.integers(2, 5))
def test_wedge_associative_and_graded(seed, m):
    a, b, c = (_random_mv(m, seed + i) for i in range(3))
    assert G.wedge(G.wedge(a, b), c) == G.wedge(a, G.wedge(b, c))
    p, q = seed % (m + 1), (seed // 7) % (m + 1)
    x, y = _random_mv(m, seed, p), _random_mv(m, seed + 9, q)
    assert G.wedge(x, y) == (-1) ** (p * q) * G.wedge(y, x)
    v = MV.vector(np.random.default_rng(seed).standard_normal(m))
    assert G.wedge(v, v).allclose(MV(m))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_interior_is_adjoint_of_wedge_up_to_sign(m):
    for p in range(1, m + 1):
        for q in range(p, m + 1):
            signs = set()
            for a_idx in itertools.combinations(range(1, m + 1), p):
                for c_idx in itertools.combinations(range(1, m + 1), q - p):
                    for b_idx in itertools.combinations(range(1, m + 1), q):
                        a, b, c = e(m, *a_idx), e(m, *b_idx), e(m, *c_idx)
                        lhs = G.inner_product(G.interior_mult(a, b), c)
                        rhs = G.inner_product(b, G.wedge(a, c))
                        if rhs != 0:
                            signs.add(round(lhs / rhs))
                        else:
                            assert lhs == 0
            assert len(signs) == 1


def test_projector_coordinate_frame():
    eye = np.eye(3)
    pt, pn = G.projector_from_frame(eye[:2], eye[2:], [1, 2, 3])
    assert np.allclose(pt, [1, 2, 0], atol=1e-15) and np.allclose(pn, [0, 0, 3], atol=1e-15)


@pytest.mark.parametrize("m,k", [(m, k) for m in range(2, 7) for k in range(1, m)])
def test_projector_matches_gram(m, k):
    rng = np.random.default_rng(m * 10 + k)
    for _ in range(5):
        Q, _ = np.linalg.qr(rng.standard_normal((m, m)))
        v = rng.standard_normal(m)
        pt, pn = G.projector_from_frame(Q[:k], Q[k:], v)
        gram = Q[:k].T @ Q[:k]
        assert np.abs(pt - gram @ v).max() < 1e-12
        assert np.abs(pt + pn - v).max() < 1e-12
        assert np.abs(Q[k:] @ pt).max() < 1e-12
        # span(frame) has no normal part; P^T is idempotent
        w = Q[:k].T @ rng.standard_normal(k)
        assert np.abs(G.projector_from_frame(Q[:k], Q[k:], w)[1]).max() < 1e-12
        assert np.abs(G.projector_from_frame(Q[:k], Q[k:], pt)[0] - pt).max() < 1e-12
        assert np.abs(G.projector_from_frame(Q[:k], Q[k:], pt)[1]).max() < 1e-12


def test_projector_signs_recorded():
    assert G.projector_signs(3, 1) == (-1, -1)
    assert G.projector_signs(3, 2) == (1, 1)


def test_non_orthonormal_frame():
    with pytest.raises(NonOrthonormalFrame):
        G.projector_from_frame([[1, 0, 0], [1, 1, 0]], [[0, 0, 1]], [1, 2, 3])


def test_dimension_cap():
    with pytest.raises(DimensionMismatch):
        MV(9)
