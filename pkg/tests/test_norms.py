import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracharm import norms, spectral
from fracharm.errors import BadExponent, MeanNotZero
from fracharm.littlewood_paley import DyadicPartition
from fracharm.norms import INF
from fracharm.spectral import PeriodicGrid

G1 = PeriodicGrid(1, 64)
G3 = PeriodicGrid(3, 16)
fast = settings(max_examples=20, deadline=None)


def x1(grid):
    return grid.coordinates()[0]


def test_lp_examples():
    assert norms.lp_norm(G1, np.full(G1.shape, 2.0), 1) == pytest.approx(4 * math.pi, rel=1e-14)
    assert norms.lp_norm(G1, np.cos(x1(G1)), 2) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    pm = np.where(np.arange(64) % 3, 1.0, -1.0)
    assert norms.lp_norm(G1, pm, INF) == 1.0
    with pytest.raises(BadExponent):
        norms.lp_norm(G1, pm, 0.5)


def test_rearrangement():
    h, e = norms.decreasing_rearrangement([4, 3, 2, 1])
    assert h.tolist() == [4, 3, 2, 1] and e.tolist() == [1, 2, 3, 4]
    h, e = norms.decreasing_rearrangement(np.full(5, 2.0), 0.5)
    assert np.all(h == 2.0) and e[-1] == 2.5
    f = np.random.default_rng(0).standard_normal(200)
    h, _ = norms.decreasing_rearrangement(f)
    assert np.all(np.diff(h) <= 0)
    for t in (0.1, 0.5, 1.0, 2.0):
        assert np.sum(np.abs(f) > t) == np.sum(h > t)


def test_lorentz_examples():
    assert norms.lorentz_norm_values([4, 3, 2, 1], 1.0, 2, INF) == pytest.approx(3 * math.sqrt(2), abs=1e-12)
    for p in (1.0, 2.0, 4.0):
        assert norms.lorentz_norm_values(np.full(7, 3.0), 0.5, p, INF) == pytest.approx(3 * 3.5 ** (1 / p))
    with pytest.raises(BadExponent):
        norms.lorentz_norm_values([1.0], 1.0, INF, 2)
    with pytest.raises(BadExponent):
        norms.lorentz_norm_values([1.0], 1.0, 2, 0.5)


@pytest.mark.parametrize("grid", [G1, G3], ids=str)
@fast
@given(seed=st.integers(0, 10_000), p=st.sampled_from([1.0, 1.5, 2.0, 3.0, 7.0]))
def test_lorentz_diagonal_is_lp(grid, seed, p):
    f = spectral.gaussian_random_field(grid, 0.5, seed)
    assert norms.lorentz_norm(grid, f, p, p) == pytest.approx(norms.lp_norm(grid, f, p), rel=1e-12)


def test_maximal_function():
    assert np.allclose(norms.maximal_function(G1, np.full(G1.shape, -2.5)), 2.5, atol=1e-14)
    f = spectral.gaussian_random_field(G3, 1.0, 1)
    assert np.all(norms.maximal_function(G3, f) >= np.abs(f))
    spike = np.zeros(G1.shape)
    spike[0] = 1.0
    M = norms.maximal_function(G1, spike)
    # direct enumeration: at distance d cells the best ball has 2k-1 cells, k = d + 1
    for d in range(1, 20):
        assert M[d] == pytest.approx(1.0 / (2 * d + 1), rel=1e-12)


def test_sobolev_examples():
    c = np.cos(x1(G3))
    assert norms.sobolev_norm(G3, c, 1.5) == pytest.approx(norms.lp_norm(G3, c, 2), rel=1e-13)
    f = spectral.gaussian_random_field(G1, 1.0, 2)
    assert norms.sobolev_norm(G1, 2 * f, 0.7) == pytest.approx(2 * norms.sobolev_norm(G1, f, 0.7), rel=1e-14)
    c2 = np.cos(2 * x1(G1))
    assert norms.sobolev_norm(G1, c2, 1) == pytest.approx(2 * norms.lp_norm(G1, c2, 2), rel=1e-13)
    with pytest.raises(MeanNotZero):
        norms.sobolev_norm(G1, 1 + c2, -1)
    assert norms.sobolev_norm(G1, c2, 1, 2, INF) == pytest.approx(norms.lorentz_norm(G1, 2 * c2, 2, INF))


def test_besov_triebel_hardy():
    P = DyadicPartition(G1)
    f = np.cos(4 * x1(G1))  # |xi| = 4 lies in shell 2 only: psi_2(4) = 1
    shells = P.shells_of(f)
    j = 2
    assert np.abs(shells[j] - f).max() < 1e-14
    for s, p in ((0.5, 2.0), (1.0, 1.0)):
        expect = 2.0 ** (j * s) * norms.lp_norm(G1, shells[j], p)
        assert norms.besov_norm(P, f, s, p, 2) == pytest.approx(expect, rel=1e-12)
        assert norms.triebel_norm(P, f, s, p, 2) == pytest.approx(expect, rel=1e-12)
    assert norms.hardy_norm(P, f) == pytest.approx(norms.lp_norm(G1, shells[j], 1), rel=1e-12)
    cos1 = np.cos(x1(G1))
    sh = P.shells_of(cos1)
    assert norms.besov_norm(P, cos1, 0, INF, INF) == pytest.approx(max(np.abs(s).max() for s in sh))
    assert norms.hardy_norm(P, np.zeros(G1.shape)) == 0.0
    with pytest.raises(BadExponent):
        norms.besov_norm(P, cos1, 0, 0.5, 2)


@pytest.mark.parametrize("grid", [G1, G3], ids=str)
def test_b022_equals_f022_and_partition_constant(grid):
    P = DyadicPartition(grid)
    for seed in range(5):
        f = spectral.gaussian_random_field(grid, 0.5, seed)
        b, t = norms.besov_norm(P, f, 0, 2, 2), norms.triebel_norm(P, f, 0, 2, 2)
        assert b == pytest.approx(t, rel=1e-12)
        assert 1 / math.sqrt(3) <= b / norms.lp_norm(grid, f, 2) <= 1 + 1e-12


def test_hardy_dominates_l1():
    P = DyadicPartition(G1)
    ratios = [norms.lp_norm(G1, f, 1) / norms.hardy_norm(P, f)
              for f in (spectral.gaussian_random_field(G1, 0.5, s) for s in range(10))]
    assert max(ratios) <= 2.0


def test_bmo_examples():
    assert norms.bmo_norm(G1, np.full(G1.shape, 3.0)) == 0.0
    a = norms.bmo_norm(G1, np.cos(x1(G1)))
    fine = G1.refined(2)
    b = norms.bmo_norm(fine, np.cos(x1(fine)))
    assert 0.3 <= a <= 0.7 and abs(b / a - 1) <= 0.1
    assert 0.3 <= norms.bmo_norm(G3, np.cos(x1(G3))) <= 0.7


@fast
@given(seed=st.integers(0, 10_000))
def test_bmo_bounded_by_twice_sup(seed):
    f = spectral.gaussian_random_field(G3, 0.5, seed)
    assert norms.bmo_norm(G3, f) <= 2 * np.abs(f).max()


def test_lorentz_holder_examples():
    f = np.where(np.arange(64) < 32, 1.0, 0.0)
    g = 1.0 - f
    assert norms.lorentz_holder_check(G1, f, g, (2, 2, 2, 2)) == 0.0
    bump = np.exp(-((x1(G1) - math.pi) ** 2) * 4)
    assert norms.lorentz_holder_check(G1, bump, bump, (2, 2, 2, 2)) <= 4
    c = np.ones(G1.shape)
    for ex in ((2, 2, 2, 2), (3, 3, 6, 6), (4, INF, 4, INF)):
        assert norms.lorentz_holder_check(G1, c, 2 * c, ex) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("grid", [G1, G3], ids=str)
@fast
@given(seed=st.integers(0, 10_000), a=st.floats(-4, 4).filter(lambda v: abs(v) > 1e-3))
def test_homogeneity_and_triangle(grid, seed, a):
    P = DyadicPartition(grid)
    f = spectral.gaussian_random_field(grid, 1.0, seed)
    g = spectral.gaussian_random_field(grid, 1.0, seed + 1)
    fns = [
        lambda h: norms.lp_norm(grid, h, 3),
        lambda h: norms.lorentz_norm(grid, h, 2, 1),
        lambda h: norms.sobolev_norm(grid, h, 0.5),
        lambda h: norms.besov_norm(P, h, 0.5, 2, 1),
        lambda h: norms.triebel_norm(P, h, 0.0, 2, 2),
        lambda h: norms.bmo_norm(grid, h),
    ]
    for nm in fns:
        assert nm(a * f) == pytest.approx(abs(a) * nm(f), rel=1e-10)
        assert nm(f + g) <= (nm(f) + nm(g)) * (1 + 1e-10)


def test_norm_table_rows():
    rows = norms.norm_table(G1, spectral.gaussian_random_field(G1, 0.5, 0))
    assert {r.name for r in rows} >= {"L2", "Lorentz", "Hdot", "Besov", "Triebel", "Hardy", "BMO"}
    assert all(r.value >= 0 for r in rows)
    assert rows[0].row()[0] == "L1"
