import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracharm import spectral
from fracharm.errors import GridMismatch, MeanNotZero, NonHermitianSymbol, OrderTooHigh
from fracharm.spectral import FourierMultiplier, PeriodicGrid

GRIDS = [PeriodicGrid(1, 64), PeriodicGrid(3, 16)]
fast = settings(max_examples=25, deadline=None)


def rf(grid, s=1.0, seed=0):
    return spectral.gaussian_random_field(grid, s, seed)


def x1(grid):
    return grid.coordinates()[0]


@pytest.mark.parametrize("n,N", [(1, 6), (1, 9), (2, 16), (3, 7)])
def test_grid_validation(n, N):
    with pytest.raises(ValueError):
        PeriodicGrid(n, N)


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_cell_measure(grid):
    assert grid.cell_measure * grid.N**grid.n == pytest.approx((2 * math.pi) ** grid.n, rel=1e-15)


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_to_frequency_single_mode(grid):
    c = spectral.to_frequency(grid, np.cos(x1(grid)))
    support = np.argwhere(np.abs(c) > 1e-9 * grid.size)
    expected = {tuple(int(k) % grid.N if i == 0 else 0 for i in range(grid.n)) for k in (1, -1)}
    assert {tuple(s) for s in support} == expected
    vals = [abs(c[s]) for s in expected]
    assert vals[0] == pytest.approx(vals[1], rel=1e-14)


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_constant_has_only_zero_mode(grid):
    c = spectral.to_frequency(grid, np.ones(grid.shape))
    c0 = c[(0,) * grid.n]
    c[(0,) * grid.n] = 0
    assert abs(c0) == pytest.approx(grid.size)
    assert np.abs(c).max() < 1e-9


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_round_trip_and_plancherel(grid):
    f = np.random.default_rng(1).standard_normal(grid.shape)
    c = spectral.to_frequency(grid, f)
    back = spectral.from_frequency(grid, c)
    assert np.abs(back - f).max() / np.abs(f).max() < 1e-12
    lhs = np.sum(f**2) * grid.cell_measure
    rhs = (2 * math.pi) ** grid.n * np.sum(np.abs(c / grid.size) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_identity_and_laplacian_symbols(grid):
    f = rf(grid)
    assert np.allclose(spectral.apply_multiplier(grid, f, np.ones(grid.shape)), f, atol=1e-13)
    g = np.cos(2 * x1(grid))
    out = spectral.apply_multiplier(grid, g, grid.abs_xi**2)
    assert np.abs(out - 4 * g).max() < 1e-12


def test_multiplier_composition():
    grid = GRIDS[1]
    f = rf(grid, 0.5, 3)
    a = FourierMultiplier(grid, lambda k1, k2, k3: 1.0 / (1.0 + k1**2 + 2 * k3**2))
    b = FourierMultiplier(grid, lambda k1, k2, k3: np.cos(k2) + k1**2)
    assert np.abs(b(a(f)) - (a * b)(f)).max() < 1e-12 * np.abs(f).max()


def test_non_hermitian_symbol_rejected():
    grid = GRIDS[0]
    with pytest.raises(NonHermitianSymbol):
        FourierMultiplier(grid, 1j * np.abs(grid.wavenumbers[0]).astype(float))
    # i xi is Hermitian once the Nyquist entry is cleared
    sym = 1j * grid.wavenumbers[0].astype(float)
    sym[grid.N // 2] = 0
    FourierMultiplier(grid, sym)


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_fractional_laplacian_eigenfunctions(grid):
    c1, c2 = np.cos(x1(grid)), np.cos(2 * x1(grid))
    assert np.abs(spectral.fractional_laplacian(grid, c1, 0.75) - c1).max() < 1e-12
    assert np.abs(spectral.fractional_laplacian(grid, c2, 1.5) - 8 * c2).max() < 1e-11


@pytest.mark.parametrize("grid", GRIDS, ids=str)
@fast
@given(s=st.floats(-1.5, 1.5), t=st.floats(-1.5, 1.5))
def test_fractional_laplacian_composition(grid, s, t):
    f = rf(grid, 1.0, 5)
    a = spectral.fractional_laplacian(grid, spectral.fractional_laplacian(grid, f, s), t)
    b = spectral.fractional_laplacian(grid, f, s + t)
    assert np.abs(a - b).max() <= 1e-11 * max(np.abs(b).max(), np.abs(a).max(), 1e-300) + 1e-14


def test_negative_order_needs_mean_zero():
    grid = GRIDS[0]
    with pytest.raises(MeanNotZero):
        spectral.fractional_laplacian(grid, 1 + np.cos(x1(grid)), -0.5)
    spectral.fractional_laplacian(grid, 1 + np.cos(x1(grid)), 0.5)
    out = spectral.fractional_laplacian(grid, 1 + np.cos(x1(grid)), -0.5, strict=False)
    assert np.abs(out - np.cos(x1(grid))).max() < 1e-12


@pytest.mark.parametrize("grid", GRIDS, ids=str)
@fast
@given(s=st.floats(-1.0, 2.0), seed=st.integers(0, 1000))
def test_fractional_laplacian_self_adjoint(grid, s, seed):
    f, g = rf(grid, 1.0, seed), rf(grid, 1.0, seed + 1)
    a = spectral.inner(grid, spectral.fractional_laplacian(grid, f, s), g)
    b = spectral.inner(grid, f, spectral.fractional_laplacian(grid, g, s))
    scale = spectral.inner(grid, np.abs(spectral.fractional_laplacian(grid, f, s)), np.abs(g))
    assert abs(a - b) <= 1e-11 * scale


def test_riesz_single_modes():
    grid = PeriodicGrid(1, 32)
    x = x1(grid)
    assert np.abs(spectral.riesz_transform(grid, np.cos(x))[0] + np.sin(x)).max() < 1e-14
    assert np.abs(spectral.riesz_transform(grid, np.sin(x))[0] - np.cos(x)).max() < 1e-14
    assert np.abs(spectral.riesz_contraction(grid, spectral.riesz_transform(grid, np.cos(x))) - np.cos(x)).max() < 1e-14


@pytest.mark.parametrize("grid", GRIDS, ids=str)
def test_riesz_identities(grid):
    f = rf(grid, 1.0, 11)
    R = spectral.riesz_transform(grid, f)
    twice = sum(spectral.riesz_transform(grid, R[k])[k] for k in range(grid.n))
    assert np.abs(twice + f).max() < 1e-12 * np.abs(f).max()
    assert np.abs(spectral.riesz_contraction(grid, R) - f).max() < 1e-12 * np.abs(f).max()
    assert not np.any(spectral.riesz_contraction(grid, np.zeros((grid.n,) + grid.shape)))


def test_riesz_contraction_grid_mismatch():
    grid = GRIDS[1]
    with pytest.raises(GridMismatch):
        spectral.riesz_contraction(grid, np.zeros((2,) + grid.shape))
    with pytest.raises(GridMismatch):
        spectral.riesz_contraction(grid, np.zeros((3, 8, 8, 8)))


def test_partial_derivatives():
    grid = GRIDS[1]
    X, Y, _ = grid.coordinates()
    assert np.abs(spectral.partial_derivative(grid, np.sin(X), (1, 0, 0)) - np.cos(X)).max() < 1e-13
    assert np.abs(spectral.partial_derivative(grid, np.cos(X), (2, 0, 0)) + np.cos(X)).max() < 1e-13
    mixed = spectral.partial_derivative(grid, np.cos(X) * np.cos(Y), (1, 1, 0))
    assert np.abs(mixed - np.sin(X) * np.sin(Y)).max() < 1e-13
    with pytest.raises(OrderTooHigh):
        spectral.partial_derivative(grid, np.sin(X), (5, 4, 0))


def test_random_field_determinism_and_mean():
    grid = GRIDS[1]
    a, b = rf(grid, 1.5, 42), rf(grid, 1.5, 42)
    assert np.array_equal(a, b)
    assert abs(a.mean()) < 1e-14
    assert not np.array_equal(a, rf(grid, 1.5, 43))


def test_random_field_nested_under_refinement():
    coarse, fine = PeriodicGrid(1, 32), PeriodicGrid(1, 64)
    ca = spectral.to_frequency(coarse, rf(coarse, 1.0, 7)) / coarse.size
    fa = spectral.to_frequency(fine, rf(fine, 1.0, 7)) / fine.size
    for k in range(1, 15):
        assert ca[k] == pytest.approx(fa[k], abs=1e-15)


def test_random_field_ensemble_concentration():
    grid = PeriodicGrid(1, 128)
    vals = np.array([np.linalg.norm(spectral.fractional_laplacian(grid, rf(grid, 0.5, s), 0.25)) for s in range(100)])
    med = np.median(vals)
    assert vals.min() >= 0.2 * med and vals.max() <= 5.0 * med


def test_random_field_shell_decay():
    from fracharm.littlewood_paley import DyadicPartition

    grid = PeriodicGrid(1, 256)
    P = DyadicPartition(grid)
    shells = P.shells_of(rf(grid, 6.0, 1))
    norms = [np.abs(s).max() for s in shells]
    for j in range(3, len(norms) - 1):
        assert norms[j + 1] <= 2.0**-4 * norms[j] * 1.5


@pytest.mark.parametrize("grid", GRIDS, ids=str)
@fast
@given(a=st.floats(-3, 3), b=st.floats(-3, 3))
def test_linearity(grid, a, b):
    f, g = rf(grid, 1.0, 1), rf(grid, 1.0, 2)
    for op in (
        lambda h: spectral.fractional_laplacian(grid, h, 0.7),
        lambda h: spectral.riesz_transform(grid, h),
        lambda h: spectral.gradient(grid, h),
    ):
        lhs = op(a * f + b * g)
        rhs = a * op(f) + b * op(g)
        assert np.abs(lhs - rhs).max() <= 1e-12 * (1 + np.abs(rhs).max())
