from pathlib import Path

import numpy as np
import pytest

import isingcorr as ic
from isingcorr import Symbol
from isingcorr.toeplitz import _lu_det, toeplitz_matrix

FIXTURES = Path(__file__).parent / "fixtures" / "determinants.txt"


def load_fixture_records():
    records = []
    for line in FIXTURES.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        a1, a2, N, value, est, route = line.split()
        records.append((float(a1), float(a2), int(N), float(value), float(est), route))
    return records


# ----------------------------------------------------------------------
# Fourier coefficients
# ----------------------------------------------------------------------

def test_coeff_quadrature_vs_series(below, above):
    for params in (below, above, ic.direct(0.2, 0.5), ic.direct(0.2, 3.0)):
        grid = ic.make_grid(params, 64)
        for n in range(-6, 7):
            quad = ic.fourier_coeff(params, grid, n)
            series = ic.fourier_coeff_series(params, n)
            assert abs(quad - series) < 1e-12, (params.alpha1, params.alpha2, n)


def test_coeff_imaginary_residue_small(below, below_grid):
    for n in range(-8, 9):
        assert abs(ic.fourier_coeff(below, below_grid, n).imag) < 1e-13


def test_shifted_coeff_is_bit_identical(below, below_grid, above, above_grid):
    for params, grid in ((below, below_grid), (above, above_grid)):
        for n in (-2, 0, 3, 5):
            assert ic.fourier_coeff(params, grid, n, Symbol.PHI1) == \
                ic.fourier_coeff(params, grid, n - 1, Symbol.PHI)


def test_degenerate_coeffs_are_kronecker(degenerate):
    g = ic.make_grid(degenerate, 32)
    assert ic.fourier_coeff(degenerate, g, 0) == pytest.approx(1.0, abs=1e-15)
    for n in (-3, -1, 1, 2, 7):
        # rounding scale grows with the z**(-n-1) powers on the circle
        assert abs(ic.fourier_coeff(degenerate, g, n)) < 1e-14


def test_coeff_geometric_decay(below, below_grid):
    a2 = below.alpha2
    for n in range(1, 10):
        hi = abs(ic.fourier_coeff(below, below_grid, n + 1))
        lo = abs(ic.fourier_coeff(below, below_grid, n))
        assert hi <= a2 * lo * 1.0001
        hi_neg = abs(ic.fourier_coeff(below, below_grid, -n - 1))
        lo_neg = abs(ic.fourier_coeff(below, below_grid, -n))
        assert hi_neg <= a2 * lo_neg * 1.0001


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------

def test_det_size_one_is_a0(below, below_grid):
    assert ic.det_DN(below, 1, below_grid) == \
        pytest.approx(ic.fourier_coeff(below, below_grid, 0).real, abs=1e-16)


def test_det_degenerate_is_identity(degenerate):
    g = ic.make_grid(degenerate, 32)
    for N in (1, 3, 6):
        assert ic.det_DN(degenerate, N, g) == pytest.approx(1.0, abs=1e-14)


def test_frozen_dual_route_regressions():
    for a1, a2, N, value, est, route in load_fixture_records():
        params = ic.direct(a1, a2)
        if route == "quadrature":
            got = ic.det_DN(params, N, ic.make_grid(params, 128))
        else:
            got = ic.det_DN(params, N, route="series")
        assert got == pytest.approx(value, abs=1e-13), (a1, a2, N, route)
        assert est < 1e-11


def test_dual_routes_agree_at_desk_grid(below):
    # the [DERIVED] reference case: quadrature vs series at N = 4
    quad = ic.det_DN(below, 4, ic.make_grid(below, 64))
    series = ic.det_DN(below, 4, route="series")
    assert abs(quad - series) < 1e-11


def test_dhat_regime_guard(below):
    with pytest.raises(ic.RegimeMismatch):
        ic.det_DhatN(below, 3)


def test_shifted_matrix_structure(above, above_grid):
    B = toeplitz_matrix(above, 3, Symbol.PHI1, above_grid)
    for i in range(3):
        for j in range(3):
            assert B[i, j] == ic.fourier_coeff(above, above_grid, i - j - 1)


def test_minor_of_shifted_matrix_is_plain_matrix(above, above_grid):
    N = 4
    B = toeplitz_matrix(above, N + 1, Symbol.PHI1, above_grid)
    A = toeplitz_matrix(above, N, Symbol.PHI, above_grid)
    assert np.array_equal(B[1:, :-1], A)


def test_dhat_szego_convergence(above, above_grid):
    target = ic.s_hat_infinity(above)
    gaps = [abs((-1) ** N * ic.det_DhatN(above, N, above_grid) - target)
            for N in range(2, 9)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_det_szego_convergence_below(below, below_grid):
    target = ic.s_infinity(below)
    gaps = [abs(ic.det_DN(below, N, below_grid) - target) for N in range(2, 11)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_singular_matrix_detected():
    with pytest.raises(ic.SingularMatrix):
        _lu_det(np.ones((3, 3), dtype=complex))


# ----------------------------------------------------------------------
# linear solves
# ----------------------------------------------------------------------

def test_solve_degenerate_is_unit_vector(degenerate):
    g = ic.make_grid(degenerate, 32)
    x = ic.solve_x(degenerate, 4, "A", g)
    expected = np.zeros(5)
    expected[0] = 1.0
    assert np.max(np.abs(x - expected)) < 1e-14


def test_cramer_consistency_both_regimes(below, below_grid, above, above_grid):
    for params, grid in ((below, below_grid), (above, above_grid)):
        for N in range(1, 9):
            x0 = ic.solve_x(params, N, "A", grid)[0]
            ratio = ic.det_DN(params, N, grid) / ic.det_DN(params, N + 1, grid)
            assert abs(x0 * ic.det_DN(params, N + 1, grid) - ic.det_DN(params, N, grid)) \
                < 1e-10 * abs(ic.det_DN(params, N, grid))
            assert x0 == pytest.approx(ratio, rel=1e-11)


def test_shifted_solve_det_ratio(above, above_grid):
    for N in range(1, 6):
        x = ic.solve_x(above, N, "B", above_grid)
        lhs = (-1) ** N * x[N]
        rhs = ic.det_DN(above, N, above_grid) / ic.det_DhatN(above, N + 1, above_grid)
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_solve_matrix_b_needs_above(below):
    with pytest.raises(ic.RegimeMismatch):
        ic.solve_x(below, 3, "B")
    with pytest.raises(ValueError):
        ic.solve_x(below, 3, "C")
