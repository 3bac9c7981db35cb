import math

import numpy as np
import pytest

import isingcorr as ic
from isingcorr import Kind, Regime


def coupling_for_sinh2(target):
    """K with sinh(2K)^2 = target, so the diagonal map is easy to invert."""
    return 0.5 * math.asinh(math.sqrt(target))


def test_diagonal_map_below():
    K = coupling_for_sinh2(2.0)
    p = ic.from_couplings(Kind.DIAGONAL, K, K)
    assert p.alpha1 == 0.0
    assert p.alpha2 == pytest.approx(0.5, abs=1e-14)
    assert p.regime is Regime.BELOW
    assert p.t == pytest.approx(0.25, abs=1e-14)


def test_diagonal_map_above():
    K = coupling_for_sinh2(0.4)
    p = ic.from_couplings(Kind.DIAGONAL, K, K)
    assert p.alpha2 == pytest.approx(2.5, abs=1e-12)
    assert p.regime is Regime.ABOVE


def test_row_map_product_identity():
    p = ic.from_couplings(Kind.ROW, 0.3, 0.4)
    assert p.alpha1 == pytest.approx(math.exp(-0.8) * math.tanh(0.3), rel=1e-15)
    assert p.alpha2 == pytest.approx(math.exp(-0.8) / math.tanh(0.3), rel=1e-15)
    assert p.alpha1 * p.alpha2 == pytest.approx(math.exp(-1.6), rel=1e-14)


def test_row_alphas_ratio_is_tanh_squared():
    rng = np.random.default_rng(3)
    for _ in range(50):
        K1 = float(rng.uniform(0.05, 2.0))
        K2 = float(rng.uniform(0.05, 2.0))
        p = ic.from_couplings(Kind.ROW, K1, K2)
        assert p.alpha1 / p.alpha2 == pytest.approx(math.tanh(K1) ** 2, rel=1e-14)
        assert p.alpha1 < p.alpha2


def test_diagonal_alpha1_exactly_zero():
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = ic.from_couplings(Kind.DIAGONAL, float(rng.uniform(0.1, 1.5)),
                              float(rng.uniform(0.1, 1.5)))
        assert p.alpha1 == 0.0


def test_regime_is_function_of_alpha2_only():
    assert ic.direct(0.0, 0.5).regime is Regime.BELOW
    assert ic.direct(0.2, 3.0).regime is Regime.ABOVE
    assert ic.direct(0.49, 0.5).regime is Regime.BELOW


def test_critical_point_rejected():
    K = coupling_for_sinh2(1.0)
    with pytest.raises(ic.CriticalPoint):
        ic.from_couplings(Kind.DIAGONAL, K, K)
    with pytest.raises(ic.CriticalPoint):
        ic.direct(0.0, 1.0)
    with pytest.raises(ic.CriticalPoint):
        ic.direct(0.0, 1.0 + 1e-13)


def test_invalid_couplings():
    for K1, K2 in ((0.0, 0.4), (-1.0, 0.4), (0.3, 0.0), (math.inf, 0.4)):
        with pytest.raises(ic.InvalidCoupling):
            ic.from_couplings(Kind.DIAGONAL, K1, K2)


def test_direct_constructor():
    assert ic.direct(0.0, 0.5).regime is Regime.BELOW
    assert ic.direct(0.2, 3.0).regime is Regime.ABOVE
    with pytest.raises(ic.InvalidAlphas):
        ic.direct(0.5, 0.4)
    with pytest.raises(ic.InvalidAlphas):
        ic.direct(-0.1, 0.5)
    with pytest.raises(ic.InvalidAlphas):
        ic.direct(1.2, 3.0)
    # degenerate equal alphas are allowed here for exactness checks
    assert ic.direct(0.3, 0.3).alpha1 == 0.3


def test_t_reported_for_diagonal_only():
    assert ic.direct(0.2, 0.5).t is None
    assert ic.from_couplings(Kind.ROW, 0.3, 0.4).t is None
    assert ic.diagonal_from_alpha2(0.5).t == pytest.approx(0.25)


def test_params_hashable_and_frozen():
    p = ic.diagonal_from_alpha2(0.5)
    assert hash(p) == hash(ic.diagonal_from_alpha2(0.5))
    with pytest.raises(AttributeError):
        p.alpha2 = 0.7
