import numpy as np
import pytest

from periodic_cnn import (
    FactorizationError, Filter, depth_bound, factorize, reconvolve, satisfies_depth_bound,
)


def test_reconvolve_examples():
    assert reconvolve([Filter((1.0, 1.0), 5), Filter((1.0, 1.0), 5)]).coefficients == (1.0, 2.0, 1.0)
    assert reconvolve([Filter.delta(4)]) == Filter.delta(4)


def test_reconvolve_needs_factors():
    with pytest.raises(FactorizationError):
        reconvolve([])


def test_binomial_square_round_trips():
    W = Filter((1.0, 2.0, 1.0), 5)
    result = factorize(W, 2)
    np.testing.assert_allclose(reconvolve(result.factors).padded(), W.padded(), atol=1e-12)
    assert result.depth < depth_bound(2, 2)
    assert all(f.support_size <= 3 for f in result.factors)


def test_constant_filter_is_one_factor():
    result = factorize(Filter((3.5,), 4), 3)
    assert result.factors == (Filter((3.5,), 4),)
    assert result.depth == 1
    assert satisfies_depth_bound(result.depth, 0, 3)


def test_low_order_zeros_become_shifts():
    # z^2 (2 + z): a pure delay followed by a linear factor
    W = Filter((0.0, 0.0, 2.0, 1.0), 6)
    result = factorize(W, 2)
    np.testing.assert_allclose(reconvolve(result.factors).padded(), W.padded(), atol=1e-12)
    assert satisfies_depth_bound(result.depth, W.degree, 2)


def test_complex_roots_give_real_quadratics():
    # 1 + z^2 has roots +-i
    result = factorize(Filter((1.0, 0.0, 1.0), 4), 2)
    assert result.depth == 1
    np.testing.assert_allclose(result.factors[0].coefficients, (1.0, 0.0, 1.0), atol=1e-12)


def test_full_width_edge_fits_in_one_factor():
    rng = np.random.default_rng(7)
    W = Filter(tuple(rng.uniform(-1, 1, size=6)), 6)
    result = factorize(W, 6)
    assert all(f.support_size <= 6 for f in result.factors)
    assert result.depth == 1


def test_random_filters_round_trip_with_depth_bound():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        M = int(rng.integers(4, 13))
        s = int(rng.integers(2, 5))
        W = Filter(tuple(rng.uniform(-1, 1, size=M + 1)), 16)
        result = factorize(W, s, 1e-8)
        rebuilt = reconvolve(result.factors).padded()
        assert np.max(np.abs(rebuilt - W.padded())) <= 1e-8
        assert result.residual <= 1e-8
        assert satisfies_depth_bound(result.depth, W.degree, s)
        assert all(f.support_size <= s + 1 for f in result.factors)
        assert all(np.isrealobj(np.asarray(f.coefficients)) for f in result.factors)


def test_rejects_narrow_edge_and_zero_filter():
    with pytest.raises(FactorizationError):
        factorize(Filter((1.0, 1.0), 3), 1)
    with pytest.raises(FactorizationError):
        factorize(Filter((), 3), 2)


def test_tolerance_violation_carries_residual():
    W = Filter(tuple(np.random.default_rng(0).uniform(-1, 1, size=11)), 12)
    with pytest.raises(FactorizationError) as info:
        factorize(W, 2, tolerance=-1.0)
    assert info.value.worst_residual >= 0.0
