import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from periodic_cnn import (
    KnotError, ProfileSpec, ReluKnotSequence, build_knots, check_order, flat_sum_eval,
    interpolant_eval, make_profile, nested_eval, sup_error,
)
from periodic_cnn.ridge import knot_grid, relu

PAIRS = ReluKnotSequence(((1.0, 0.5), (1.0, 0.0)))

# thresholds 0.1 then 0.5: the outer ReLU clips the first partial sum
UNORDERED_POSITIVE = ReluKnotSequence(((1.0, 0.1), (1.0, 0.5)))


def test_flat_sum_examples():
    assert flat_sum_eval(ReluKnotSequence(()), 0.3) == 0.0
    assert flat_sum_eval(PAIRS, 1.0) == pytest.approx(1.5)
    assert flat_sum_eval(PAIRS, 0.25) == pytest.approx(0.25)


def test_nested_examples():
    assert nested_eval(ReluKnotSequence(((2.0, 1.0),)), 0.8) == pytest.approx(relu(2.0 * 0.8 - 1.0))
    assert nested_eval(PAIRS, 1.0) == pytest.approx(1.5)
    assert nested_eval(PAIRS, 0.25) == pytest.approx(0.25)


def test_check_order():
    assert check_order(ReluKnotSequence(((1.0, 0.9), (2.0, 1.0), (1.0, 0.1))))
    assert not check_order(ReluKnotSequence(((1.0, 0.1), (1.0, 0.5))))
    assert check_order(ReluKnotSequence(((3.0, 1.0),)))
    # ties are ordered
    assert check_order(ReluKnotSequence(((1.0, 0.5), (2.0, 1.0))))


def test_check_order_rejects_nonpositive_weights():
    with pytest.raises(KnotError):
        check_order(ReluKnotSequence(((1.0, 0.5), (0.0, 0.1))))


ordered_sequences = st.lists(
    st.tuples(st.floats(0.01, 2.0), st.floats(-2.0, 2.0)), min_size=1, max_size=12
).map(lambda pairs: ReluKnotSequence(tuple(
    (w, w * t) for w, t in sorted(pairs, key=lambda p: p[1], reverse=True)
)))


@settings(max_examples=100, deadline=None)
@given(ordered_sequences)
def test_collapsing_identity(knots):
    y = np.linspace(-2.5, 2.5, 1000)
    np.testing.assert_allclose(nested_eval(knots, y), flat_sum_eval(knots, y), atol=1e-12, rtol=0)


def test_ordering_is_necessary():
    y = np.linspace(0.0, 1.0, 101)
    assert not check_order(UNORDERED_POSITIVE)
    assert np.max(np.abs(nested_eval(UNORDERED_POSITIVE, y) - flat_sum_eval(UNORDERED_POSITIVE, y))) > 0.1


def test_unordered_witness_found_by_search():
    rng = np.random.default_rng(11)
    y = np.linspace(-2.0, 2.0, 401)
    for _ in range(200):
        w = rng.uniform(0.1, 2.0, size=3)
        t = rng.uniform(-1.0, 1.0, size=3)
        knots = ReluKnotSequence(tuple(zip(w, w * t)))
        if not check_order(knots) and np.max(np.abs(nested_eval(knots, y) - flat_sum_eval(knots, y))) > 1e-6:
            return
    pytest.fail("no unordered counterexample found")


def test_relu_knot_profile_is_reproduced_exactly():
    profile = make_profile("relu-shift", (0.0, 1.0), shift=0.5)
    knots = build_knots(profile, 2)
    assert check_order(knots)
    assert sup_error(profile, knots) <= 1e-12


def test_piecewise_linear_profile_is_exact():
    breaks = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    vals = np.array([0.3, -0.2, 0.9, 0.1, 0.4])
    profile = ProfileSpec(lambda y: np.interp(y, breaks, vals), (0.0, 1.0))
    knots = build_knots(profile, 4)
    assert sup_error(profile, knots) <= 1e-10


def test_interpolant_matches_profile_at_knots():
    profile = make_profile("cos", (-0.3, 1.2))
    knots = build_knots(profile, 17)
    t = knot_grid(profile.domain, 17)
    np.testing.assert_allclose(interpolant_eval(knots, t), profile(t), atol=1e-10)


def test_flat_sum_plus_intercept_interpolates_convex_profile():
    profile = ProfileSpec(lambda y: (y + 0.2) ** 2, (0.0, 1.0))
    knots = build_knots(profile, 10)
    assert set(knots.signs) == {1}
    t = knot_grid(profile.domain, 10)
    np.testing.assert_allclose(knots.intercept + flat_sum_eval(knots, t), profile(t), atol=1e-10)


def test_build_knots_emits_ordered_positive_pairs():
    knots = build_knots(make_profile("gaussian-periodic", (0.0, 1.0)), 32)
    assert all(w > 0 for w, _ in knots.pairs)
    assert check_order(knots)
    for sign in (1, -1):
        assert check_order(knots.subsequence(sign))


def test_cos_error_decreases_and_meets_interpolation_bound():
    profile = make_profile("cos", (0.0, 1.0))
    errors = [sup_error(profile, build_knots(profile, n)) for n in (8, 16, 32, 64)]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert errors[-1] <= 4 * (2 * np.pi) ** 2 / 64**2


def test_build_knots_rejects_bad_input():
    with pytest.raises(KnotError):
        build_knots(make_profile("cos"), 0)
    with pytest.raises(KnotError):
        build_knots(make_profile("cos", (1.0, 1.0)), 4)
    with pytest.raises(KnotError):
        build_knots(ProfileSpec(lambda y: np.log(y), (0.0, 1.0)), 4)
