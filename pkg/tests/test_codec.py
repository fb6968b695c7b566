import json

import numpy as np
import pytest

from periodic_cnn import (
    PcnnError, ReluKnotSequence, RidgeSpec, build_knots, build_ridge_network, evaluate, make_profile,
)
from periodic_cnn.codec import (
    decode_filter, decode_network, decode_ridge, encode_knots, encode_network,
)
from periodic_cnn.ridge import interpolant_eval


def test_network_survives_json():
    spec = RidgeSpec((1, 0, -1, 1, 0), make_profile("abs", center=0.1))
    net, _ = build_ridge_network(spec, 2, 8, [[0.0, 0.5]] * 5, n_samples=200)
    restored = decode_network(json.loads(json.dumps(encode_network(net))))
    assert restored == net
    x = np.random.default_rng(0).uniform(0.0, 0.5, size=(50, 5))
    np.testing.assert_array_equal(evaluate(restored, x), evaluate(net, x))


def test_knots_survive_json():
    knots = build_knots(make_profile("sin", (0.0, 1.0)), 12)
    restored = ReluKnotSequence(**json.loads(json.dumps(encode_knots(knots))))
    assert restored == knots
    y = np.linspace(0.0, 1.0, 33)
    np.testing.assert_array_equal(interpolant_eval(restored, y), interpolant_eval(knots, y))


def test_decoders_fill_defaults():
    assert decode_filter({"coefficients": [1, 0, 0], "period": 4}).coefficients == (1.0,)
    ridge = decode_ridge({"direction": [1, 2], "coefficients": [[1, 0.5], [-1, 0.5, 0.0]]})
    assert ridge.profile_coeffs == ((1, 0.5 + 0j), (-1, 0.5 + 0j))


@pytest.mark.parametrize("decoder, data", [
    (decode_filter, {"coefficients": [1.0]}),
    (decode_network, {"width": 3, "layers": []}),
    (decode_network, {"width": 3, "layers": [{"bias": [0, 0, 0]}], "readout": [0, 0, 0]}),
    (decode_ridge, {"direction": [1, 0]}),
])
def test_missing_keys_are_rejected(decoder, data):
    with pytest.raises(PcnnError):
        decoder(data)
