"""Periodic CNNs and the constructive ridge-function network.

A layer maps h to sigma(w * h - b) with a period-d filter w and a bias b in
R^d; the network output is the readout c . h^(J). All layers keep width d.

build_ridge_network() realizes f(a . x) = phi(a . x) in four stages:

1. W is the reversal of a, factored into short filters. Biases are picked by
   interval arithmetic so every ReLU is inactive on the box; the last of these
   layers leaves y + A (y = a . x) in coordinate d - 1 and zeros elsewhere,
   since (W * x)_{d-1} = a . x.
2. Rising knots run through filters [1, w]: coordinate 0 accumulates
   sigma(acc + w (y + A) - b'), the nested form that collapses to a flat sum.
3. Falling knots run through filters [1, 0, w] accumulating in coordinate 1.
4. A nonzero intercept phi(y_min) gets a last identity layer whose bias -1 turns
   one zero coordinate into the constant 1; the readout weights it.

Every non-live coordinate of a layer is zeroed by one shared large bias, so
biases only differ from the repeated middle value at head and tail coordinates.
"""

from dataclasses import dataclass

import numpy as np

from .circulant import Filter, as_matrix, circular_convolve, compose_filters
from .errors import ConstructionError, DimensionError
from .factorization import factorize
from .ridge import ProfileSpec, ReluKnotSequence, build_knots, interpolant_eval, relu, sup_error


@dataclass(frozen=True)
class BiasVector:
    values: tuple[float, ...]
    edge_width: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def has_repeated_middle(self, atol: float = 0.0) -> bool:
        """Components s+1 .. d-s (1-based) are all equal."""
        middle = self.values[self.edge_width : len(self.values) - self.edge_width]
        return all(abs(v - middle[0]) <= atol for v in middle) if middle else True

    @classmethod
    def constant(cls, value: float, d: int, s: int) -> "BiasVector":
        return cls((float(value),) * d, s)


@dataclass(frozen=True)
class Layer:
    filter: Filter
    bias: BiasVector


@dataclass(frozen=True)
class PeriodicCnn:
    layers: tuple[Layer, ...]
    width: int
    readout: tuple[float, ...]
    edge_width: int = 2

    def __post_init__(self):
        object.__setattr__(self, "readout", tuple(float(c) for c in self.readout))
        if len(self.readout) != self.width:
            raise DimensionError(f"readout length {len(self.readout)} != width {self.width}")
        for j, layer in enumerate(self.layers):
            if layer.filter.period != self.width:
                raise DimensionError(f"layer {j}: filter period {layer.filter.period} != width {self.width}")
            if len(layer.bias.values) != self.width:
                raise DimensionError(f"layer {j}: bias length {len(layer.bias.values)} != width {self.width}")

    @property
    def depth(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class RidgeSpec:
    direction: tuple[float, ...]
    profile: ProfileSpec

    def __post_init__(self):
        direction = tuple(float(a) for a in self.direction)
        if not any(direction):
            raise ConstructionError("ridge direction must be nonzero")
        object.__setattr__(self, "direction", direction)


@dataclass(frozen=True)
class ErrorReport:
    sup_error: float
    mean_error: float
    n_samples: int
    seed: int
    # max |net(x) - knot interpolant(a . x)| over the same samples
    oracle_gap: float = 0.0
    # dense-grid sup error of the one-dimensional knot interpolant
    knot_error: float = 0.0


# =============================================================================
# Forward pass
# =============================================================================

def _check_input(net: PeriodicCnn, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != net.width:
        raise DimensionError(f"input length {x.shape[-1] if x.ndim else 0} != width {net.width}")
    return x


def forward_layers(net: PeriodicCnn, x) -> list[np.ndarray]:
    """[h^(0), h^(1), ..., h^(J)]; x may be a single vector or a (n, d) batch."""
    h = _check_input(net, x)
    out = [h]
    for layer in net.layers:
        h = relu(circular_convolve(layer.filter, h) - layer.bias.as_array())
        out.append(h)
    return out


def forward(net: PeriodicCnn, x) -> np.ndarray:
    return forward_layers(net, x)[-1]


def evaluate(net: PeriodicCnn, x):
    out = forward(net, x) @ np.asarray(net.readout)
    return out if np.ndim(out) else float(out)


# =============================================================================
# Merged form of stacked linear layers
# =============================================================================

def merged_filter(layers) -> Filter:
    layers = list(layers)
    w = layers[0].filter
    for layer in layers[1:]:
        w = compose_filters(layer.filter, w)
    return w


def merged_bias(layers) -> np.ndarray:
    """B^(j) = w^(j) * B^(j-1) + b^(j), B^(1) = b^(1)."""
    layers = list(layers)
    B = layers[0].bias.as_array()
    for layer in layers[1:]:
        B = circular_convolve(layer.filter, B) + layer.bias.as_array()
    return B


# =============================================================================
# Interval bounds
# =============================================================================

def preactivation_bounds(w: Filter, lo, hi) -> tuple[np.ndarray, np.ndarray]:
    """Bounds of w * h over the box lo <= h <= hi."""
    T = as_matrix(w, w.period).values
    pos, neg = np.clip(T, 0.0, None), np.clip(T, None, 0.0)
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    return pos @ lo + neg @ hi, pos @ hi + neg @ lo


def interval_bounds(layers, lo, hi) -> list[tuple[np.ndarray, np.ndarray]]:
    """Post-activation bounds per layer, starting from the input box."""
    bounds = [(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))]
    for layer in layers:
        plo, phi = preactivation_bounds(layer.filter, *bounds[-1])
        b = layer.bias.as_array()
        bounds.append((relu(plo - b), relu(phi - b)))
    return bounds


def inactive_biases(filters, lo, hi, s: int = 2) -> list[BiasVector]:
    """Constant biases keeping every pre-activation >= 1 on the box."""
    biases = []
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    for w in filters:
        plo, phi = preactivation_bounds(w, lo, hi)
        b = float(np.min(plo)) - 1.0
        biases.append(BiasVector.constant(b, w.period, s))
        lo, hi = plo - b, phi - b
    return biases


# =============================================================================
# Ridge construction
# =============================================================================

def _box_arrays(box, d: int) -> tuple[np.ndarray, np.ndarray]:
    box = np.asarray(box, dtype=float)
    if box.shape != (d, 2):
        raise ConstructionError(f"box must have shape ({d}, 2), got {box.shape}")
    if not np.all(np.isfinite(box)) or np.any(box[:, 0] > box[:, 1]):
        raise ConstructionError("box must be bounded with lo <= hi per coordinate")
    return box[:, 0], box[:, 1]


def shift_margin(a, box) -> float:
    """A = sum_i |a_i| max(|lo_i|, |hi_i|) + 1, so a . x + A >= 1 on the box."""
    a = np.asarray(a, dtype=float)
    lo, hi = _box_arrays(box, a.size)
    return float(np.sum(np.abs(a) * np.maximum(np.abs(lo), np.abs(hi))) + 1.0)


def ridge_range(a, box) -> tuple[float, float]:
    """Exact image [min a . x, max a . x] of the box."""
    a = np.asarray(a, dtype=float)
    lo, hi = _box_arrays(box, a.size)
    return float(np.sum(np.minimum(a * lo, a * hi))), float(np.sum(np.maximum(a * lo, a * hi)))


def _kill_bias(plo_hi: np.ndarray) -> float:
    return float(np.max(plo_hi)) + 1.0


def _projection_layers(a: np.ndarray, s: int, lo, hi, A: float) -> list[Layer]:
    d = a.size
    W = Filter(tuple(a[::-1]), d)
    factors = factorize(W, s).factors

    biases = inactive_biases(factors[:-1], lo, hi, s)
    layers = [Layer(f, b) for f, b in zip(factors[:-1], biases)]

    # affine constant carried by the inactive layers: h = (prefix * x) + c
    c = np.zeros(d)
    for layer in layers:
        c = circular_convolve(layer.filter, c) - layer.bias.as_array()
    bounds = interval_bounds(layers, lo, hi)[-1]

    last = factors[-1]
    plo, phi = preactivation_bounds(last, *bounds)
    b = np.full(d, _kill_bias(phi))
    b[d - 1] = circular_convolve(last, c)[d - 1] - A
    layers.append(Layer(last, BiasVector(tuple(b), s)))
    return layers


def _accumulator_layers(pairs, offset: int, live: tuple[int, ...], s: int, A: float, bounds):
    """One layer per knot: filter with 1 at 0 and w at `offset`, accumulating at coordinate offset - 1."""
    layers = []
    acc = offset - 1
    for w, b in pairs:
        d = bounds[0].size
        coeffs = [0.0] * (offset + 1)
        coeffs[0], coeffs[offset] = 1.0, w
        f = Filter(tuple(coeffs), d)
        _, phi = preactivation_bounds(f, *bounds)
        bias = np.full(d, _kill_bias(phi))
        bias[list(live)] = 0.0
        bias[acc] = w * A + b
        layer = Layer(f, BiasVector(tuple(bias), s))
        layers.append(layer)
        bounds = interval_bounds([layer], *bounds)[-1]
    return layers, bounds


def _split_knots(knots: ReluKnotSequence):
    """Rising (sign +1) and falling (sign -1) pairs, each keeping the descending order."""
    return list(knots.subsequence(1).pairs), list(knots.subsequence(-1).pairs)


def _constant_layer(d: int, s: int, slot: int) -> Layer:
    """Identity layer that also outputs 1 at `slot`, a coordinate already zero."""
    bias = np.zeros(d)
    bias[slot] = -1.0
    return Layer(Filter((1.0,), d), BiasVector(tuple(bias), s))


def build_ridge_network(spec: RidgeSpec, s: int, n_knots: int, box,
                        n_samples: int = 10_000, seed: int = 0) -> tuple[PeriodicCnn, ErrorReport]:
    """Construct a periodic CNN approximating phi(a . x) on the box."""
    a = np.asarray(spec.direction, dtype=float)
    d = a.size
    if not 2 <= s <= d:
        raise ConstructionError(f"need 2 <= s <= d, got s={s}, d={d}")
    if d < 3:
        raise ConstructionError(f"need width d >= 3, got {d}")
    lo, hi = _box_arrays(box, d)

    A = shift_margin(a, box)
    y_min, y_max = ridge_range(a, box)
    profile = spec.profile.with_domain(y_min, y_max)
    knots = build_knots(profile, n_knots)
    rising, falling = _split_knots(knots)
    if falling and d < 5:
        raise ConstructionError(f"profile needs falling knots, which need d >= 5 (got {d})")

    assert A + y_min >= 1.0 - 1e-9, "y + A must stay positive on a bounded box"
    layers = _projection_layers(a, s, lo, hi, A)
    # exact bounds: only y + A survives the projection stage
    bounds = (np.zeros(d), np.zeros(d))
    bounds[0][d - 1], bounds[1][d - 1] = y_min + A, y_max + A

    more, bounds = _accumulator_layers(rising, 1, (d - 1,), s, A, bounds)
    layers += more
    more, bounds = _accumulator_layers(falling, 2, (0, d - 1), s, A, bounds)
    layers += more

    readout = np.zeros(d)
    readout[0] = 1.0
    if falling:
        readout[1] = -1.0
    if knots.intercept != 0.0:
        # first zero coordinate inside the head/tail band, so the bias keeps its repeated middle
        slot = d - 2 if falling else 1
        layers.append(_constant_layer(d, s, slot))
        readout[slot] = knots.intercept
    net = PeriodicCnn(tuple(layers), d, tuple(readout), s)
    return net, error_report(net, spec, knots, profile, box, n_samples, seed)


def sample_box(box, n_samples: int, seed: int) -> np.ndarray:
    box = np.asarray(box, dtype=float)
    rng = np.random.default_rng(seed)
    return rng.uniform(box[:, 0], box[:, 1], size=(n_samples, box.shape[0]))


def error_report(net: PeriodicCnn, spec: RidgeSpec, knots: ReluKnotSequence,
                 profile: ProfileSpec, box, n_samples: int, seed: int) -> ErrorReport:
    x = sample_box(box, n_samples, seed)
    y = x @ np.asarray(spec.direction)
    out = evaluate(net, x)
    err = np.abs(out - profile(y))
    return ErrorReport(
        sup_error=float(np.max(err)),
        mean_error=float(np.mean(err)),
        n_samples=int(n_samples),
        seed=int(seed),
        oracle_gap=float(np.max(np.abs(out - interpolant_eval(knots, y)))),
        knot_error=sup_error(profile, knots),
    )
