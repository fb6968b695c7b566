"""Approachable versus blocked ridge directions.

Approachable: u = e_1 + 2 e_2 lies in the lattice generated by e_1 and e_2,
the spectral floor is 0, and the constructed networks drive the error down
with n. Blocked: the same ridge against the lattice generated by e_1 alone
has floor epsilon = 1, and no linear network fed axis-1 modes gets below it,
whatever its readout.
"""

import time

import numpy as np

from pcnn_utils import ExperimentConfig, debug
from periodic_cnn import (
    Filter, Layer, PcnnError, PeriodicCnn, RidgeSpec, TorusRidge,
    inactive_biases, lattice_from_supports, linear_net_error, lower_bound, make_profile,
)
from periodic_cnn.constants import (
    COUNTEREXAMPLE_COEFFS, COUNTEREXAMPLE_D, axis_vector, counterexample_direction,
)

from .convergence import convergence_rows
from .outputs import ResultRow

EXPERIMENT_ID = "dichotomy"
FLOOR_TOL = 1e-6


def random_linear_network(rng: np.random.Generator, width: int, s: int, n_modes: int,
                          max_depth: int = 3) -> PeriodicCnn:
    """Random filters with biases keeping every ReLU inactive on torus features."""
    depth = int(rng.integers(1, max_depth + 1))
    taps = min(s, width - 1) + 1
    filters = [Filter(tuple(rng.uniform(-1.0, 1.0, size=taps)), width) for _ in range(depth)]
    bound = np.full(width, float(n_modes))
    biases = inactive_biases(filters, -bound, bound, s)
    readout = tuple(rng.normal(size=width))
    return PeriodicCnn(tuple(Layer(w, b) for w, b in zip(filters, biases)), width, readout, s)


def blocked_rows(config: ExperimentConfig) -> list[ResultRow]:
    d = COUNTEREXAMPLE_D
    ridge = TorusRidge(counterexample_direction(d), COUNTEREXAMPLE_COEFFS)
    lattice = lattice_from_supports([{axis_vector(d, 0)}])
    modes = [axis_vector(d, 0)]
    params = {"direction": list(ridge.direction), "lattice": [list(g) for g in lattice.generators],
              "grid": config.grid, "seed": config.seed}

    eps = lower_bound(ridge, lattice)
    rows = [ResultRow(EXPERIMENT_ID, "blocked", None, "epsilon", eps, params)]
    debug.log(EXPERIMENT_ID, f"blocked epsilon={eps:.6f}")

    if config.n_candidates == 0:
        return rows

    rng = np.random.default_rng(config.seed)
    width = max(config.d, 3)
    start = time.perf_counter()
    errors = []
    for _ in range(config.n_candidates):
        net = random_linear_network(rng, width, min(config.s, width), len(modes))
        errors.append(linear_net_error(ridge, net, modes, config.grid))
    runtime = time.perf_counter() - start
    best = min(errors)
    debug.log(EXPERIMENT_ID, f"blocked min error={best:.6f} over {len(errors)} networks")
    rows += [
        ResultRow(EXPERIMENT_ID, "blocked", None, "min_error", best, params, runtime),
        ResultRow(EXPERIMENT_ID, "blocked", None, "n_candidates", len(errors), params),
        ResultRow(EXPERIMENT_ID, "blocked", None, "floor_holds",
                  float(best >= eps - FLOOR_TOL), params),
    ]
    return rows


def approachable_rows(config: ExperimentConfig) -> list[ResultRow]:
    d = config.d
    direction = counterexample_direction(d)
    lattice = lattice_from_supports([{axis_vector(d, 0), axis_vector(d, 1)}])
    ridge = TorusRidge(direction, COUNTEREXAMPLE_COEFFS)
    params = {"d": d, "s": config.s, "profile": config.profile, "direction": list(direction),
              "seed": config.seed}

    eps = lower_bound(ridge, lattice)
    rows = [ResultRow(EXPERIMENT_ID, "approachable", None, "epsilon", eps, params)]
    try:
        spec = RidgeSpec(direction, make_profile(config.profile, **config.profile_params))
    except PcnnError as e:
        return rows + [ResultRow(EXPERIMENT_ID, "approachable", None, "failed", 1.0, {**params, "error": str(e)})]
    return rows + convergence_rows(EXPERIMENT_ID, "approachable", spec, config, params)


def run_dichotomy_experiment(config: ExperimentConfig) -> list[ResultRow]:
    return approachable_rows(config) + blocked_rows(config)
