"""Finite-depth convergence of constructed ridge networks.

For each knot count n the ridge network for phi(a . x) is built on the
config box and its sup/mean error measured on seeded samples. Deeper
networks (more knots) should track phi more closely.
"""

import time

import numpy as np

from pcnn_utils import ExperimentConfig, debug
from periodic_cnn import PcnnError, RidgeSpec, build_ridge_network, make_profile

from .outputs import ResultRow

EXPERIMENT_ID = "convergence"
METRICS = ("sup_error", "mean_error", "oracle_gap", "knot_error")


def draw_direction(config: ExperimentConfig) -> tuple[int, ...]:
    """Config direction, or a seeded nonzero vector in {-1, 0, 1}^d."""
    if config.direction is not None:
        return config.direction
    rng = np.random.default_rng(config.seed)
    while True:
        a = rng.integers(-1, 2, size=config.d)
        if np.any(a):
            return tuple(int(v) for v in a)


def convergence_rows(experiment: str, case: str, spec: RidgeSpec, config: ExperimentConfig,
                     params: dict) -> list[ResultRow]:
    rows = []
    for n in sorted(config.knots):
        start = time.perf_counter()
        try:
            net, report = build_ridge_network(spec, config.s, n, config.box, config.n_samples, config.seed)
        except PcnnError as e:
            debug.log(experiment, f"{case} n={n} failed: {e}")
            rows.append(ResultRow(experiment, case, n, "failed", 1.0, {**params, "error": str(e)}))
            continue
        runtime = time.perf_counter() - start
        debug.debug(experiment, f"{case} n={n} depth={net.depth} oracle_gap={report.oracle_gap:.1e}")
        debug.log(experiment, f"{case} n={n} sup={report.sup_error:.3e} ({runtime:.2f}s)")
        for metric in METRICS:
            rows.append(ResultRow(experiment, case, n, metric, getattr(report, metric), params, runtime))
            debug.log_experiment_row(experiment, metric, getattr(report, metric), runtime)
    return rows


def run_convergence_experiment(config: ExperimentConfig) -> list[ResultRow]:
    direction = draw_direction(config)
    profile = make_profile(config.profile, **config.profile_params)
    params = {
        "d": config.d, "s": config.s, "profile": config.profile,
        "direction": list(direction), "seed": config.seed,
    }
    debug.log(EXPERIMENT_ID, f"direction={list(direction)} profile={config.profile} knots={list(config.knots)}")
    try:
        spec = RidgeSpec(direction, profile)
    except PcnnError as e:
        return [ResultRow(EXPERIMENT_ID, "ridge", None, "failed", 1.0, {**params, "error": str(e)})]
    return convergence_rows(EXPERIMENT_ID, "ridge", spec, config, params)
