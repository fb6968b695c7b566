"""The explicit blocked ridge on the torus.

f(x) = cos(2 pi u.x) + cos(4 pi u.x) with u = e_1 + 2 e_2 has coefficients
1/2 at +-u and +-2u, none of which lie in the lattice generated by e_1.
Its whole energy, 4 * 1/4 = 1, is therefore the floor.
"""

import numpy as np

from pcnn_utils import debug
from periodic_cnn import (
    TorusRidge, empirical_spectrum, energy, lattice_from_supports, lower_bound,
    ridge_spectrum, spectral_lower_bound,
)
from periodic_cnn.constants import (
    COUNTEREXAMPLE_COEFFS, COUNTEREXAMPLE_D, COUNTEREXAMPLE_GRID, axis_vector,
    counterexample_direction,
)
from periodic_cnn.errors import SpectralError


def counterexample_ridge(d: int = COUNTEREXAMPLE_D) -> TorusRidge:
    if d < 2:
        raise SpectralError(f"the counterexample needs d >= 2, got {d}")
    return TorusRidge(counterexample_direction(d), COUNTEREXAMPLE_COEFFS)


def run_counterexample(d: int = COUNTEREXAMPLE_D, grid: int = COUNTEREXAMPLE_GRID) -> dict:
    ridge = counterexample_ridge(d)
    lattice = lattice_from_supports([{axis_vector(d, 0)}])
    spectrum = ridge_spectrum(ridge)

    eps = lower_bound(ridge, lattice)
    norm = float(np.sqrt(energy(spectrum)))
    sampled = empirical_spectrum(spectrum.evaluate, d, grid)
    eps_grid = spectral_lower_bound(sampled, lattice)
    norm_grid = float(np.sqrt(energy(sampled)))
    debug.log("counterexample", f"epsilon={eps} grid epsilon={eps_grid:.12f} (N={grid}, d={d})")
    return {
        "d": d,
        "grid": grid,
        "direction": list(ridge.direction),
        "lattice": [list(g) for g in lattice.generators],
        "epsilon": eps,
        "norm": norm,
        "grid_epsilon": eps_grid,
        "grid_norm": norm_grid,
        "grid_gap": abs(eps_grid - eps),
    }
