"""Shared numeric constants for periodic_cnn."""

# Imaginary parts below this make a companion-matrix root real.
ROOT_IMAG_TOL = 1e-9

# Default reconvolution tolerance for factorize().
FACTOR_TOL = 1e-8

# Spectral coefficients below this are dropped on normalization.
SPECTRAL_DROP = 1e-14

# Off-lattice energy fraction accepted by verify_relu_closure().
CLOSURE_TOL = 1e-6

# verify_relu_closure() needs N >= RESOLUTION_FACTOR * largest frequency coordinate.
RESOLUTION_FACTOR = 4

# Dense grid used by the one-dimensional sup-error oracle.
ORACLE_GRID = 10_000

DEFAULT_N_SAMPLES = 10_000
DEFAULT_KNOTS = (8, 16, 32, 64)
DEFAULT_GRID = 32
DEFAULT_BOX = (0.0, 0.5)
DEFAULT_CANDIDATES = 50
DEFAULT_OUT = "results"

# Torus counterexample: phi(t) = cos(2 pi t) + cos(4 pi t) along u = e_1 + 2 e_2,
# against the lattice generated by e_1.
COUNTEREXAMPLE_COEFFS = ((-2, 0.5), (-1, 0.5), (1, 0.5), (2, 0.5))
COUNTEREXAMPLE_D = 3
COUNTEREXAMPLE_GRID = 32


def counterexample_direction(d: int) -> tuple[int, ...]:
    return (1, 2) + (0,) * (d - 2)


def axis_vector(d: int, axis: int = 0) -> tuple[int, ...]:
    return tuple(1 if i == axis else 0 for i in range(d))
