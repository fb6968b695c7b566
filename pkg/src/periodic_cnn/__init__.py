"""Periodic CNN approximation: constructive ridge networks and lattice lower bounds."""

from .errors import (
    PcnnError,
    DimensionError,
    FactorizationError,
    KnotError,
    ConstructionError,
    SpectralError,
    ResolutionError,
    ConfigError,
)
from .circulant import (
    Filter,
    CirculantMatrix,
    DftMultipliers,
    circular_convolve,
    as_matrix,
    dft_matrix,
    dft_multipliers,
    fft_multipliers,
    fourier_vector,
    compose_filters,
)
from .factorization import FactorizationResult, factorize, reconvolve, depth_bound, satisfies_depth_bound
from .ridge import (
    ProfileSpec,
    ReluKnotSequence,
    build_knots,
    flat_sum_eval,
    nested_eval,
    interpolant_eval,
    check_order,
    sup_error,
)
from .profiles import PROFILES, make_profile, fourier_coefficients
from .network import (
    BiasVector,
    Layer,
    PeriodicCnn,
    RidgeSpec,
    ErrorReport,
    forward,
    forward_layers,
    evaluate,
    merged_filter,
    merged_bias,
    interval_bounds,
    inactive_biases,
    build_ridge_network,
    shift_margin,
    ridge_range,
    sample_box,
)
from .lattice import FrequencyLattice, lattice_from_supports, member, hermite_normal_form
from .spectral import (
    SpectralVector,
    TorusRidge,
    ClosureReport,
    energy,
    project,
    ridge_spectrum,
    lower_bound,
    spectral_lower_bound,
    empirical_spectrum,
    verify_relu_closure,
    torus_features,
    linear_net_error,
)
