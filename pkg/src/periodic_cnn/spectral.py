"""Fourier side of periodic networks on the torus T^d = [0, 1)^d.

A ridge phi(u . x) with integer u and 1-periodic phi has spectrum on the line
{m u}. Circulant layers only rescale the modes they are fed and ReLU creates
new frequencies inside the additive group generated by the old ones, so a
network fed modes in a lattice L never leaves L. Whatever part of a target's
spectrum lies off L is an L2 error floor:

    ||f - g|| >= sqrt(sum_{k not in L} |f_hat(k)|^2)   for every g with spectrum in L.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CLOSURE_TOL, RESOLUTION_FACTOR, SPECTRAL_DROP
from .errors import DimensionError, ResolutionError, SpectralError
from .lattice import FrequencyLattice, member
from .network import PeriodicCnn, forward_layers


@dataclass(frozen=True)
class SpectralVector:
    entries: dict
    dimension: int

    def __post_init__(self):
        clean = {}
        for k, c in self.entries.items():
            k = tuple(int(v) for v in k)
            if len(k) != self.dimension:
                raise DimensionError(f"frequency {k} is not in Z^{self.dimension}")
            c = complex(c)
            if abs(c) >= SPECTRAL_DROP:
                clean[k] = clean.get(k, 0j) + c
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, k) -> complex:
        return self.entries.get(tuple(k), 0j)

    def __len__(self):
        return len(self.entries)

    def is_conjugate_symmetric(self, atol: float = 1e-12) -> bool:
        return all(
            abs(self[tuple(-v for v in k)] - c.conjugate()) <= atol
            for k, c in self.entries.items()
        )

    def evaluate(self, points) -> np.ndarray:
        """Real part of sum_k c_k exp(2 pi i k . x) at (n, d) points."""
        if not self.is_conjugate_symmetric():
            raise SpectralError("spectrum is not conjugate-symmetric, so it is not a real function")
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(points.shape[0], dtype=complex)
        for k, c in self.entries.items():
            out += c * np.exp(2j * np.pi * (points @ np.asarray(k, dtype=float)))
        return out.real


def energy(spectrum: SpectralVector) -> float:
    """Parseval: ||f||^2 = sum_k |f_hat(k)|^2."""
    return float(sum(abs(c) ** 2 for c in spectrum.entries.values()))


def project(spectrum: SpectralVector, lattice: FrequencyLattice) -> tuple[SpectralVector, SpectralVector]:
    """(P_L f, f - P_L f)."""
    on, off = {}, {}
    for k, c in spectrum.entries.items():
        (on if member(lattice, k) else off)[k] = c
    return SpectralVector(on, spectrum.dimension), SpectralVector(off, spectrum.dimension)


# =============================================================================
# Torus ridges
# =============================================================================

@dataclass(frozen=True)
class TorusRidge:
    direction: tuple[int, ...]
    profile_coeffs: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        direction = []
        for a in self.direction:
            if float(a) != int(a):
                raise SpectralError(f"torus ridge directions must be integer, got {self.direction}")
            direction.append(int(a))
        coeffs = tuple((int(m), complex(c)) for m, c in self.profile_coeffs)
        object.__setattr__(self, "direction", tuple(direction))
        object.__setattr__(self, "profile_coeffs", coeffs)

    @property
    def dimension(self) -> int:
        return len(self.direction)


def ridge_spectrum(ridge: TorusRidge) -> SpectralVector:
    """{m u -> c_m}; for u = 0 every coefficient lands on k = 0."""
    u = np.asarray(ridge.direction, dtype=int)
    entries: dict = {}
    for m, c in ridge.profile_coeffs:
        k = tuple(int(v) for v in m * u)
        entries[k] = entries.get(k, 0j) + c
    return SpectralVector(entries, ridge.dimension)


def lower_bound(ridge: TorusRidge, lattice: FrequencyLattice) -> float:
    """epsilon = ||f_hat restricted to the complement of the lattice||."""
    return spectral_lower_bound(ridge_spectrum(ridge), lattice)


def spectral_lower_bound(spectrum: SpectralVector, lattice: FrequencyLattice) -> float:
    if spectrum.dimension != lattice.dimension:
        raise DimensionError(f"spectrum in Z^{spectrum.dimension}, lattice in Z^{lattice.dimension}")
    _, off = project(spectrum, lattice)
    return float(np.sqrt(energy(off)))


# =============================================================================
# Grid transforms
# =============================================================================

def torus_grid(dimension: int, n: int) -> np.ndarray:
    """All points j / n of the n^d grid, C order, shape (n^d, d)."""
    axes = [np.arange(n) / n] * dimension
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _grid_frequencies(dimension: int, n: int) -> np.ndarray:
    """Integer frequency of every fftn output cell, shape (n,)*d + (d,)."""
    f = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(int)
    mesh = np.meshgrid(*([f] * dimension), indexing="ij")
    return np.stack(mesh, axis=-1)


def _resolvable(freqs: np.ndarray, n: int) -> np.ndarray:
    return np.all(2 * np.abs(freqs) < n, axis=-1)


def empirical_spectrum(fn: Callable[[np.ndarray], np.ndarray], dimension: int, grid: int) -> SpectralVector:
    """Estimate f_hat(k) for |k_i| < N/2 from N^d grid samples.

    Frequencies outside that window alias onto it; for band-limited f with
    band below N/2 the estimates are exact up to rounding.
    """
    if grid < 2:
        raise SpectralError(f"grid must be >= 2, got {grid}")
    points = torus_grid(dimension, grid)
    values = np.asarray(fn(points), dtype=float).reshape((grid,) * dimension)
    if not np.all(np.isfinite(values)):
        raise SpectralError("function produced non-finite samples on the grid")
    coeffs = np.fft.fftn(values) / grid**dimension
    freqs = _grid_frequencies(dimension, grid)
    keep = _resolvable(freqs, grid)
    entries = {tuple(k): c for k, c in zip(freqs[keep], coeffs[keep])}
    return SpectralVector(entries, dimension)


def lattice_mask(lattice: FrequencyLattice, grid: int) -> np.ndarray:
    freqs = _grid_frequencies(lattice.dimension, grid)
    flat = freqs.reshape(-1, lattice.dimension)
    mask = np.fromiter((member(lattice, k) for k in flat), dtype=bool, count=flat.shape[0])
    return mask.reshape((grid,) * lattice.dimension)


def torus_features(points, modes, width: int) -> np.ndarray:
    """Network input on the torus: h0_i(x) = sum_{k in modes} cos(2 pi (k . x - i / width))."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    phases = points @ np.asarray(modes, dtype=float).T  # (n, |modes|)
    shifts = np.arange(width) / width
    return np.cos(2 * np.pi * (phases[:, :, None] - shifts[None, None, :])).sum(axis=1)


# =============================================================================
# ReLU frequency closure
# =============================================================================

@dataclass(frozen=True)
class LayerEnergy:
    layer: int
    off_fraction: float
    total_energy: float


@dataclass(frozen=True)
class ClosureReport:
    layers: tuple[LayerEnergy, ...]
    grid: int
    tolerance: float

    @property
    def max_off_fraction(self) -> float:
        return max((l.off_fraction for l in self.layers), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_off_fraction <= self.tolerance


def required_grid(lattice: FrequencyLattice, modes) -> int:
    largest = max([lattice.max_coordinate()] + [abs(int(c)) for k in modes for c in k] + [1])
    return RESOLUTION_FACTOR * largest


def _layer_energy(samples: np.ndarray, grid: int, on: np.ndarray, keep: np.ndarray) -> tuple[float, float]:
    # samples: (N^d, width) -> per-coordinate spectra
    d = on.ndim
    width = samples.shape[-1]
    cube = samples.T.reshape((width,) + (grid,) * d)
    coeffs = np.fft.fftn(cube, axes=tuple(range(1, d + 1))) / grid**d
    power = np.abs(coeffs) ** 2
    total = float(power[:, keep].sum())
    off = float(power[:, keep & ~on].sum())
    return off, total


def verify_relu_closure(net: PeriodicCnn, lattice: FrequencyLattice, grid: int, input_modes,
                        tolerance: float = CLOSURE_TOL) -> ClosureReport:
    """Fraction of resolvable spectral energy outside the lattice, per layer."""
    modes = [tuple(int(c) for c in k) for k in input_modes]
    if not modes:
        raise SpectralError("need at least one input mode")
    if any(len(k) != lattice.dimension for k in modes):
        raise DimensionError(f"input modes must lie in Z^{lattice.dimension}")
    needed = required_grid(lattice, modes)
    if grid < needed:
        raise ResolutionError(f"grid {grid} under-resolves the lattice; need N >= {needed}", needed)

    points = torus_grid(lattice.dimension, grid)
    h = torus_features(points, modes, net.width)
    on = lattice_mask(lattice, grid)
    keep = _resolvable(_grid_frequencies(lattice.dimension, grid), grid)

    layers = []
    for j, samples in enumerate(forward_layers(net, h)):
        off, total = _layer_energy(samples, grid, on, keep)
        layers.append(LayerEnergy(j, off / total if total > 0 else 0.0, total))
    return ClosureReport(tuple(layers), grid, tolerance)


# =============================================================================
# Linear networks against a torus ridge
# =============================================================================

def linear_net_error(ridge: TorusRidge, net: PeriodicCnn, modes, grid: int,
                     best_readout: bool = True) -> float:
    """Grid L2 distance between the ridge and the network's hypothesis space.

    With best_readout the readout is refit by least squares, giving the
    distance to the span of the final-layer features; otherwise the
    network's own readout is used.
    """
    points = torus_grid(ridge.dimension, grid)
    target = ridge_spectrum(ridge).evaluate(points)
    features = forward_layers(net, torus_features(points, modes, net.width))[-1]
    if best_readout:
        c, *_ = np.linalg.lstsq(features, target, rcond=None)
    else:
        c = np.asarray(net.readout)
    residual = target - features @ c
    return float(np.sqrt(np.mean(residual**2)))


def grid_norm(fn: Callable[[np.ndarray], np.ndarray], dimension: int, grid: int) -> float:
    points = torus_grid(dimension, grid)
    return float(np.sqrt(np.mean(np.asarray(fn(points), dtype=float) ** 2)))