"""Circular convolution, circulant matrices and their DFT diagonalization.

All indices are taken mod the period d: a filter w acting on x in R^d gives

    (w * x)_i = sum_k w_{(i - k) mod d} x_k

which is the matvec of the circulant matrix C(w) with entries w_{(i-k) mod d}.
Every circulant is diagonalized by the Fourier vectors v^(l)_k = omega^(k l),
omega = exp(2 pi i / d), with eigenvalue w_hat(l) = sum_m w_m omega^(-m l).
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionError


@dataclass(frozen=True)
class Filter:
    """Finite filter (w_0, ..., w_M) acting on period-d sequences.

    Only trailing zeros are trimmed; a leading zero is a shift and is kept.
    """

    coefficients: tuple[float, ...]
    period: int

    def __post_init__(self):
        if self.period < 1:
            raise DimensionError(f"period must be >= 1, got {self.period}")
        coeffs = [float(c) for c in self.coefficients]
        if not all(np.isfinite(coeffs)):
            raise DimensionError(f"filter coefficients must be finite: {coeffs}")
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        if len(coeffs) > self.period:
            raise DimensionError(
                f"support {len(coeffs)} exceeds period {self.period}"
            )
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def support_size(self) -> int:
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def padded(self) -> np.ndarray:
        """Coefficients as a length-d array."""
        out = np.zeros(self.period)
        out[: self.support_size] = self.coefficients
        return out

    @classmethod
    def delta(cls, period: int) -> "Filter":
        return cls((1.0,), period)


@dataclass(frozen=True)
class CirculantMatrix:
    generator: Filter
    dimension: int

    @property
    def values(self) -> np.ndarray:
        # scipy's circulant takes the first column: c[(i - k) mod d]
        return scipy.linalg.circulant(self.generator.padded())

    def __matmul__(self, x):
        return self.values @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class DftMultipliers:
    values: tuple[complex, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)


def _check_vector(w: Filter, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != w.period:
        raise DimensionError(
            f"filter period {w.period} does not match input length "
            f"{x.shape[-1] if x.ndim else 0}"
        )
    return x


def circular_convolve(w: Filter, x) -> np.ndarray:
    """(w * x)_i = sum_k w_{(i-k) mod d} x_k along the last axis of x."""
    x = _check_vector(w, x)
    out = np.zeros_like(x)
    for m, c in enumerate(w.coefficients):
        if c != 0.0:
            out += c * np.roll(x, m, axis=-1)
    return out


def as_matrix(w: Filter, d: int) -> CirculantMatrix:
    if w.support_size > d:
        raise DimensionError(f"support {w.support_size} exceeds dimension {d}")
    if w.period != d:
        w = Filter(w.coefficients, d)
    return CirculantMatrix(generator=w, dimension=d)


def dft_matrix(d: int) -> np.ndarray:
    """F[l, m] = omega^(-l m)."""
    idx = np.arange(d)
    return np.exp(-2j * np.pi * np.outer(idx, idx) / d)


def fourier_vector(d: int, ell: int) -> np.ndarray:
    """Eigenvector v^(l)_k = omega^(k l) shared by every d x d circulant."""
    return np.exp(2j * np.pi * ell * np.arange(d) / d)


def dft_multipliers(w: Filter, d: int) -> DftMultipliers:
    """Direct O(d^2) transform; the reference for fft_multipliers()."""
    if w.period != d:
        raise DimensionError(f"filter period {w.period} != {d}")
    return DftMultipliers(tuple(complex(v) for v in dft_matrix(d) @ w.padded()))


def fft_multipliers(w: Filter) -> DftMultipliers:
    return DftMultipliers(tuple(complex(v) for v in np.fft.fft(w.padded())))


def compose_filters(a: Filter, b: Filter) -> Filter:
    """Filter of the map x -> a * (b * x): the polynomial product mod z^d - 1."""
    if a.period != b.period:
        raise DimensionError(f"periods differ: {a.period} vs {b.period}")
    d = a.period
    if a.is_zero or b.is_zero:
        return Filter((), d)
    full = np.convolve(a.coefficients, b.coefficients)
    wrapped = np.zeros(d)
    np.add.at(wrapped, np.arange(full.size) % d, full)
    return Filter(tuple(wrapped), d)
