"""Factor a long filter into a chain of short ones.

W(z) = sum_k W_k z^k is split over its complex roots (companion-matrix
eigenvalues). Conjugate pairs become real quadratics, real roots become
linears, and every low-order zero coefficient becomes a shift z. These
pieces are packed first-fit decreasing into factors of degree <= s, so
all factors but the last have degree >= s - 1 and

    J < M / (s - 1) + 1.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.polynomial import polynomial as P

from .circulant import Filter, compose_filters
from .constants import FACTOR_TOL, ROOT_IMAG_TOL
from .errors import FactorizationError


@dataclass(frozen=True)
class FactorizationResult:
    factors: tuple[Filter, ...]
    depth: int
    residual: float


def depth_bound(degree: int, s: int) -> float:
    return degree / (s - 1) + 1


def satisfies_depth_bound(depth: int, degree: int, s: int) -> bool:
    # A constant filter needs one factor even though the strict bound is 1.
    return depth < depth_bound(degree, s) or (degree == 0 and depth == 1)


def reconvolve(factors) -> Filter:
    factors = list(factors)
    if not factors:
        raise FactorizationError("reconvolve needs at least one factor")
    return reduce(lambda acc, f: compose_filters(f, acc), factors[1:], factors[0])


def _root_pieces(coeffs: np.ndarray) -> list[np.ndarray]:
    """Real monic polynomial pieces (low-to-high coefficients) whose product is coeffs / lead."""
    pieces: list[np.ndarray] = []
    shifts = 0
    while coeffs[shifts] == 0.0:
        shifts += 1
    pieces.extend(np.array([0.0, 1.0]) for _ in range(shifts))

    core = coeffs[shifts:]
    if core.size <= 1:
        return pieces
    try:
        roots = P.polyroots(core)
    except np.linalg.LinAlgError as e:
        raise FactorizationError(f"root finding failed: {e}") from e
    if not np.all(np.isfinite(roots)):
        raise FactorizationError("root finding produced non-finite roots")

    for r in roots:
        if abs(r.imag) <= ROOT_IMAG_TOL:
            pieces.append(np.array([-r.real, 1.0]))
        elif r.imag > 0:
            pieces.append(np.array([abs(r) ** 2, -2.0 * r.real, 1.0]))
    return pieces


def _pack(pieces: list[np.ndarray], capacity: int) -> list[list[np.ndarray]]:
    bins: list[list[np.ndarray]] = []
    loads: list[int] = []
    for piece in sorted(pieces, key=lambda p: p.size, reverse=True):
        size = piece.size - 1
        for i, load in enumerate(loads):
            if load + size <= capacity:
                bins[i].append(piece)
                loads[i] += size
                break
        else:
            bins.append([piece])
            loads.append(size)
    return bins


def factorize(W: Filter, s: int, tolerance: float = FACTOR_TOL) -> FactorizationResult:
    """Factor W into filters supported on {0, ..., s} whose composition is W."""
    if s < 2:
        raise FactorizationError(f"edge width s must be >= 2, got {s}")
    if W.is_zero:
        raise FactorizationError("cannot factor the zero filter")

    d = W.period
    coeffs = np.asarray(W.coefficients, dtype=float)
    lead = coeffs[-1]

    if W.degree == 0:
        return FactorizationResult(factors=(W,), depth=1, residual=0.0)

    capacity = max(1, min(s, d - 1))
    bins = _pack(_root_pieces(coeffs), capacity)

    polys = [reduce(P.polymul, b) for b in bins]
    polys[-1] = polys[-1] * lead
    factors = tuple(Filter(tuple(np.real(p)), d) for p in polys)

    rebuilt = reconvolve(factors).padded()
    residual = float(np.max(np.abs(rebuilt - W.padded())))
    if not residual <= tolerance:
        raise FactorizationError(
            f"reconvolution residual {residual:.3e} exceeds tolerance {tolerance:.1e}",
            worst_residual=residual,
        )
    return FactorizationResult(factors=factors, depth=len(factors), residual=residual)
