"""One-dimensional ReLU knot machinery.

A knot pair (w, b) stands for sigma(w y - b), threshold t = b / w. A sequence
is ordered when thresholds are non-increasing; for such sequences (w > 0) the
left-nested composition

    sigma(... sigma(sigma(w_1 y - b_1) + w_2 y - b_2) ... )

equals the flat sum sum_j sigma(w_j y - b_j). Once y passes a threshold it has
passed every later one, so no inner ReLU ever clips a nonzero partial sum.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constants import ORACLE_GRID
from .errors import KnotError


def relu(z):
    return np.maximum(z, 0.0)


@dataclass(frozen=True)
class ProfileSpec:
    evaluator: Callable[[np.ndarray], np.ndarray]
    domain: tuple[float, float]
    holder_note: str | None = None
    name: str = "custom"

    def __call__(self, y):
        return np.asarray(self.evaluator(np.asarray(y, dtype=float)), dtype=float)

    def with_domain(self, lo: float, hi: float) -> "ProfileSpec":
        return ProfileSpec(self.evaluator, (float(lo), float(hi)), self.holder_note, self.name)


@dataclass(frozen=True)
class ReluKnotSequence:
    """Knot pairs plus the signs and intercept of the interpolant they encode.

    flat_sum_eval and nested_eval ignore signs and intercept;
    interpolant_eval gives intercept + sum_j signs_j sigma(w_j y - b_j).
    """

    pairs: tuple[tuple[float, float], ...]
    signs: tuple[int, ...] = field(default=())
    intercept: float = 0.0

    def __post_init__(self):
        pairs = tuple((float(w), float(b)) for w, b in self.pairs)
        signs = tuple(int(s) for s in self.signs) if self.signs else (1,) * len(pairs)
        if len(signs) != len(pairs):
            raise KnotError(f"{len(signs)} signs for {len(pairs)} pairs")
        if any(s not in (-1, 1) for s in signs):
            raise KnotError(f"signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "intercept", float(self.intercept))

    @property
    def thresholds(self) -> tuple[float, ...]:
        return tuple(b / w for w, b in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def subsequence(self, sign: int) -> "ReluKnotSequence":
        """Pairs carrying the given sign, order preserved."""
        keep = [p for p, s in zip(self.pairs, self.signs) if s == sign]
        return ReluKnotSequence(tuple(keep))


def check_order(knots: ReluKnotSequence) -> bool:
    if any(w <= 0 for w, _ in knots.pairs):
        raise KnotError("ordering is only defined for positive weights")
    t = knots.thresholds
    return all(t[i] >= t[i + 1] for i in range(len(t) - 1))


def flat_sum_eval(knots: ReluKnotSequence, y):
    y = np.asarray(y, dtype=float)
    total = np.zeros_like(y)
    for w, b in knots.pairs:
        total = total + relu(w * y - b)
    return total if total.ndim else float(total)


def nested_eval(knots: ReluKnotSequence, y):
    y = np.asarray(y, dtype=float)
    h = np.zeros_like(y)
    for w, b in knots.pairs:
        h = relu(h + w * y - b)
    return h if h.ndim else float(h)


def interpolant_eval(knots: ReluKnotSequence, y):
    y = np.asarray(y, dtype=float)
    total = np.full_like(y, knots.intercept)
    for (w, b), s in zip(knots.pairs, knots.signs):
        total = total + s * relu(w * y - b)
    return total if total.ndim else float(total)


def knot_grid(domain: tuple[float, float], n: int) -> np.ndarray:
    lo, hi = domain
    return np.linspace(lo, hi, n + 1)


def build_knots(profile: ProfileSpec, n: int) -> ReluKnotSequence:
    """Piecewise-linear interpolant of the profile at n + 1 equispaced knots.

    On the domain the interpolant is
        phi(t_0) + m_0 sigma(y - t_0) + sum_i delta_i sigma(y - t_i)
    with segment slopes m_i and slope increments delta_i. Every term becomes
    a pair (|c|, |c| t) with sign(c); the base term at t_0 is active on the
    whole domain. Pairs come out in threshold-descending order.
    """
    if n < 1:
        raise KnotError(f"need at least one knot interval, got {n}")
    lo, hi = profile.domain
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
        raise KnotError(f"degenerate profile domain [{lo}, {hi}]")

    t = knot_grid(profile.domain, n)
    v = profile(t)
    if v.shape != t.shape or not np.all(np.isfinite(v)):
        raise KnotError(f"profile '{profile.name}' is not finite on its domain")

    slopes = np.diff(v) / np.diff(t)
    terms = [(slopes[0], t[0])]
    terms += [(slopes[i] - slopes[i - 1], t[i]) for i in range(1, n)]

    pairs, signs = [], []
    for c, knot in sorted(terms, key=lambda term: term[1], reverse=True):
        if c == 0.0:
            continue
        pairs.append((abs(c), abs(c) * knot))
        signs.append(1 if c > 0 else -1)
    return ReluKnotSequence(tuple(pairs), tuple(signs), float(v[0]))


def sup_error(profile: ProfileSpec, knots: ReluKnotSequence, grid: int = ORACLE_GRID) -> float:
    """Dense-grid sup-norm distance between the profile and the interpolant."""
    y = np.linspace(*profile.domain, grid)
    return float(np.max(np.abs(profile(y) - interpolant_eval(knots, y))))
