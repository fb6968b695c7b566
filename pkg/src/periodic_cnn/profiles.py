"""Named univariate profiles.

Each entry builds a ProfileSpec from keyword parameters. Profiles with a
finite Fourier series on [0, 1) also report their coefficients so the same
name can describe a torus ridge.
"""

from functools import partial

import numpy as np

from .errors import KnotError
from .ridge import ProfileSpec, relu

TWO_PI = 2.0 * np.pi


def _cos(y, freq=1):
    return np.cos(TWO_PI * freq * y)


def _sin(y, freq=1):
    return np.sin(TWO_PI * freq * y)


def _cos_sum(y):
    return np.cos(TWO_PI * y) + np.cos(2 * TWO_PI * y)


def _abs(y, center=0.0):
    return np.abs(y - center)


def _relu_shift(y, shift=0.5):
    return relu(y - shift)


def _gaussian_periodic(y, width=0.1, terms=3):
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    for m in range(-terms, terms + 1):
        out = out + np.exp(-((y - m) ** 2) / (2.0 * width**2))
    return out


def _identity(y):
    return np.asarray(y, dtype=float)


PROFILES = {
    # name: (evaluator, regularity note, convex and nondecreasing)
    "cos": (_cos, "smooth (C-infinity)", False),
    "sin": (_sin, "smooth (C-infinity)", False),
    "cos-sum": (_cos_sum, "smooth (C-infinity)", False),
    "abs": (_abs, "Lipschitz (Holder alpha = 1)", False),
    "relu-shift": (_relu_shift, "Lipschitz (Holder alpha = 1)", True),
    "gaussian-periodic": (_gaussian_periodic, "smooth (C-infinity)", False),
    "identity": (_identity, "linear", True),
}


def make_profile(name: str, domain=(0.0, 1.0), **params) -> ProfileSpec:
    if name not in PROFILES:
        raise KnotError(f"unknown profile '{name}'; choose from {sorted(PROFILES)}")
    fn, note, _ = PROFILES[name]
    try:
        evaluator = partial(fn, **params)
        evaluator(np.zeros(1))
    except TypeError as e:
        raise KnotError(f"bad parameters for profile '{name}': {e}") from e
    return ProfileSpec(evaluator, (float(domain[0]), float(domain[1])), note, name)


def is_rising(name: str) -> bool:
    """Profiles whose knot interpolant on any interval has only rising knots."""
    return name in PROFILES and PROFILES[name][2]


def fourier_coefficients(name: str, **params) -> tuple[tuple[int, complex], ...]:
    """(m, c_m) with phi(t) = sum_m c_m exp(2 pi i m t), for trigonometric profiles."""
    if name == "cos":
        f = int(params.get("freq", 1))
        return ((-f, 0.5 + 0j), (f, 0.5 + 0j)) if f else ((0, 1.0 + 0j),)
    if name == "sin":
        f = int(params.get("freq", 1))
        return ((-f, 0.5j), (f, -0.5j)) if f else ()
    if name == "cos-sum":
        return tuple((m, 0.5 + 0j) for m in (-2, -1, 1, 2))
    raise KnotError(f"profile '{name}' has no finite Fourier series")
