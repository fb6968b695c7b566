"""Exception hierarchy for periodic_cnn.

Every precondition violation raised by the library is a `PcnnError`, which is
a `ValueError` so callers that only know about bad input still catch it.
"""


class PcnnError(ValueError):
    """Base class for all library errors."""


class DimensionError(PcnnError):
    """Period, width or vector length mismatch."""


class FactorizationError(PcnnError):
    def __init__(self, message: str, worst_residual: float = float("nan")):
        super().__init__(message)
        self.worst_residual = worst_residual


class KnotError(PcnnError):
    """Invalid knot sequence or profile."""


class ConstructionError(PcnnError):
    """A ridge network cannot be built for the requested parameters."""


class SpectralError(PcnnError):
    """Invalid torus ridge, lattice or spectrum input."""


class ResolutionError(SpectralError):
    def __init__(self, message: str, required_n: int):
        super().__init__(message)
        self.required_n = required_n


class ConfigError(PcnnError):
    """Invalid experiment configuration."""
