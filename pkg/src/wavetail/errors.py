"""Exception hierarchy shared by all wavetail modules."""


class WavetailError(Exception):
    """Base class for every error raised by this package."""


class PoleError(WavetailError, ValueError):
    """Argument sits on a pole of Gamma (nonpositive integer)."""


class DomainError(WavetailError, ValueError):
    """Argument outside the supported evaluation range."""


class ContourError(WavetailError, ValueError):
    """Integration contour touches or encloses a singularity of the integrand."""


class ConvergenceError(WavetailError, RuntimeError):
    """Adaptive refinement or resolution budget exhausted.

    ``achieved`` carries the error estimate reached before giving up.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class CrossCheckError(WavetailError, RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""


class DegenerateSamplesError(WavetailError, ValueError):
    """Samples cannot support a rate fit."""


class ConfigError(WavetailError, ValueError):
    """Malformed experiment configuration."""
