"""Exception types shared across the package.

Domain outcomes that are physics results (empty spectrum, collapse regime)
get their own classes so the CLI can report them as data rather than crash.
"""


class DkpError(Exception):
    """Base class for every error raised by dkp1d."""


class CriticalCouplingError(DkpError):
    """Coupling strength at or beyond the collapse threshold g1^2 + g2^2 >= 1/4."""


class FreeCaseError(DkpError):
    """Both couplings vanish; there is no potential to bind anything."""


class NoBoundStatesError(DkpError):
    """Pure nonminimal coupling (g1 = 0): the discrete spectrum is empty."""


class NoRootInBracketError(DkpError):
    """Eigenvalue search found no mismatch sign change in the scanned range."""


class BracketExhaustedError(DkpError):
    """Eigenvalue bracketing could not isolate the requested level."""


class OdeIntegrationError(DkpError):
    """The ODE stepper failed before reaching the matching point."""


class QuadratureToleranceError(DkpError):
    """Adaptive quadrature could not meet the requested tolerance.

    Carries the best available estimate and its error bound so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message: str, value: float, est_error: float):
        super().__init__(message)
        self.value = value
        self.est_error = est_error


class KummerConvergenceError(DkpError):
    """Confluent hypergeometric series failed to converge."""

    def __init__(self, message: str, terms: int):
        super().__init__(message)
        self.terms = terms


class WeightNormalizationError(DkpError):
    """Spin-1 channel weights must satisfy |c+|^2 + |c-|^2 = 1."""
