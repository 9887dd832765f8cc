"""Exception types raised by momentint."""

from __future__ import annotations


class MomentsError(Exception):
    """Base class for all momentint errors."""


class DomainError(MomentsError, ValueError):
    """Parameters lie outside the region where a quantity is defined."""


class DivergenceError(DomainError):
    """The requested integral diverges (e.g. beta <= 1 at infinity)."""


class AccuracyError(MomentsError):
    """The requested tolerance could not be certified.

    The best available estimate and its error bound are attached so callers
    can still use them.
    """

    def __init__(self, message: str, estimate: float = float("nan"),
                 error_bound: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ComputationError(MomentsError):
    """An iterative computation (e.g. a Newton solve) failed to converge."""


class ConfigurationError(MomentsError, ValueError):
    """Inconsistent user-supplied configuration, e.g. a bad zero-sequence file."""


class UnsupportedError(MomentsError):
    """The operation needs information the caller did not supply."""
