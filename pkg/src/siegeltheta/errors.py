"""Error types shared across the package."""

import math


class SiegelThetaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SiegelThetaError, ValueError):
    """An argument lies outside an operation's mathematical domain."""


class ConvergenceError(SiegelThetaError):
    """A truncated series, product, or quadrature missed its error target.

    ``achieved`` carries the best bound that was obtained.
    """

    def __init__(self, message: str, achieved: float = math.inf):
        super().__init__(message)
        self.achieved = achieved


class PoleProximityError(SiegelThetaError):
    """Evaluation was requested too close to a pole to be meaningful."""
