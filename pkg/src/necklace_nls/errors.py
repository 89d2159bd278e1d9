"""Exception types shared across the package.

NumericalError covers failures of iterative numerics (bracketing, bisection,
shooting); callers that need an exit code can map it to a distinct status.
"""


class NecklaceError(Exception):
    """Base class for all package errors."""


class DomainError(NecklaceError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class NumericalError(NecklaceError):
    """An iterative numerical procedure failed to converge or to bracket."""


class IntegrationError(NumericalError):
    """The ODE integrator failed (step-size underflow or solver breakdown)."""


class BracketingError(NumericalError):
    """A root-finding bracket does not contain a sign change."""


class NoCrossingError(NumericalError):
    """The unstable-manifold sweep never crossed the symmetry curve."""


class GridError(NecklaceError):
    """A scan grid is too coarse to resolve the requested structure."""
