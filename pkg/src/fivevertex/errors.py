"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so raise the most specific one.
"""


class FiveVertexError(Exception):
    """Base class for all package errors."""


class DomainError(FiveVertexError):
    """Mathematical input outside the function's domain (branch cut, half plane)."""


class RangeError(FiveVertexError):
    """Parameter outside the attainable range of the current regime."""


class InfeasibleSlopeError(FiveVertexError):
    """Slope (s, t) outside the feasible region."""


class UnsupportedRegimeError(FiveVertexError):
    """Requested combination is not covered by a closed form (e.g. general
    boundary data in the r > 1 interior map)."""


class NonconvergenceError(FiveVertexError):
    """An iterative solve failed to meet its residual bound."""


class SizeError(FiveVertexError):
    """Problem size exceeds a hard enumeration bound."""
