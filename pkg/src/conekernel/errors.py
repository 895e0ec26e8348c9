"""Exception types shared across the package.

Each class marks one failure mode of the numerical contracts so callers
(and the command line driver) can map them to distinct outcomes.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PrecisionError(ArithmeticError):
    """The requested tolerance is not attainable; carries the achieved bound."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class CapacityError(RuntimeError):
    """An iteration or truncation cap was exceeded before convergence."""


class UnsupportedRegimeError(ValueError):
    """Parameters fall in a regime the asymptotic machinery excludes
    (resonant cone radii with 1/rho an even integer)."""


class InputError(ValueError):
    """Malformed harness input: bad grids, bad samples, bad tables."""
