"""Exception hierarchy shared across the package."""


class DoubleWellError(Exception):
    """Base class for all package errors."""


class InvalidInputError(DoubleWellError):
    """Preconditions on an operation's input were violated."""


class ConvergenceError(DoubleWellError):
    """An iterative kernel failed to converge."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class DegeneracyError(DoubleWellError):
    """A computation requires a non-degenerate ground state."""


class InvalidDensityMatrixError(InvalidInputError):
    """Trace or positivity of a density matrix is violated."""


class ClassificationError(DoubleWellError):
    """A spectrum could not be assigned to any regime."""
