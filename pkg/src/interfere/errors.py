"""Exception types shared across the package."""


class InterferenceError(Exception):
    """Base class for all errors raised by this package."""


class NotSquareError(InterferenceError):
    """A square matrix was required but a rectangular one was supplied."""


class NotUnitaryError(InterferenceError):
    """Unitarity validation failed.

    Carries the measured residual (max-norm of U†U - I) and the tolerance
    it was compared against.
    """

    def __init__(self, residual: float, tol: float):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(
            f"matrix is not unitary: residual {self.residual:.3e} exceeds "
            f"tolerance {self.tol:.3e}"
        )


class DimensionMismatchError(InterferenceError):
    """Vector/matrix dimensions do not agree."""


class IndexOutOfRangeError(InterferenceError):
    """A mode index lies outside [1..N]."""


class DimensionTooSmallError(InterferenceError):
    """A requested embedding or mode count is too small."""


class SizeLimitError(InterferenceError):
    """A kernel was asked for a matrix larger than its configured cap."""


class BudgetExceededError(InterferenceError):
    """An enumeration or particle budget would be exceeded."""


class OccupationOverflowError(InterferenceError):
    """A per-mode count is too large for exact factorial arithmetic."""


class SingularDenominatorError(InterferenceError):
    """A generating-function denominator is numerically singular."""


class UnsupportedPatternError(InterferenceError):
    """The requested pattern shape is outside the operation's domain."""
