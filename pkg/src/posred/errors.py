"""Exception types shared across the package."""


class PosredError(Exception):
    """Base class for every error raised by this package."""


class NonFiniteError(PosredError):
    """A matrix or vector contains NaN or infinite entries."""


class ZeroMatrixError(PosredError):
    """The matrix is numerically zero where a nonzero one is required."""


class RankDeficientError(PosredError):
    """Full column rank was required but not present."""


class NotNonnegativeError(PosredError):
    """An entrywise non-negative matrix was required."""


class NotSquareError(PosredError):
    """A square matrix was required."""


class SingularError(PosredError):
    """An invertible matrix was required."""


class BudgetExceededError(PosredError):
    """The combinatorial row-subset search would exceed its budget.

    Callers may raise the budget or fall back to the algebra route.
    """


class DimensionMismatchError(PosredError):
    """Shapes of the supplied operands are inconsistent."""


class NotInvariantError(PosredError):
    """The projection image is not invariant under the dynamics or does
    not contain the input image, so exact reduction is not guaranteed."""


class NotPositiveError(PosredError):
    """System matrices (original or reduced) have negative entries."""


class NegativeInputError(PosredError):
    """Simulation inputs or initial states must be non-negative."""


class UnsupportedCoordinateError(PosredError):
    """A vector carries weight outside the support of the reference vector."""


class SupportFailureError(PosredError):
    """No combination of the generators is strictly positive on the
    subspace support."""


class ClosureMismatchError(PosredError):
    """Coordinate-group count disagrees with the closure rank; indicates a
    tolerance pathology rather than a modelling error."""


class VerificationError(PosredError):
    """A post-condition that is guaranteed by construction failed; this
    signals a bug or a tolerance pathology, never a bad input."""
