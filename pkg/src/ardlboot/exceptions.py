"""Exception hierarchy.

Three families map onto the CLI exit codes: bad user input (2), model
estimation failures (3) and bootstrap degeneracies (4).
"""


class ArdlBootError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ArdlBootError):
    """Invalid user-supplied data or arguments (CLI exit code 2)."""


class EstimationError(ArdlBootError):
    """Model estimation failed (CLI exit code 3)."""


class BootstrapError(ArdlBootError):
    """Bootstrap resampling degenerated (CLI exit code 4)."""


# --- input family ---------------------------------------------------------

class DimensionMismatch(InputError):
    """Arrays with incompatible shapes."""


class NonFiniteInput(InputError):
    """NaN or infinity in input data."""


class InvalidRestrictionCount(InputError):
    """Number of restrictions of an F test must be a positive integer."""


class IndexOutOfRange(InputError):
    """Column index outside the design matrix."""


class EmptyDistribution(InputError):
    """A quantile/p-value was requested from an empty distribution."""


class MissingColumn(InputError):
    """A requested column is absent from the CSV header."""


class MissingValue(InputError):
    """Blank cell in a selected CSV column."""

    def __init__(self, row: int, column: str):
        self.row = row
        self.column = column
        super().__init__(f"missing value at row {row}, column {column!r}")


class NonNumericCell(InputError):
    """Cell in a selected CSV column cannot be parsed as a number."""

    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(
            f"non-numeric value {value!r} at row {row}, column {column!r}"
        )


class NonPositiveForLog(InputError):
    """Log transform requested on a column with entries <= 0."""


# --- estimation family ----------------------------------------------------

class RankDeficient(EstimationError):
    """Design matrix is numerically collinear."""


class SampleTooShort(EstimationError):
    """Not enough observations for the requested lag structure."""


class DegenerateFit(EstimationError):
    """Residual variance is numerically zero; test statistics undefined."""


class DegenerateAdjustment(EstimationError):
    """Adjustment coefficient is numerically zero; long-run ratio undefined."""


class InconsistentSamples(EstimationError):
    """Restricted/unrestricted fits do not come from the same sample."""


class SingularSigmaXX(EstimationError):
    """Regressor block of the error covariance is singular."""


# --- bootstrap family -----------------------------------------------------

class NonFinitePropagation(BootstrapError):
    """A regenerated sample diverged beyond the explosion limit."""


class TooManyDiscards(BootstrapError):
    """More than the allowed share of bootstrap replicates was discarded."""
