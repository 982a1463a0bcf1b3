"""Exception types and the CLI exit codes they map to."""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INTEGRITY = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


class PointDiffError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ValidationError(PointDiffError):
    """Bad parameter value or malformed input data."""

    exit_code = EXIT_VALIDATION


class ParseError(ValidationError):
    """CSV content that cannot be parsed; the message carries the line number."""


class IntegrityError(PointDiffError):
    """Structurally inconsistent data, e.g. duplicate or missing game indices."""

    exit_code = EXIT_INTEGRITY


class DegenerateSeasonError(IntegrityError):
    """Season too short to split into predictor and target halves."""


class NumericError(PointDiffError):
    """Numerical failure during fitting or evaluation."""

    exit_code = EXIT_NUMERIC


class UndefinedCorrelationError(NumericError):
    """Pearson correlation requested for a constant vector."""


class DivergenceError(NumericError):
    """Gradient descent loss kept increasing; the learning rate is too large."""


class SingularSystemError(NumericError):
    """Normal equations are singular and cannot be solved directly."""
