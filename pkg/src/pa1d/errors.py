"""Exception taxonomy shared by the library and the CLI.

The CLI maps these onto process exit codes: ConfigurationError -> 2,
DataError -> 3, NumericalError (and subclasses) -> 4.
"""


class Pa1dError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(Pa1dError, ValueError):
    """Invalid parameters or config: bad padding, unknown keys, out-of-range values."""


class DataError(Pa1dError):
    """Malformed or insufficient input data: unparsable CSV, wrong horizon, misaligned grids."""


class NumericalError(Pa1dError, ArithmeticError):
    """A numerical precondition failed during computation."""


class ResolutionError(NumericalError):
    """Sampling too coarse for the requested mode content."""


class ConditioningError(NumericalError):
    """A linear system is too ill-conditioned to solve reliably."""
