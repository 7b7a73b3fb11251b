"""Exception hierarchy shared by every stage of the pipeline."""


class RLETunnelError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(RLETunnelError, ValueError):
    """Raised when a raster, grid or parameter fails validation."""


class CorruptGridError(InvalidInputError):
    """Raised when a grid row does not sum to the document width."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class NoWhiteRunsError(InvalidInputError):
    """Raised when a grid has no non-zero white run to build a histogram from."""


class StuckError(RLETunnelError):
    """Raised when the agent cannot progress even by crossing a black run.

    ``partial_path`` carries the hubs visited so far.
    """

    def __init__(self, message, source_y=None, partial_path=None):
        super().__init__(message)
        self.source_y = source_y
        self.partial_path = partial_path


class DegenerateIntervalError(RLETunnelError, ValueError):
    """Raised when path sampling produces no samples."""


class UndefinedMetricError(RLETunnelError, ZeroDivisionError):
    """Raised when a ratio metric has a zero denominator."""


class InvalidSpecError(InvalidInputError):
    """Raised when synthetic corpus parameters are infeasible."""
