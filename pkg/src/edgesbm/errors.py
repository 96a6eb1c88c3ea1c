"""Exception types raised across the package."""


class EdgeSbmError(ValueError):
    """Base class for all validation errors raised by this package."""


class PartitionError(EdgeSbmError):
    """Blocks overlap, miss nodes, or reference out-of-range nodes."""


class MatrixError(EdgeSbmError):
    """Block probability matrix violates range or normalization constraints.

    ``mass`` carries the actual total probability mass when normalization
    failed, so callers can report how far off the input was.
    """

    def __init__(self, message, mass=None):
        super().__init__(message)
        self.mass = mass


class NodeRangeError(EdgeSbmError):
    """A node index falls outside [0, n)."""


class SizeMismatchError(EdgeSbmError):
    """Shape or node-count mismatch between arguments."""


class ExhaustedStateError(EdgeSbmError):
    """A sequential predictor was asked to move past its final edge."""


class EmptyEdgeListError(EdgeSbmError):
    """An operation that needs at least one edge received none."""


class ParseError(EdgeSbmError):
    """A file failed to parse; ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
