"""Exception hierarchy."""


class QuadcutError(Exception):
    """Base class for all package errors."""


class GraphParseError(QuadcutError, ValueError):
    """Malformed graph text. Carries the offending 1-based line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GraphBoundsError(GraphParseError, IndexError):
    """Node id outside ``1..n``."""


class GraphValidationError(QuadcutError, ValueError):
    """Structurally invalid graph or graph unsuitable for the request."""


class ConfigError(QuadcutError, ValueError):
    """Invalid solver or search configuration."""


class ShapeError(QuadcutError, ValueError):
    """Array shape does not match the graph."""


class NumericOverflowError(QuadcutError, ArithmeticError):
    """A non-finite value appeared during the ascent."""

    def __init__(self, iteration, member):
        self.iteration = iteration
        self.member = member
        super().__init__(
            f"non-finite state at iteration {iteration} in batch member {member}"
        )


class OracleSizeError(QuadcutError, ValueError):
    """Instance too large for exhaustive enumeration."""
