"""
Exceptions raised by the numeric modules.

Every error is also a ValueError so callers that only care about
"bad input" can catch that.
"""


class ProjectionToolkitError(ValueError):
    """Base class for all toolkit errors."""


class NumericInputError(ProjectionToolkitError):
    """Non-finite or malformed numeric input."""


class ArgumentError(ProjectionToolkitError):
    """Dimension/algebra mismatch or a violated precondition on scalar arguments."""


class OrderError(ProjectionToolkitError):
    """An order relation required by an operation does not hold."""


class ConstructionError(ProjectionToolkitError):
    """A construction cannot be carried out for the given input."""


class ConfigError(ProjectionToolkitError):
    """Invalid tolerance, schedule or run configuration."""
