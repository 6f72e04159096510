"""Custom exceptions for gemcraft."""


class GemcraftError(Exception):
    """Base exception for gemcraft."""

    pass


class GraphFormatError(GemcraftError):
    """Raised when a graph or diagram cannot be read or is malformed."""

    pass


class PreconditionError(GemcraftError):
    """Raised when an input is valid but belongs to the wrong class for an operation."""

    pass


class ConsistencyError(GemcraftError):
    """Raised when an internal census, Euler characteristic or count check fails."""

    pass


class ConfigurationError(GemcraftError):
    """Raised when configuration is invalid."""

    pass
