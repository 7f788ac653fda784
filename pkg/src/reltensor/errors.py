"""Shared error types."""


class ScaleLimitError(ValueError):
    """Raised when an input is outside the supported desk scale."""
