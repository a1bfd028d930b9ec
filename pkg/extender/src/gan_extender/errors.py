"""Adapter error types."""


class ModelError(RuntimeError):
    """Model cannot be loaded, or inference inputs are invalid."""


class ProtocolError(RuntimeError):
    """Request directory is malformed."""
