class FreydError(Exception):
    """Base class for errors raised by freydcat."""


class UsageError(FreydError, ValueError):
    """Malformed input: ring or dimension mismatch, bad file, bad arguments."""


class PreconditionError(FreydError):
    """A documented precondition of a construction does not hold."""


class ConfigurationError(FreydError):
    """A category lacks a capability required by the requested operation."""


class ResourceError(FreydError):
    """An enumeration bound was exceeded."""
