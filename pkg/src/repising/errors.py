"""Package-wide error types."""


class CapacityError(RuntimeError):
    """A solver refused an instance that exceeds its size/width guard."""


class ConfigError(ValueError):
    """An experiment or CLI configuration failed validation."""
