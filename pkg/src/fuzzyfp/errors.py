"""Exception types shared across the package."""


class DomainError(ValueError):
    """A numeric argument is outside the domain of the operation."""


class UsageError(ValueError):
    """An operation was called with structurally unusable inputs."""


class EmptySampleError(UsageError):
    """Every tuple of a sample was skipped; nothing left to evaluate."""


class CodomainError(ValueError):
    """A mapping produced a point outside its declared codomain."""


class ConfigError(ValueError):
    """A configuration document failed validation."""
