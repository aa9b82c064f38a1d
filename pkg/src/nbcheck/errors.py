"""Exception types shared across modules."""


class NBCheckError(Exception):
    """Base class for all library errors."""


class ConfigurationError(NBCheckError, ValueError):
    """Unsupported field size or otherwise invalid parameters."""


class SizeLimitError(NBCheckError):
    """An instance is too large for the requested exact method."""


class BudgetExceededError(SizeLimitError):
    """Exhaustive enumeration would visit more sets than the budget allows."""


class NoAdmissibleSetError(NBCheckError, ValueError):
    """No coefficient set with S2 = 0 exists (or fits) for the request."""


class TableIntegrityError(NBCheckError, ValueError):
    """Weight-3 tables do not match the field they are used with, or a cache file is corrupt."""
