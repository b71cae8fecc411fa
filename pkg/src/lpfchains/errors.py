"""Exception types shared across the package."""


class LpfchainsError(Exception):
    """Base class for package-specific errors."""


class OutOfRangeError(LpfchainsError, ValueError):
    """A query exceeds the range a table was built for."""


class ResourceBudgetError(LpfchainsError):
    """An allocation would exceed the configured memory budget."""


class CapExceededError(LpfchainsError):
    """The requested n is above the configured cap for this operation."""


class EmptyIntervalError(LpfchainsError):
    """No primes exist in the construction interval (n too small)."""
