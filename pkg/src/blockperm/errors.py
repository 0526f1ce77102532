"""Exception types shared across the package."""


class BlockPermError(ValueError):
    """Base class for all package errors."""


class SizeMismatch(BlockPermError):
    """Operands live in different symmetric groups, fields or rings."""


class ParameterError(BlockPermError):
    """A construction precondition does not hold."""


class BudgetExceeded(BlockPermError):
    """An exhaustive enumeration would exceed the configured budget."""


class VacuousDistance(BlockPermError):
    """Minimum distance requested for a code with fewer than two members."""
