"""Exception hierarchy shared by all modules."""


class ThinnedTWError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ThinnedTWError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(ThinnedTWError, ValueError):
    """An evaluation point lies outside the range covered by a trajectory."""


class NumericError(ThinnedTWError, ArithmeticError):
    """A numerical procedure failed to produce a trustworthy result."""


class IllConditioningError(NumericError):
    """A discretized operator is too close to singular to continue."""
