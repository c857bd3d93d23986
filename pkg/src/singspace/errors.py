"""Exceptions shared across modules."""

from .gf import ZeroInverse


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured element cap."""


class BudgetExceeded(RuntimeError):
    """Search parameters fall outside the supported budget table."""


class SingularTransform(ValueError):
    """An equivalence transform was given a non-invertible matrix."""


class ZeroVector(ValueError):
    """A nonzero vector was required."""


class ShapeError(ValueError):
    """Matrix shapes do not satisfy an operation's precondition."""


class NoCompletion(ValueError):
    """The border of a matrix admits no full-rank completion."""


__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "NoCompletion",
    "ShapeError",
    "SingularTransform",
    "ZeroInverse",
    "ZeroVector",
]
