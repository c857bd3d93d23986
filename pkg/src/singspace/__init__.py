"""Exact linear algebra over prime fields for spaces of singular matrices."""

from .errors import (
    BudgetExceeded,
    CapExceeded,
    NoCompletion,
    ShapeError,
    SingularTransform,
    ZeroInverse,
    ZeroVector,
)
from .exactmat import Matrix, matrix_unit, rank, rank_one, trace_pair
from .gf import FieldCtx
from .spaces import AffineMatrixSpace, LinearMatrixSpace, affine, span

__version__ = "0.1.0"

__all__ = [
    "AffineMatrixSpace",
    "BudgetExceeded",
    "CapExceeded",
    "FieldCtx",
    "LinearMatrixSpace",
    "Matrix",
    "NoCompletion",
    "ShapeError",
    "SingularTransform",
    "ZeroInverse",
    "ZeroVector",
    "affine",
    "matrix_unit",
    "rank",
    "rank_one",
    "span",
    "trace_pair",
]
