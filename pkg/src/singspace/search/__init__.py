"""Exhaustive verification over small matrix sizes and fields."""

from .enumerate import (
    enumerate_affine_spaces,
    enumerate_linear_subspaces,
    gaussian_binomial,
    space_fingerprint,
)
from .verify import (
    SUPPORTED,
    VerificationReport,
    find_counterexample,
    full_rank_table,
    scan,
    verify_dimension_bound,
    verify_equality_classification,
)

__all__ = [
    "SUPPORTED",
    "VerificationReport",
    "enumerate_affine_spaces",
    "enumerate_linear_subspaces",
    "find_counterexample",
    "full_rank_table",
    "gaussian_binomial",
    "scan",
    "space_fingerprint",
    "verify_dimension_bound",
    "verify_equality_classification",
]
