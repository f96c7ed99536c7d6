"""Exact scalar, matrix, lattice and truncated-series arithmetic."""
from .matrix import (
    ExactMatrix,
    charpoly_coeffs,
    mat_det,
    mat_inverse,
    mat_kernel,
    mat_rank,
    pivot_columns,
    solve,
)
from .scalars import GaussianRational, I, as_fraction, parse_scalar, scalar_to_json, simplify
from .series import (
    GradedSeries,
    TruncationError,
    product_all,
    series_product,
    series_reciprocal,
    series_sum,
)
from .snf import cokernel, int_det, int_matmul, invariant_factors, smith_normal_form

__all__ = [
    "ExactMatrix", "GaussianRational", "GradedSeries", "I", "TruncationError",
    "as_fraction", "charpoly_coeffs", "cokernel", "int_det", "int_matmul",
    "invariant_factors", "mat_det", "mat_inverse", "mat_kernel", "mat_rank",
    "parse_scalar", "pivot_columns", "product_all", "scalar_to_json", "series_product",
    "series_reciprocal", "series_sum", "simplify", "smith_normal_form", "solve",
]
