"""Exact scalars (rationals, cyclotomic numbers) and exact linear algebra."""
from .cyclotomic import (
    Cyclotomic,
    Rational,
    as_cyclotomic,
    cyc_root_of_unity,
    cyclotomic_polynomial,
    format_scalar,
    is_rational,
    lift_to_common_order,
    rational_part_decomposition,
    scalar_order,
    simplify,
    to_fraction,
)
from .linalg import ExactMatrix, echelon, kernel_basis, rank, solve_dense
from .parse import CyclotomicSyntaxError, parse_cyclotomic

__all__ = [
    "Cyclotomic",
    "CyclotomicSyntaxError",
    "ExactMatrix",
    "Rational",
    "as_cyclotomic",
    "cyc_root_of_unity",
    "cyclotomic_polynomial",
    "echelon",
    "format_scalar",
    "is_rational",
    "kernel_basis",
    "lift_to_common_order",
    "parse_cyclotomic",
    "rank",
    "rational_part_decomposition",
    "scalar_order",
    "simplify",
    "solve_dense",
    "to_fraction",
]
