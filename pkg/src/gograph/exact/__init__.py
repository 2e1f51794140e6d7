"""Exact arithmetic: rationals, polynomials, rational functions, linear algebra."""

from .linalg import (
    Consistent,
    Inconsistent,
    Matrix,
    RrefResult,
    nullspace,
    rank,
    rref,
    same_row_space,
    solve_linear,
)
from .poly import ZETA, Poly, is_graded, poly_gcd, poly_lcm, variable_key
from .ratfunc import RAT_ONE, RAT_ZERO, ExpressionError, RatFunc, as_ratfunc, parse_expr

__all__ = [
    "Consistent",
    "ExpressionError",
    "Inconsistent",
    "Matrix",
    "Poly",
    "RAT_ONE",
    "RAT_ZERO",
    "RatFunc",
    "RrefResult",
    "ZETA",
    "as_ratfunc",
    "is_graded",
    "nullspace",
    "parse_expr",
    "poly_gcd",
    "poly_lcm",
    "rank",
    "rref",
    "same_row_space",
    "solve_linear",
    "variable_key",
]
