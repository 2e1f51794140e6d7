"""Lie algebras from explicit matrix bases."""

from .algebra import (
    LieAlgebra,
    LieAlgebraError,
    NotClosed,
    bracket_table,
    direct_sum,
    format_combination,
    jacobi_check,
    parse_combination,
    span_contains,
)
from .quaternion import I, J, K, QMatrix, Quaternion, parse_quaternion, qmatrix

__all__ = [
    "I",
    "J",
    "K",
    "LieAlgebra",
    "LieAlgebraError",
    "NotClosed",
    "QMatrix",
    "Quaternion",
    "bracket_table",
    "direct_sum",
    "format_combination",
    "jacobi_check",
    "parse_combination",
    "parse_quaternion",
    "qmatrix",
    "span_contains",
]
