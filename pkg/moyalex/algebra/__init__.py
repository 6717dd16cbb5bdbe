"""Exact Laurent-polynomial and rational-function arithmetic."""

from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    brace_int,
    eval_at_one,
    exact_div,
    format_poly,
    parse_poly,
    quantum_int,
    symmetry_shift,
    t_half,
    try_div,
    unit_canonical,
)
from .linear import linear_names, parse_linear
from .rational import RationalFunc, rf

__all__ = [
    "ONE",
    "ZERO",
    "LaurentPoly",
    "RationalFunc",
    "brace_int",
    "eval_at_one",
    "exact_div",
    "format_poly",
    "linear_names",
    "parse_linear",
    "parse_poly",
    "quantum_int",
    "rf",
    "symmetry_shift",
    "t_half",
    "try_div",
    "unit_canonical",
]
