# Exact nc differentiation, integration and plush classification
from .freealg import Family, Letter, Polynomial, Word, classify, h, multiply, transpose, x
from .ncparse import format_polynomial, parse
from .plush import PlushDecomposition, classify_plush, verify_decomposition

__all__ = [
    "Family",
    "Letter",
    "Polynomial",
    "PlushDecomposition",
    "Word",
    "classify",
    "classify_plush",
    "format_polynomial",
    "h",
    "multiply",
    "parse",
    "transpose",
    "verify_decomposition",
    "x",
]
