"""
Exact Gram representations of hessian parts and rational PSD factorization.

A hereditary word factors uniquely as a^T b with a and b analytic and each
carrying one plain direction letter; an antihereditary word as a b^T.
Collecting coefficients over the border vector y gives the unique Gram
matrix G with part = y^T G y. Positive semidefiniteness is decided by a
symmetric-pivoted LDL^T over ``Fraction``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import HessianFormError
from .freealg import Polynomial, Word

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Fraction, ...], ...]


class Side(Enum):
    HEREDITARY = "hereditary"
    ANTIHEREDITARY = "antihereditary"


# --- Exact matrix helpers ---

def fraction_array(rows: Sequence[Sequence], shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Object array of Fractions; ``shape`` fixes the size of empty matrices."""
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    array = np.empty(shape, dtype=object)
    array.fill(Fraction(0))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = Fraction(value)
    return array


def to_rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def rational_matrix(rows: Sequence[Sequence], shape: Optional[Tuple[int, int]] = None) -> sympy.Matrix:
    """sympy Matrix of exact Rationals; ``shape`` fixes the size of empty matrices."""
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    return sympy.Matrix(shape[0], shape[1], lambda i, j: to_rational(rows[i][j]))


def as_matrix(matrix: sympy.Matrix) -> Matrix:
    return tuple(
        tuple(Fraction(int(matrix[i, j].p), int(matrix[i, j].q)) for j in range(matrix.cols))
        for i in range(matrix.rows)
    )


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    if not rows or not len(rows[0]):
        return 0
    return rational_matrix(rows).rank()


def quadratic_form(matrix: Matrix, vector: Sequence[Fraction]) -> Fraction:
    """v^T G v, exactly."""
    total = Fraction(0)
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            total += vector[i] * value * vector[j]
    return total


# --- Hessian split ---

def _direction_positions(word: Word) -> Tuple[int, int]:
    directions = word.h_positions()
    plain = [i for i in directions if not word.letters[i].transposed]
    transposed = [i for i in directions if word.letters[i].transposed]
    if len(plain) != 1 or len(transposed) != 1:
        raise HessianFormError(f"term {word} does not have exactly one h and one h'")
    return plain[0], transposed[0]


def split_hessian(q: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Split q into its hereditary (h' left of h) and antihereditary parts."""
    hereditary: Dict[Word, Fraction] = {}
    antihereditary: Dict[Word, Fraction] = {}
    for word, coeff in q.items():
        plain, transposed = _direction_positions(word)
        (hereditary if transposed < plain else antihereditary)[word] = coeff
    return Polynomial._build(hereditary, q.g), Polynomial._build(antihereditary, q.g)


# --- Gram forms ---

@dataclass(frozen=True)
class GramForm:
    border: Tuple[Word, ...]
    matrix: Matrix
    side: Side
    g: int

    def __len__(self) -> int:
        return len(self.border)

    def as_array(self) -> np.ndarray:
        return fraction_array(self.matrix, (len(self.border), len(self.border)))

    def rank(self) -> int:
        return matrix_rank(self.matrix)


@dataclass(frozen=True)
class GramResult:
    form: Optional[GramForm] = None
    witness: Optional[Word] = None

    @property
    def ok(self) -> bool:
        return self.form is not None


def _factor_word(word: Word, side: Side) -> Optional[Tuple[Word, Word]]:
    """(a, b) with word = a^T b (hereditary) or a b^T (antihereditary)."""
    letters = word.letters
    leading_transposed = side is Side.HEREDITARY
    cut = 0
    while cut < len(letters) and letters[cut].transposed == leading_transposed:
        cut += 1
    head, tail = word[:cut], word[cut:]
    if any(letter.transposed == leading_transposed for letter in tail.letters):
        return None
    if head.h_count() != 1 or tail.h_count() != 1:
        return None
    if side is Side.HEREDITARY:
        return head.transpose(), tail
    return head, tail.transpose()


def build_gram(part: Polynomial, side: Side) -> GramResult:
    entries: Dict[Tuple[Word, Word], Fraction] = {}
    for word, coeff in part.items():
        factors = _factor_word(word, side)
        if factors is None:
            logger.debug("%s term %s is not of split form", side.value, word)
            return GramResult(witness=word)
        entries[factors] = coeff
    border = tuple(sorted({w for pair in entries for w in pair}))
    position = {word: i for i, word in enumerate(border)}
    rows = [[Fraction(0)] * len(border) for _ in border]
    for (a, b), coeff in entries.items():
        rows[position[a]][position[b]] = coeff
    for i in range(len(border)):
        for j in range(i + 1, len(border)):
            if rows[i][j] != rows[j][i]:
                raise HessianFormError(
                    f"{side.value} part is not symmetric: Gram entries for "
                    f"({border[i]}, {border[j]}) differ"
                )
    matrix = tuple(tuple(row) for row in rows)
    logger.debug("%s Gram matrix over a border of %d words", side.value, len(border))
    return GramResult(form=GramForm(border, matrix, side, part.g))


def _pair(form: GramForm, a: Polynomial, b: Polynomial) -> Polynomial:
    if form.side is Side.HEREDITARY:
        return a.transpose() * b
    return a * b.transpose()


def expand_gram(form: GramForm) -> Polynomial:
    """Rebuild the hessian part sum G[a, b] * (a^T b or a b^T)."""
    total = Polynomial.zero(form.g)
    for i, a in enumerate(form.border):
        for j, b in enumerate(form.border):
            if form.matrix[i][j]:
                pair = _pair(form, Polynomial.from_word(a, form.g), Polynomial.from_word(b, form.g))
                total = total + pair.scale(form.matrix[i][j])
    return total


# --- PSD factorization ---

@dataclass(frozen=True)
class PsdFactorization:
    """G = sum_j pivots[j] * rows[j] rows[j]^T with rows in border coordinates.

    ``permutation`` lists the border positions in pivot order; each row has a
    unit entry at its own pivot and zeros at earlier pivots.
    """

    pivots: Tuple[Fraction, ...]
    rows: Matrix
    permutation: Tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class PsdResult:
    factorization: Optional[PsdFactorization] = None
    certificate: Optional[Tuple[Fraction, ...]] = None

    @property
    def ok(self) -> bool:
        return self.factorization is not None


def _negative_direction(schur: np.ndarray, remaining: List[int]) -> Optional[np.ndarray]:
    n = schur.shape[0]
    for k in remaining:
        if schur[k, k] < 0:
            vector = fraction_array([[0] * n])[0]
            vector[k] = Fraction(1)
            return vector
    for position, i in enumerate(remaining):
        for j in remaining[position + 1:]:
            if schur[i, j] != 0:
                vector = fraction_array([[0] * n])[0]
                vector[i] = Fraction(1)
                vector[j] = Fraction(-1 if schur[i, j] > 0 else 1)
                return vector
    return None


def _lift_certificate(vector: np.ndarray, rows: List[np.ndarray], order: List[int]) -> np.ndarray:
    # back-substitute so that every eliminated row is orthogonal to the vector
    for row, pivot in reversed(list(zip(rows, order))):
        vector[pivot] = Fraction(0)
        vector[pivot] = -sum(row[j] * vector[j] for j in range(len(vector)))
    return vector


def factor_matrix(matrix: Matrix) -> PsdResult:
    n = len(matrix)
    schur = fraction_array(matrix, (n, n))
    remaining = list(range(n))
    pivots: List[Fraction] = []
    rows: List[np.ndarray] = []
    order: List[int] = []
    while remaining:
        k = max(remaining, key=lambda i: (schur[i, i], -i))
        d = schur[k, k]
        if d <= 0:
            direction = _negative_direction(schur, remaining)
            if direction is None:
                break
            certificate = _lift_certificate(direction, rows, order)
            return PsdResult(certificate=tuple(Fraction(value) for value in certificate))
        row = fraction_array([[0] * n])[0]
        for j in remaining:
            row[j] = schur[k, j] / d
        schur = schur - d * np.outer(row, row)
        pivots.append(d)
        rows.append(row)
        order.append(k)
        remaining.remove(k)
    logger.debug("LDL factorization: %d pivots out of %d", len(pivots), n)
    return PsdResult(
        factorization=PsdFactorization(
            pivots=tuple(pivots),
            rows=tuple(tuple(Fraction(value) for value in row) for row in rows),
            permutation=tuple(order),
            rank=len(pivots),
        )
    )


def psd_factor(form: GramForm) -> PsdResult:
    return factor_matrix(form.matrix)


def factor_polynomials(form: GramForm, factorization: PsdFactorization) -> List[Tuple[Fraction, Polynomial]]:
    """Weighted factors (d_j, r_j) with r_j = rows[j] . border."""
    factors = []
    for weight, row in zip(factorization.pivots, factorization.rows):
        terms = {word: value for word, value in zip(form.border, row)}
        factors.append((weight, Polynomial._build(terms, form.g)))
    return factors


def expand_factorization(form: GramForm, factorization: PsdFactorization) -> Polynomial:
    total = Polynomial.zero(form.g)
    for weight, factor in factor_polynomials(form, factorization):
        total = total + _pair(form, factor, factor).scale(weight)
    return total
