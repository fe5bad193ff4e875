"""
NC differentiation.

Derivatives are combinatorial: a directional derivative replaces a single
``x`` letter by its direction letter, summed over every occurrence.
Direction letters already present in a polynomial are inert constants, so
derivatives can be iterated.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, Optional, Tuple

from .errors import PreconditionError, VariableIndexError
from .freealg import Family, Letter, Polynomial, Word

logger = logging.getLogger(__name__)


def _check_index(p: Polynomial, j: int) -> None:
    if not 1 <= j <= p.g:
        raise VariableIndexError(f"variable index {j} is outside 1..{p.g}")


def _single_replacements(word: Word, source) -> Iterator[Word]:
    """Every word obtained by swapping one letter matching ``source`` for its direction letter."""
    for position, letter in enumerate(word.letters):
        if source(letter):
            yield word.replace(position, letter.as_direction())


def _is_x(letter: Letter) -> bool:
    return letter.family is Family.X


def partial_x(p: Polynomial, j: int) -> Polynomial:
    """p_{x_j}[h_j]: replace one plain ``x_j`` by ``h_j``."""
    _check_index(p, j)
    target = Letter(Family.X, j)
    return p.linear_map(lambda word: _single_replacements(word, lambda letter: letter == target))


def partial_xT(p: Polynomial, j: int) -> Polynomial:
    """p_{x_j^T}[h_j^T]: replace one ``x_j'`` by ``h_j'``."""
    _check_index(p, j)
    target = Letter(Family.X, j, True)
    return p.linear_map(lambda word: _single_replacements(word, lambda letter: letter == target))


def partial_x_all(p: Polynomial) -> Polynomial:
    """Sum of ``partial_x(p, j)`` over every variable."""
    return p.linear_map(
        lambda word: _single_replacements(word, lambda letter: _is_x(letter) and not letter.transposed)
    )


def partial_xT_all(p: Polynomial) -> Polynomial:
    """Sum of ``partial_xT(p, j)`` over every variable."""
    return p.linear_map(
        lambda word: _single_replacements(word, lambda letter: _is_x(letter) and letter.transposed)
    )


def derivative(p: Polynomial) -> Polynomial:
    """First derivative p'(x)[h] in the direction (h, h^T)."""
    return p.linear_map(lambda word: _single_replacements(word, _is_x))


def _multi_replacements(word: Word, order: int) -> Iterator[Word]:
    positions = word.positions(_is_x)
    for chosen in combinations(positions, order):
        letters = list(word.letters)
        for position in chosen:
            letters[position] = letters[position].as_direction()
        yield Word(tuple(letters))


def lth_derivative(p: Polynomial, order: int) -> Polynomial:
    """``order!`` times the t^order coefficient of p(x + th, x^T + th^T)."""
    if not isinstance(order, int) or order < 1:
        raise PreconditionError(f"derivative order must be a positive integer, got {order!r}")
    expansion = p.linear_map(lambda word: _multi_replacements(word, order))
    return expansion.scale(math.factorial(order))


def complex_hessian(p: Polynomial, order: str = "xT-first") -> Polynomial:
    """Mixed second derivative (p_{x^T}[h^T])_x[h].

    ``order="x-first"`` differentiates in the other order; both agree.
    """
    if order == "xT-first":
        return partial_x_all(partial_xT_all(p))
    if order == "x-first":
        return partial_xT_all(partial_x_all(p))
    raise PreconditionError(f"unknown differentiation order {order!r}")


def pure_second_derivatives(p: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Second derivatives along h only and along h^T only."""
    return partial_x_all(partial_x_all(p)), partial_xT_all(partial_xT_all(p))


def full_hessian(p: Polynomial) -> Polynomial:
    """p''(x)[h]: twice the complex hessian plus both pure second derivatives."""
    pure_x, pure_xT = pure_second_derivatives(p)
    return complex_hessian(p).scale(2) + pure_x + pure_xT


class DerivativeKind(Enum):
    PARTIAL_X = "partial-x"
    PARTIAL_XT = "partial-xT"
    FULL_FIRST = "first"
    LTH = "lth"
    COMPLEX_HESSIAN = "complex-hessian"
    FULL_HESSIAN = "hessian"


@dataclass(frozen=True)
class DerivativeRequest:
    target: Polynomial
    kind: DerivativeKind
    index: Optional[int] = None
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind in (DerivativeKind.PARTIAL_X, DerivativeKind.PARTIAL_XT):
            if self.index is None:
                raise PreconditionError(f"{self.kind.value} needs a variable index")
            _check_index(self.target, self.index)
        if self.kind is DerivativeKind.LTH and (self.order is None or self.order < 1):
            raise PreconditionError("an l-th derivative needs an order of at least 1")


def differentiate(request: DerivativeRequest) -> Polynomial:
    p = request.target
    kind = request.kind
    logger.debug("differentiating %d terms: %s", len(p), kind.value)
    if kind is DerivativeKind.PARTIAL_X:
        return partial_x(p, request.index)
    if kind is DerivativeKind.PARTIAL_XT:
        return partial_xT(p, request.index)
    if kind is DerivativeKind.FULL_FIRST:
        return derivative(p)
    if kind is DerivativeKind.LTH:
        return lth_derivative(p, request.order)
    if kind is DerivativeKind.COMPLEX_HESSIAN:
        return complex_hessian(p)
    return full_hessian(p)
