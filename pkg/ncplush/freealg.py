"""
Free *-algebra over noncommuting variables.

Words are finite sequences of letters ``x_j``, ``x_j^T``, ``h_j``, ``h_j^T``;
polynomials map words to nonzero rational coefficients. The involution
reverses a word and flips every letter's transposition flag.

Words are totally ordered by (length, letters), letters by
(family, index, transposed) with the ``x`` family before ``h``. Every
listing of terms, border vectors and wed classes follows this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering
from typing import (
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from .errors import ContextMismatchError, PreconditionError, VariableIndexError

Rational = Union[int, Fraction]


class Family(IntEnum):
    X = 0
    H = 1


@dataclass(frozen=True, order=True)
class Letter:
    """One generator occurrence: ``x_j``/``h_j``, possibly transposed."""

    family: Family
    index: int
    transposed: bool = False

    @property
    def T(self) -> Letter:
        return Letter(self.family, self.index, not self.transposed)

    @property
    def is_direction(self) -> bool:
        return self.family is Family.H

    def as_direction(self) -> Letter:
        """The ``h`` letter standing in for this ``x`` letter."""
        return Letter(Family.H, self.index, self.transposed)

    def as_base(self) -> Letter:
        """The ``x`` letter a direction letter integrates back to."""
        return Letter(Family.X, self.index, self.transposed)

    def __str__(self) -> str:
        name = "x" if self.family is Family.X else "h"
        return f"{name}{self.index}{chr(39) if self.transposed else ''}"


def x(index: int, transposed: bool = False) -> Letter:
    return Letter(Family.X, index, transposed)


def h(index: int, transposed: bool = False) -> Letter:
    return Letter(Family.H, index, transposed)


@total_ordering
@dataclass(frozen=True)
class Word:
    """A monomial without coefficient; the empty word is the scalar 1."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def of(cls, *letters: Letter) -> Word:
        return cls(tuple(letters))

    def sort_key(self) -> Tuple[int, Tuple[Letter, ...]]:
        return (len(self.letters), self.letters)

    def __lt__(self, other: Word) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(str(letter) for letter in self.letters)

    def transpose(self) -> Word:
        return Word(tuple(letter.T for letter in reversed(self.letters)))

    @property
    def T(self) -> Word:
        return self.transpose()

    def replace(self, position: int, letter: Letter) -> Word:
        letters = list(self.letters)
        letters[position] = letter
        return Word(tuple(letters))

    def collapse(self) -> Word:
        """Replace every direction letter by its base letter."""
        return Word(tuple(letter.as_base() for letter in self.letters))

    def positions(self, predicate: Callable[[Letter], bool]) -> List[int]:
        return [i for i, letter in enumerate(self.letters) if predicate(letter)]

    def count(self, predicate: Callable[[Letter], bool]) -> int:
        return sum(1 for letter in self.letters if predicate(letter))

    def h_count(self) -> int:
        return self.count(lambda letter: letter.is_direction)

    def h_positions(self) -> List[int]:
        return self.positions(lambda letter: letter.is_direction)

    def is_analytic(self) -> bool:
        return not any(letter.transposed for letter in self.letters)

    def is_antianalytic(self) -> bool:
        return all(letter.transposed for letter in self.letters)

    def is_mixed(self) -> bool:
        return not self.is_analytic() and not self.is_antianalytic()


ONE = Word()


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"coefficients must be int or Fraction, got {value!r}")
    return Fraction(value)


def _check_context(g: int) -> None:
    if not isinstance(g, int) or g < 1:
        raise PreconditionError(f"variable count must be a positive integer, got {g!r}")


@dataclass(frozen=True)
class Polynomial:
    """Finite rational combination of words over ``g`` variables.

    Instances are canonical: no zero coefficients, terms kept in word order.
    Build them with the classmethods, never by passing ``_terms`` directly.
    """

    g: int
    _terms: Tuple[Tuple[Word, Fraction], ...] = ()

    # --- Construction ---

    @classmethod
    def _build(cls, accumulator: Mapping[Word, Fraction], g: int) -> Polynomial:
        items = sorted(
            ((word, coeff) for word, coeff in accumulator.items() if coeff != 0),
            key=lambda item: item[0].sort_key(),
        )
        return cls(g, tuple(items))

    @classmethod
    def from_terms(
        cls,
        terms: Union[Mapping[Word, Rational], Iterable[Tuple[Word, Rational]]],
        g: int,
    ) -> Polynomial:
        _check_context(g)
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        accumulator: Dict[Word, Fraction] = {}
        for word, coeff in pairs:
            for letter in word:
                if not 1 <= letter.index <= g:
                    raise VariableIndexError(
                        f"letter {letter} is outside the context g={g}"
                    )
            accumulator[word] = accumulator.get(word, Fraction(0)) + _as_fraction(coeff)
        return cls._build(accumulator, g)

    @classmethod
    def zero(cls, g: int) -> Polynomial:
        _check_context(g)
        return cls(g, ())

    @classmethod
    def constant(cls, value: Rational, g: int) -> Polynomial:
        return cls.from_terms({ONE: value}, g)

    @classmethod
    def from_word(cls, word: Word, g: int, coefficient: Rational = 1) -> Polynomial:
        return cls.from_terms({word: coefficient}, g)

    @classmethod
    def x(cls, index: int, g: int, transposed: bool = False) -> Polynomial:
        return cls.from_word(Word.of(x(index, transposed)), g)

    @classmethod
    def h(cls, index: int, g: int, transposed: bool = False) -> Polynomial:
        return cls.from_word(Word.of(h(index, transposed)), g)

    # --- Access ---

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> Tuple[Tuple[Word, Fraction], ...]:
        return self._terms

    def words(self) -> List[Word]:
        return [word for word, _ in self._terms]

    def coefficient(self, word: Word) -> Fraction:
        for candidate, coeff in self._terms:
            if candidate == word:
                return coeff
        return Fraction(0)

    def constant_term(self) -> Fraction:
        return self.coefficient(ONE)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(len(word) == 0 for word, _ in self._terms)

    def degree(self) -> int:
        """Largest word length; -1 for the zero polynomial."""
        return max((len(word) for word, _ in self._terms), default=-1)

    def h_degree(self) -> int:
        return max((word.h_count() for word, _ in self._terms), default=0)

    # --- Structure ---

    def transpose(self) -> Polynomial:
        return Polynomial._build(
            {word.transpose(): coeff for word, coeff in self._terms}, self.g
        )

    @property
    def T(self) -> Polynomial:
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.transpose() == self

    def is_analytic(self) -> bool:
        return all(word.is_analytic() for word, _ in self._terms)

    def is_antianalytic(self) -> bool:
        return all(word.is_antianalytic() for word, _ in self._terms)

    def restrict(self, predicate: Callable[[Word], bool]) -> Polynomial:
        """Sub-polynomial of the terms whose word satisfies ``predicate``."""
        return Polynomial(
            self.g, tuple((word, coeff) for word, coeff in self._terms if predicate(word))
        )

    def linear_map(self, image: Callable[[Word], Iterable[Word]]) -> Polynomial:
        """Extend a word -> sum-of-words map linearly over the terms."""
        accumulator: Dict[Word, Fraction] = {}
        for word, coeff in self._terms:
            for target in image(word):
                accumulator[target] = accumulator.get(target, Fraction(0)) + coeff
        return Polynomial._build(accumulator, self.g)

    def with_context(self, g: int) -> Polynomial:
        """Reinterpret the polynomial over ``g`` variables (explicit widening)."""
        return Polynomial.from_terms(self._terms, g)

    # --- Arithmetic ---

    def _coerce(self, other) -> Optional[Polynomial]:
        if isinstance(other, Polynomial):
            if other.g != self.g:
                raise ContextMismatchError(
                    f"cannot combine polynomials over g={self.g} and g={other.g}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other, self.g)
        return None

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        accumulator = dict(self._terms)
        for word, coeff in other._terms:
            accumulator[word] = accumulator.get(word, Fraction(0)) + coeff
        return Polynomial._build(accumulator, self.g)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.g, tuple((word, -coeff) for word, coeff in self._terms))

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor: Rational) -> Polynomial:
        factor = _as_fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.g)
        return Polynomial(self.g, tuple((word, coeff * factor) for word, coeff in self._terms))

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        accumulator: Dict[Word, Fraction] = {}
        for left, a in self._terms:
            for right, b in other._terms:
                word = left * right
                accumulator[word] = accumulator.get(word, Fraction(0)) + a * b
        return Polynomial._build(accumulator, self.g)

    def __rmul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError(f"exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.constant(1, self.g)
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self) -> str:
        from .ncparse import format_polynomial

        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial(g={self.g}, {self})"


@dataclass(frozen=True)
class Classification:
    symmetric: bool
    analytic: bool
    antianalytic: bool
    degree: int
    h_degree: int


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def transpose(p: Polynomial) -> Polynomial:
    return p.transpose()


def classify(p: Polynomial) -> Classification:
    return Classification(
        symmetric=p.is_symmetric(),
        analytic=p.is_analytic(),
        antianalytic=p.is_antianalytic(),
        degree=p.degree(),
        h_degree=p.h_degree(),
    )


def analytic_part(p: Polynomial) -> Polynomial:
    """Nonconstant terms built from plain letters only."""
    return p.restrict(lambda word: len(word) > 0 and word.is_analytic())


def antianalytic_part(p: Polynomial) -> Polynomial:
    """Nonconstant terms built from transposed letters only."""
    return p.restrict(lambda word: len(word) > 0 and word.is_antianalytic())
