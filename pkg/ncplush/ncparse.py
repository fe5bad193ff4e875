"""
Text grammar for nc polynomials.

    poly     := ["+"|"-"] term (("+"|"-") term)*
    term     := rational ["*"] factor ("*" factor)* | factor ("*" factor)* | rational
    factor   := (atom | "(" poly ")") postfix*
    postfix  := "'" | "^T" | "^" uint
    atom     := ("x"|"h") uint
    rational := uint ["/" uint]

Whitespace is insignificant. ``'`` and ``^T`` both transpose; postfix
operators apply left to right, so ``x1'^2`` is ``x1' * x1'``.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import MalformedRationalError, ParseError, ParseIndexError
from .freealg import Family, Letter, Polynomial, Word

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<atom>[xh]\d+)|(?P<int>\d+)|(?P<op>[-+*/^'()T]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "atom", "int", "op" or "end"
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ParseError(
                f"unexpected character {text[offset]!r}", text=text, position=offset
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def infer_context(text: str) -> int:
    """Largest variable index used in ``text``, at least 1."""
    indices = [int(token.value[1:]) for token in tokenize(text) if token.kind == "atom"]
    return max(indices, default=1) or 1


class _Parser:
    def __init__(self, text: str, g: int):
        self.text = text
        self.g = g
        self.tokens = tokenize(text)
        self.index = 0

    # --- Token helpers ---

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _is_op(self, *values: str) -> bool:
        return self.current.kind == "op" and self.current.value in values

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, text=self.text, position=token.position)

    def _expect_op(self, value: str) -> Token:
        if not self._is_op(value):
            found = self.current.value or "end of input"
            raise self._error(f"expected {value!r}, found {found!r}")
        return self._advance()

    # --- Grammar ---

    def parse(self) -> Polynomial:
        result = self.poly()
        if self.current.kind != "end":
            raise self._error(f"unexpected {self.current.value!r}")
        return result

    def poly(self) -> Polynomial:
        sign = 1
        if self._is_op("+", "-"):
            sign = -1 if self._advance().value == "-" else 1
        result = self.term().scale(sign)
        while self._is_op("+", "-"):
            sign = -1 if self._advance().value == "-" else 1
            result = result + self.term().scale(sign)
        return result

    def term(self) -> Polynomial:
        if self.current.kind == "int":
            coefficient = self.rational()
            if self._is_op("*"):
                self._advance()
            elif not (self.current.kind == "atom" or self._is_op("(")):
                return Polynomial.constant(coefficient, self.g)
            product = self.factor().scale(coefficient)
        else:
            product = self.factor()
        while self._is_op("*"):
            self._advance()
            product = product * self.factor()
        return product

    def rational(self) -> Fraction:
        numerator = self._advance()
        if not self._is_op("/"):
            return Fraction(int(numerator.value))
        slash = self._advance()
        if self.current.kind != "int":
            raise MalformedRationalError(
                "denominator missing", text=self.text, position=slash.position
            )
        denominator = self._advance()
        if int(denominator.value) == 0:
            raise MalformedRationalError(
                "zero denominator", text=self.text, position=denominator.position
            )
        return Fraction(int(numerator.value), int(denominator.value))

    def factor(self) -> Polynomial:
        token = self.current
        if token.kind == "atom":
            self._advance()
            base = Polynomial.from_word(Word.of(self.letter(token)), self.g)
        elif self._is_op("("):
            self._advance()
            base = self.poly()
            self._expect_op(")")
        else:
            found = token.value or "end of input"
            raise self._error(f"expected a variable or '(', found {found!r}")
        return self.postfix(base)

    def postfix(self, base: Polynomial) -> Polynomial:
        while True:
            if self._is_op("'"):
                self._advance()
                base = base.transpose()
            elif self._is_op("^"):
                caret = self._advance()
                if self._is_op("T"):
                    self._advance()
                    base = base.transpose()
                elif self.current.kind == "int":
                    base = base ** int(self._advance().value)
                else:
                    raise self._error("expected an exponent or 'T' after '^'", caret)
            else:
                return base

    def letter(self, token: Token) -> Letter:
        family = Family.X if token.value[0] == "x" else Family.H
        index = int(token.value[1:])
        if not 1 <= index <= self.g:
            raise ParseIndexError(
                f"variable {token.value} is outside 1..{self.g}",
                text=self.text,
                position=token.position,
            )
        return Letter(family, index)


def parse(text: str, g: Optional[int] = None) -> Polynomial:
    """Parse ``text`` into a canonical Polynomial over ``g`` variables.

    When ``g`` is omitted the context is the largest index used.
    """
    if g is None:
        g = infer_context(text)
    if not text.strip():
        raise ParseError("empty expression", text=text, position=0)
    return _Parser(text, g).parse()


# --- Printing ---

def format_word(word: Word) -> str:
    """Letters joined by ``*`` with runs of one letter compressed to powers."""
    if not word.letters:
        return "1"
    chunks: List[str] = []
    run_letter, run_length = word.letters[0], 0
    for letter in word.letters:
        if letter == run_letter:
            run_length += 1
            continue
        chunks.append(_format_run(run_letter, run_length))
        run_letter, run_length = letter, 1
    chunks.append(_format_run(run_letter, run_length))
    return "*".join(chunks)


def _format_run(letter: Letter, length: int) -> str:
    return str(letter) if length == 1 else f"{letter}^{length}"


def _format_term(word: Word, magnitude: Fraction) -> str:
    if not word.letters:
        return str(magnitude)
    if magnitude == 1:
        return format_word(word)
    return f"{magnitude}*{format_word(word)}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for position, (word, coeff) in enumerate(p.items()):
        body = _format_term(word, abs(coeff))
        if position == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)


def parse_corpus(lines: Iterable[str], comment: str = "#") -> Iterator[Tuple[int, str]]:
    """Yield ``(line_number, expression)`` for every non-blank corpus line.

    ``comment`` starts a comment that runs to the end of the line.
    """
    for number, line in enumerate(lines, start=1):
        expression = line.split(comment, 1)[0].strip()
        if expression:
            yield number, expression
