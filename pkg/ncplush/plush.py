"""
Classification of nc plurisubharmonic polynomials.

A symmetric polynomial p is plush exactly when

    p = sum_j d_j f_j^T f_j + sum_j e_j k_j k_j^T + F + F^T

with positive rational weights and analytic f_j, k_j, F. The pipeline takes
the complex hessian, splits it into hereditary and antihereditary parts,
decides each part through its unique Gram matrix and integrates the
weighted factor rows back to f_j and k_j. Whatever remains has zero
complex hessian and is F + F^T.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from .errors import NotIntegrableError, PreconditionError
from .freealg import Polynomial, Word
from .gram import (
    GramForm,
    Matrix,
    Side,
    as_matrix,
    build_gram,
    factor_polynomials,
    rational_matrix,
    to_rational,
    psd_factor,
    split_hessian,
)
from .nccalc import complex_hessian, derivative
from .ncint import integrate, zero_hessian_split
from .ncparse import parse

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedSquare:
    weight: Fraction
    factor: Polynomial

    def unweighted_scale(self) -> float:
        return math.sqrt(self.weight)


@dataclass(frozen=True)
class PlushDecomposition:
    g: int
    hereditary_squares: Tuple[WeightedSquare, ...] = ()
    antihereditary_squares: Tuple[WeightedSquare, ...] = ()
    analytic_part: Optional[Polynomial] = None
    n_min: int = 0
    m_min: int = 0

    def squares(self, side: Side) -> Tuple[WeightedSquare, ...]:
        if side is Side.HEREDITARY:
            return self.hereditary_squares
        return self.antihereditary_squares

    def unweighted(self) -> Dict[str, List[Tuple[float, Polynomial]]]:
        """Floating scale factors sqrt(d_j) turning weighted squares into plain ones."""
        return {
            side.value: [(square.unweighted_scale(), square.factor) for square in self.squares(side)]
            for side in Side
        }


def expand_decomposition(decomposition: PlushDecomposition, g: Optional[int] = None) -> Polynomial:
    g = decomposition.g if g is None else g
    total = Polynomial.zero(g)
    for square in decomposition.hereditary_squares:
        total = total + (square.factor.transpose() * square.factor).scale(square.weight)
    for square in decomposition.antihereditary_squares:
        total = total + (square.factor * square.factor.transpose()).scale(square.weight)
    if decomposition.analytic_part is not None:
        total = total + decomposition.analytic_part + decomposition.analytic_part.transpose()
    return total


class FailureStage(Enum):
    NOT_SYMMETRIC = "not_symmetric"
    HESSIAN_NOT_SPLIT_FORM = "hessian_not_split_form"
    GRAM_NOT_PSD = "gram_not_psd"
    FACTOR_NOT_INTEGRABLE = "factor_not_integrable"
    RESIDUAL_MIXED = "residual_mixed"


@dataclass(frozen=True)
class FailureWitness:
    stage: FailureStage
    side: Optional[Side] = None
    word: Optional[Word] = None
    vector: Optional[Tuple[Fraction, ...]] = None
    gram: Optional[GramForm] = field(default=None, repr=False)

    def describe(self) -> str:
        where = f" ({self.side.value})" if self.side else ""
        if self.stage is FailureStage.NOT_SYMMETRIC:
            return f"not symmetric: coefficient of {self.word} differs from its transpose"
        if self.stage is FailureStage.HESSIAN_NOT_SPLIT_FORM:
            return f"complex hessian term {self.word}{where} is not of split form"
        if self.stage is FailureStage.GRAM_NOT_PSD:
            vector = ", ".join(str(value) for value in self.vector)
            return f"Gram matrix{where} is not positive semidefinite, certificate ({vector})"
        if self.stage is FailureStage.FACTOR_NOT_INTEGRABLE:
            return f"factor{where} is not integrable at term {self.word}"
        return f"residual term {self.word} mixes x and x'"


@dataclass(frozen=True)
class PlushResult:
    decomposition: Optional[PlushDecomposition] = None
    witness: Optional[FailureWitness] = None

    @property
    def plush(self) -> bool:
        return self.decomposition is not None


@dataclass(frozen=True)
class AnalyticPart:
    analytic: Optional[Polynomial] = None
    witness: Optional[Word] = None

    @property
    def ok(self) -> bool:
        return self.witness is None


def extract_analytic_part(residual: Polynomial) -> AnalyticPart:
    """F with residual = F + F^T, carrying half of the constant term.

    Raises:
        PreconditionError: if the residual is not symmetric, carries direction
            letters or has a nonzero complex hessian.
    """
    if residual.h_degree() > 0:
        raise PreconditionError("residual must not contain direction letters")
    if not residual.is_symmetric():
        raise PreconditionError("residual must be symmetric")
    if not complex_hessian(residual).is_zero():
        raise PreconditionError("residual has a nonzero complex hessian")
    split = zero_hessian_split(residual)
    if not split.ok:
        return AnalyticPart(witness=split.witness)
    constant = residual.constant_term()
    analytic = split.analytic.restrict(lambda word: len(word) > 0) + Polynomial.constant(
        constant / 2, residual.g
    )
    if analytic + analytic.transpose() != residual:
        raise PreconditionError("residual is not of the form F + F^T")
    return AnalyticPart(analytic=analytic)


def _asymmetry_witness(p: Polynomial) -> Optional[Word]:
    terms = p.terms
    for word, coeff in p.items():
        if terms.get(word.transpose()) != coeff:
            return word
    return None


def classify_plush(p: Polynomial) -> PlushResult:
    if p.h_degree() > 0:
        raise PreconditionError("plush classification takes a polynomial in x and x' only")
    witness = _asymmetry_witness(p)
    if witness is not None:
        return PlushResult(witness=FailureWitness(FailureStage.NOT_SYMMETRIC, word=witness))

    q = complex_hessian(p)
    parts = dict(zip(Side, split_hessian(q)))
    logger.debug("complex hessian has %d terms", len(q))

    squares: Dict[Side, Tuple[WeightedSquare, ...]] = {}
    ranks: Dict[Side, int] = {}
    for side in Side:
        gram = build_gram(parts[side], side)
        if not gram.ok:
            return PlushResult(
                witness=FailureWitness(FailureStage.HESSIAN_NOT_SPLIT_FORM, side=side, word=gram.witness)
            )
        psd = psd_factor(gram.form)
        if not psd.ok:
            logger.debug("%s Gram matrix is indefinite", side.value)
            return PlushResult(
                witness=FailureWitness(
                    FailureStage.GRAM_NOT_PSD, side=side, vector=psd.certificate, gram=gram.form
                )
            )
        side_squares = []
        for weight, row in factor_polynomials(gram.form, psd.factorization):
            try:
                side_squares.append(WeightedSquare(weight, integrate(row)))
            except NotIntegrableError as e:
                return PlushResult(
                    witness=FailureWitness(
                        FailureStage.FACTOR_NOT_INTEGRABLE, side=side, word=e.report.witness
                    )
                )
        squares[side] = tuple(side_squares)
        ranks[side] = psd.factorization.rank
        logger.debug("%s side: rank %d", side.value, ranks[side])

    partial = PlushDecomposition(
        p.g, squares[Side.HEREDITARY], squares[Side.ANTIHEREDITARY]
    )
    analytic = extract_analytic_part(p - expand_decomposition(partial))
    if not analytic.ok:
        return PlushResult(
            witness=FailureWitness(FailureStage.RESIDUAL_MIXED, word=analytic.witness)
        )
    return PlushResult(
        decomposition=PlushDecomposition(
            g=p.g,
            hereditary_squares=squares[Side.HEREDITARY],
            antihereditary_squares=squares[Side.ANTIHEREDITARY],
            analytic_part=analytic.analytic,
            n_min=ranks[Side.HEREDITARY],
            m_min=ranks[Side.ANTIHEREDITARY],
        )
    )


def verify_decomposition(p: Polynomial, decomposition: PlushDecomposition) -> bool:
    if decomposition.g != p.g:
        return False
    generators = [square.factor for side in Side for square in decomposition.squares(side)]
    if decomposition.analytic_part is not None:
        generators.append(decomposition.analytic_part)
    if any(not f.is_analytic() or f.h_degree() > 0 for f in generators):
        return False
    if any(square.weight <= 0 for side in Side for square in decomposition.squares(side)):
        return False
    return expand_decomposition(decomposition) == p


# --- Relating two decompositions ---

@dataclass(frozen=True)
class IsometryRelation:
    """b's factors = weighted @ a's factors + constants (per side).

    ``unweighted`` is the isometry between the sqrt-weighted factors when all
    its entries are rational; it satisfies U^T U = I exactly.
    """

    weighted: Matrix
    constants: Tuple[Fraction, ...]
    unweighted: Optional[Matrix] = None

    @property
    def rational_unweighted(self) -> bool:
        return self.unweighted is not None


@dataclass(frozen=True)
class RelationResult:
    related: bool
    hereditary: Optional[IsometryRelation] = None
    antihereditary: Optional[IsometryRelation] = None
    reason: Optional[str] = None


def _derivative_rows(factors: Sequence[Polynomial], border: Sequence[Word]) -> sympy.Matrix:
    rows = []
    for f in factors:
        terms = derivative(f).terms
        rows.append([terms.get(word, Fraction(0)) for word in border])
    return rational_matrix(rows, (len(factors), len(border)))


def _diagonal(weights: Sequence[Fraction]) -> sympy.Matrix:
    n = len(weights)
    return rational_matrix([[weights[i] if i == j else 0 for j in range(n)] for i in range(n)], (n, n))


def _unweighted(weighted: sympy.Matrix, weights_a: Sequence[Fraction], weights_b: Sequence[Fraction]) -> Optional[Matrix]:
    unitary = sympy.zeros(len(weights_b), len(weights_a))
    for j, weight_b in enumerate(weights_b):
        for i, weight_a in enumerate(weights_a):
            if weighted[j, i] == 0:
                continue
            scale = sympy.sqrt(to_rational(weight_b / weight_a))
            if not scale.is_Rational:
                return None
            unitary[j, i] = weighted[j, i] * scale
    if unitary.T * unitary != sympy.eye(len(weights_a)):
        return None
    return as_matrix(unitary)


def _relate_side(a: Sequence[WeightedSquare], b: Sequence[WeightedSquare], g: int) -> Tuple[Optional[IsometryRelation], Optional[str]]:
    factors_a = [square.factor for square in a]
    factors_b = [square.factor for square in b]
    border = sorted({word for f in factors_a + factors_b for word in derivative(f).words()})
    rows_a = _derivative_rows(factors_a, border)
    rows_b = _derivative_rows(factors_b, border)
    if (rows_a.rank() if border else 0) != len(factors_a):
        raise PreconditionError("the reference decomposition is not minimal")

    # rows_a has full row rank, so its pseudo-inverse is a right inverse
    weighted = rows_b * rows_a.pinv() if factors_a else sympy.zeros(len(factors_b), 0)
    if weighted * rows_a != rows_b:
        return None, "factor derivatives are not combinations of the reference factors"

    weights_a = [square.weight for square in a]
    weights_b = [square.weight for square in b]
    if weighted.T * _diagonal(weights_b) * weighted != _diagonal(weights_a):
        return None, "weights are not related by an isometry"

    exact = as_matrix(weighted)
    constants = []
    for j, f in enumerate(factors_b):
        image = sum((factors_a[i].scale(exact[j][i]) for i in range(len(a))), Polynomial.zero(g))
        shifted = f - image
        if not shifted.is_constant():
            return None, f"factor {j + 1} differs from its image by a nonconstant {shifted}"
        constants.append(shifted.constant_term())

    return (
        IsometryRelation(
            weighted=exact,
            constants=tuple(constants),
            unweighted=_unweighted(weighted, weights_a, weights_b),
        ),
        None,
    )


def relate_representations(a: PlushDecomposition, b: PlushDecomposition) -> RelationResult:
    """Relate decomposition ``b`` to the minimal decomposition ``a``.

    Raises:
        PreconditionError: if ``a`` does not have linearly independent factor derivatives.
    """
    if a.g != b.g or expand_decomposition(a) != expand_decomposition(b):
        return RelationResult(False, reason="decompositions expand to different polynomials")
    relations = {}
    for side in Side:
        relation, reason = _relate_side(a.squares(side), b.squares(side), a.g)
        if relation is None:
            return RelationResult(False, reason=f"{side.value}: {reason}")
        relations[side] = relation
    return RelationResult(
        True, hereditary=relations[Side.HEREDITARY], antihereditary=relations[Side.ANTIHEREDITARY]
    )


# --- Serialization ---

def decomposition_to_dict(decomposition: PlushDecomposition) -> Dict[str, Any]:
    def squares(items: Sequence[WeightedSquare]) -> List[Dict[str, str]]:
        return [{"weight": str(square.weight), "factor": str(square.factor)} for square in items]

    analytic = decomposition.analytic_part
    return {
        "g": decomposition.g,
        "hereditary_squares": squares(decomposition.hereditary_squares),
        "antihereditary_squares": squares(decomposition.antihereditary_squares),
        "analytic_part": str(analytic) if analytic is not None else "0",
        "n_min": decomposition.n_min,
        "m_min": decomposition.m_min,
    }


def decomposition_from_dict(data: Dict[str, Any]) -> PlushDecomposition:
    g = int(data["g"])

    def squares(items: Sequence[Dict[str, str]]) -> Tuple[WeightedSquare, ...]:
        return tuple(
            WeightedSquare(Fraction(item["weight"]), parse(item["factor"], g)) for item in items
        )

    hereditary = squares(data.get("hereditary_squares", []))
    antihereditary = squares(data.get("antihereditary_squares", []))

    def rank(items: Tuple[WeightedSquare, ...]) -> int:
        border = sorted({word for square in items for word in derivative(square.factor).words()})
        if not border:
            return 0
        return _derivative_rows([square.factor for square in items], border).rank()

    return PlushDecomposition(
        g=g,
        hereditary_squares=hereditary,
        antihereditary_squares=antihereditary,
        analytic_part=parse(data.get("analytic_part", "0"), g),
        n_min=rank(hereditary),
        m_min=rank(antihereditary),
    )
