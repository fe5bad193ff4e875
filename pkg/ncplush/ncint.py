"""
NC integration.

A polynomial that is homogeneous of degree one in the direction letters
is a derivative exactly when its words come in complete wed classes: all
words sharing one collapse (direction letter swapped back to its base
variable) must be present with one shared coefficient. The Levi relation
plays the same role for complex hessians, with one ``h`` and one ``h'``
per word.

Classes are grouped greedily in word order, so the representative of a
class is always its smallest word present.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import MalformedSystemError, NotIntegrableError, VariableIndexError
from .freealg import Family, Letter, Polynomial, Word
from .nccalc import partial_x

logger = logging.getLogger(__name__)


# --- Substitution sets ---

def subst_set(word: Word, source: Letter, target: Letter) -> FrozenSet[Word]:
    """Words obtained by replacing exactly one ``source`` letter by ``target``."""
    return frozenset(
        word.replace(position, target)
        for position, letter in enumerate(word.letters)
        if letter == source
    )


def subst_sequence(word: Word, pairs: Sequence[Tuple[Letter, Letter]]) -> FrozenSet[Word]:
    """Apply single substitutions one after another, collecting every outcome."""
    current: FrozenSet[Word] = frozenset({word})
    for source, target in pairs:
        current = frozenset(
            result for candidate in current for result in subst_set(candidate, source, target)
        )
    return current


# --- Wed relations ---

class WedVerdict(Enum):
    NOT_WED = "not_wed"
    WED = "wed"
    WED_WRT = "wed_wrt"


@dataclass(frozen=True)
class WedRelation:
    verdict: WedVerdict
    variable: Optional[Letter] = None

    @property
    def wed(self) -> bool:
        return self.verdict is not WedVerdict.NOT_WED


class ClassKind(Enum):
    ONE_WED = "one_wed"
    LEVI_WED = "levi_wed"


@dataclass(frozen=True)
class WedClass:
    representative: Word
    members: Tuple[Word, ...]
    kind: ClassKind
    coefficient: Fraction = Fraction(1)

    def antiderivative_word(self) -> Word:
        return self.representative.collapse()


def _direction_letters(word: Word) -> List[Letter]:
    return [letter for letter in word.letters if letter.is_direction]


def one_wed(m: Word, other: Word) -> WedRelation:
    if len(m) != len(other):
        return WedRelation(WedVerdict.NOT_WED)
    left, right = _direction_letters(m), _direction_letters(other)
    if len(left) != 1 or len(right) != 1:
        return WedRelation(WedVerdict.NOT_WED)
    if m.collapse() != other.collapse():
        return WedRelation(WedVerdict.NOT_WED)
    if left[0] == right[0]:
        return WedRelation(WedVerdict.WED_WRT, left[0].as_base())
    return WedRelation(WedVerdict.WED)


def _is_levi_word(word: Word) -> bool:
    directions = _direction_letters(word)
    return (
        len(directions) == 2
        and sum(1 for letter in directions if letter.transposed) == 1
    )


def levi_wed(m: Word, other: Word) -> bool:
    return _is_levi_word(m) and _is_levi_word(other) and m.collapse() == other.collapse()


def _derivative_words(base: Word) -> Tuple[Word, ...]:
    return tuple(
        sorted(
            base.replace(position, letter.as_direction())
            for position, letter in enumerate(base.letters)
            if letter.family is Family.X
        )
    )


def _levi_words(base: Word) -> Tuple[Word, ...]:
    members: Set[Word] = set()
    for i, left in enumerate(base.letters):
        if left.family is not Family.X or left.transposed:
            continue
        for k, right in enumerate(base.letters):
            if right.family is Family.X and right.transposed:
                members.add(base.replace(i, left.as_direction()).replace(k, right.as_direction()))
    return tuple(sorted(members))


def wed_class(word: Word) -> Tuple[Word, ...]:
    """All words 1-differentially wed to ``word``, in word order."""
    return _derivative_words(word.collapse())


def levi_class(word: Word) -> Tuple[Word, ...]:
    """All words Levi-differentially wed to ``word``, in word order."""
    return _levi_words(word.collapse())


# --- Integrability ---

class IntegrabilityFailure(Enum):
    H_DEGREE = "h_degree"
    MISSING_MATE = "missing_mate"
    COEFFICIENT_MISMATCH = "coefficient_mismatch"


@dataclass(frozen=True)
class IntegrabilityReport:
    integrable: bool
    classes: Tuple[WedClass, ...] = ()
    witness: Optional[Word] = None
    missing: Optional[Word] = None
    reason: Optional[IntegrabilityFailure] = None

    def describe(self) -> str:
        if self.integrable:
            return f"integrable ({len(self.classes)} wed classes)"
        if self.reason is IntegrabilityFailure.H_DEGREE:
            return f"term {self.witness} is not of degree one in the directions"
        if self.reason is IntegrabilityFailure.COEFFICIENT_MISMATCH:
            return f"term {self.witness} and its mate {self.missing} have different coefficients"
        return f"term {self.witness} is missing its mate {self.missing}"


def _group_classes(p: Polynomial, admissible, class_of, kind: ClassKind) -> IntegrabilityReport:
    terms = p.terms
    grouped: Set[Word] = set()
    classes: List[WedClass] = []
    for word, coeff in p.items():
        if word in grouped:
            continue
        if not admissible(word):
            return IntegrabilityReport(False, witness=word, reason=IntegrabilityFailure.H_DEGREE)
        members = class_of(word)
        for mate in members:
            mate_coeff = terms.get(mate)
            if mate_coeff is None:
                return IntegrabilityReport(
                    False, witness=word, missing=mate, reason=IntegrabilityFailure.MISSING_MATE
                )
            if mate_coeff != coeff:
                return IntegrabilityReport(
                    False, witness=word, missing=mate, reason=IntegrabilityFailure.COEFFICIENT_MISMATCH
                )
        grouped.update(members)
        classes.append(WedClass(word, members, kind, coeff))
    return IntegrabilityReport(True, classes=tuple(classes))


def _has_one_direction(word: Word) -> bool:
    return word.h_count() == 1


def is_integrable(p: Polynomial) -> IntegrabilityReport:
    """Whether ``p`` is the derivative p'(x)[h] of some polynomial."""
    report = _group_classes(p, _has_one_direction, wed_class, ClassKind.ONE_WED)
    logger.debug("integrability of %d terms: %s", len(p), report.describe())
    return report


def _antiderivative(p: Polynomial, classes: Iterable[WedClass]) -> Polynomial:
    return Polynomial._build(
        {wed.antiderivative_word(): wed.coefficient for wed in classes}, p.g
    )


def integrate(p: Polynomial) -> Polynomial:
    """The antiderivative with zero constant term.

    Raises:
        NotIntegrableError: if ``p`` is not a derivative.
    """
    report = is_integrable(p)
    if not report.integrable:
        raise NotIntegrableError(f"not integrable: {report.describe()}", report)
    return _antiderivative(p, report.classes)


def is_integrable_in(p: Polynomial, j: int) -> IntegrabilityReport:
    """Whether ``p`` equals partial_x(f, j) for some polynomial f."""
    if not 1 <= j <= p.g:
        raise VariableIndexError(f"variable index {j} is outside 1..{p.g}")
    direction = Letter(Family.H, j)
    target = Letter(Family.X, j)

    def admissible(word: Word) -> bool:
        return _direction_letters(word) == [direction]

    def class_of(word: Word) -> Tuple[Word, ...]:
        return tuple(sorted(subst_set(word.collapse(), target, direction)))

    return _group_classes(p, admissible, class_of, ClassKind.ONE_WED)


def integrate_in(p: Polynomial, j: int) -> Polynomial:
    report = is_integrable_in(p, j)
    if not report.integrable:
        raise NotIntegrableError(f"not integrable in x{j}: {report.describe()}", report)
    return _antiderivative(p, report.classes)


# --- Frobenius systems ---

@dataclass(frozen=True)
class FrobeniusSystem:
    """Components f_1..f_g, each of degree one in its own direction h_i."""

    components: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.components, tuple):
            object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise MalformedSystemError("a Frobenius system needs at least one component")
        g = len(self.components)
        for i, component in enumerate(self.components, start=1):
            if component.g != g:
                raise MalformedSystemError(
                    f"component {i} lives over g={component.g}, expected g={g}"
                )
            direction = Letter(Family.H, i)
            for word in component.words():
                if any(letter.transposed for letter in word.letters):
                    raise MalformedSystemError(
                        f"component {i} term {word} contains a transposed letter"
                    )
                if _direction_letters(word) != [direction]:
                    raise MalformedSystemError(
                        f"component {i} term {word} must contain exactly one h{i} and no other direction"
                    )

    @property
    def g(self) -> int:
        return len(self.components)

    def total(self) -> Polynomial:
        return sum(self.components[1:], self.components[0])


class FrobeniusFailure(Enum):
    COMPONENT_NOT_INTEGRABLE = "component_not_integrable"
    CROSS_PARTIAL_MISMATCH = "cross_partial_mismatch"


@dataclass(frozen=True)
class FrobeniusResult:
    integrable: bool
    potential: Optional[Polynomial] = None
    failure: Optional[FrobeniusFailure] = None
    indices: Tuple[int, ...] = ()
    report: Optional[IntegrabilityReport] = None

    def describe(self) -> str:
        if self.integrable:
            return f"integrable with potential {self.potential}"
        if self.failure is FrobeniusFailure.COMPONENT_NOT_INTEGRABLE:
            (i,) = self.indices
            return f"component {i} is not integrable in x{i}: {self.report.describe()}"
        i, j = self.indices
        return f"cross partials of components {i} and {j} differ"


def frobenius_check(system: FrobeniusSystem) -> FrobeniusResult:
    for i, component in enumerate(system.components, start=1):
        report = is_integrable_in(component, i)
        if not report.integrable:
            return FrobeniusResult(
                False, failure=FrobeniusFailure.COMPONENT_NOT_INTEGRABLE, indices=(i,), report=report
            )
    for i in range(1, system.g + 1):
        for j in range(i + 1, system.g + 1):
            forward = partial_x(system.components[i - 1], j)
            backward = partial_x(system.components[j - 1], i)
            if forward != backward:
                return FrobeniusResult(
                    False, failure=FrobeniusFailure.CROSS_PARTIAL_MISMATCH, indices=(i, j)
                )
    return FrobeniusResult(True, potential=integrate(system.total()))


# --- Complex hessians ---

class HessianViolation(Enum):
    P1 = "P1"
    P2 = "P2"


@dataclass(frozen=True)
class HessianReport:
    is_hessian: bool
    antiderivative: Optional[Polynomial] = None
    violation: Optional[HessianViolation] = None
    witness: Optional[Word] = None
    missing: Optional[Word] = None
    classes: Tuple[WedClass, ...] = field(default=(), repr=False)

    def describe(self) -> str:
        if self.is_hessian:
            return f"complex hessian of {self.antiderivative}"
        if self.violation is HessianViolation.P1:
            return f"term {self.witness} does not have exactly one h and one h'"
        return f"term {self.witness} is missing its Levi mate {self.missing}"


def is_complex_hessian(q: Polynomial) -> HessianReport:
    """Recognize complex hessians and recover an antiderivative."""
    for word in q.words():
        if not _is_levi_word(word):
            return HessianReport(False, violation=HessianViolation.P1, witness=word)
    report = _group_classes(q, _is_levi_word, levi_class, ClassKind.LEVI_WED)
    if not report.integrable:
        return HessianReport(
            False, violation=HessianViolation.P2, witness=report.witness, missing=report.missing
        )
    return HessianReport(
        True, antiderivative=_antiderivative(q, report.classes), classes=report.classes
    )


@dataclass(frozen=True)
class ZeroHessianSplit:
    """p = F + G^T with F and G analytic; the constant lives in F."""

    analytic: Optional[Polynomial] = None
    antianalytic_generator: Optional[Polynomial] = None
    witness: Optional[Word] = None

    @property
    def ok(self) -> bool:
        return self.witness is None


def zero_hessian_split(p: Polynomial) -> ZeroHessianSplit:
    for word in p.words():
        if word.is_mixed():
            return ZeroHessianSplit(witness=word)
    analytic = p.restrict(lambda word: word.is_analytic())
    generator = p.restrict(lambda word: len(word) > 0 and word.is_antianalytic()).transpose()
    return ZeroHessianSplit(analytic=analytic, antianalytic_generator=generator)
