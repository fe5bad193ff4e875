from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ncplush.errors import PreconditionError
from ncplush.freealg import Polynomial
from ncplush.gram import Side, quadratic_form, rational_matrix
from ncplush.nccalc import complex_hessian
from ncplush.ncparse import parse
from ncplush.plush import (
    FailureStage,
    PlushDecomposition,
    WeightedSquare,
    classify_plush,
    decomposition_from_dict,
    decomposition_to_dict,
    expand_decomposition,
    extract_analytic_part,
    relate_representations,
    verify_decomposition,
)

from .strategies import plush_constructions

INDEFINITE = "x1'*x1 + x1'^2*x1^2 - 3*x1'*x1^2 - 3*x1'^2*x1"


def decompose(text):
    result = classify_plush(parse(text))
    assert result.plush, result.witness
    return result.decomposition


def squares(*pairs, g=1):
    return tuple(WeightedSquare(Fraction(weight), parse(factor, g)) for weight, factor in pairs)


class TestClassifyPlush:
    def test_square_of_square(self):
        d = decompose("x1'^2*x1^2")
        assert d.hereditary_squares == squares((1, "x1^2"))
        assert d.antihereditary_squares == ()
        assert d.analytic_part.is_zero()
        assert (d.n_min, d.m_min) == (1, 0)

    def test_both_sides_and_analytic_part(self):
        d = decompose("x1'*x1 + x1*x1' + x1^3 + x1'^3")
        assert d.hereditary_squares == squares((1, "x1"))
        assert d.antihereditary_squares == squares((1, "x1"))
        assert d.analytic_part == parse("x1^3")

    def test_harmonic(self):
        d = decompose("x1 + x1'")
        assert d.hereditary_squares == d.antihereditary_squares == ()
        assert d.analytic_part == parse("x1")

    def test_constant_is_split(self):
        d = decompose("x1'*x1 + 4")
        assert d.analytic_part == parse("2", g=1)

    def test_weights_stay_rational(self):
        d = decompose("2*x1'*x1 + x1'*x2 + x2'*x1 + x2'*x2")
        assert [square.weight for square in d.hereditary_squares] == [2, Fraction(1, 2)]
        assert d.n_min == 2
        assert verify_decomposition(parse("2*x1'*x1 + x1'*x2 + x2'*x1 + x2'*x2"), d)

    def test_not_symmetric(self):
        witness = classify_plush(parse("x1")).witness
        assert witness.stage is FailureStage.NOT_SYMMETRIC
        assert str(witness.word) == "x1"

    def test_hessian_not_split_form(self):
        witness = classify_plush(parse("x1*x2'*x1 + x1'*x2*x1'")).witness
        assert witness.stage is FailureStage.HESSIAN_NOT_SPLIT_FORM
        assert witness.side is Side.HEREDITARY
        assert str(witness.word) == "x1*h2'*h1"

    def test_indefinite_gram(self):
        witness = classify_plush(parse(INDEFINITE)).witness
        assert witness.stage is FailureStage.GRAM_NOT_PSD
        assert witness.side is Side.HEREDITARY
        assert [str(word) for word in witness.gram.border] == ["h1", "x1*h1", "h1*x1"]
        assert witness.vector == (3, 1, 0)
        assert quadratic_form(witness.gram.matrix, witness.vector) == -8
        assert "certificate (3, 1, 0)" in witness.describe()

    def test_rejects_direction_letters(self):
        with pytest.raises(PreconditionError):
            classify_plush(parse("h1'*h1"))

    @settings(max_examples=200)
    @given(plush_constructions())
    def test_recovers_constructed_decompositions(self, construction):
        p, fs, ks, _ = construction
        result = classify_plush(p)
        assert result.plush
        d = result.decomposition
        assert verify_decomposition(p, d)
        assert complex_hessian(expand_decomposition(d)) == complex_hessian(p)
        assert d.n_min <= len(fs) and d.m_min <= len(ks)
        assert all(square.factor.constant_term() == 0 for side in Side for square in d.squares(side))

    @settings(max_examples=100)
    @given(plush_constructions())
    def test_reclassifying_the_expansion_is_stable(self, construction):
        d = classify_plush(construction[0]).decomposition
        again = classify_plush(expand_decomposition(d)).decomposition
        assert (again.n_min, again.m_min) == (d.n_min, d.m_min)
        assert again == d

    @given(plush_constructions())
    def test_negation_with_squares_is_not_plush(self, construction):
        p = construction[0]
        if not complex_hessian(p).is_zero():
            assert not classify_plush(-p).plush


class TestAnalyticPart:
    def test_halves_the_constant(self):
        assert extract_analytic_part(parse("x1^3 + x1'^3 + 4")).analytic == parse("x1^3 + 2")

    def test_zero(self):
        assert extract_analytic_part(Polynomial.zero(1)).analytic.is_zero()

    def test_pairs_transposes(self):
        assert extract_analytic_part(parse("x1*x2 + x2'*x1'")).analytic == parse("x1*x2")

    def test_mixed_word_has_a_hessian(self):
        with pytest.raises(PreconditionError, match="hessian"):
            extract_analytic_part(parse("x1'*x1"))

    def test_requires_symmetry(self):
        with pytest.raises(PreconditionError):
            extract_analytic_part(parse("x1"))


class TestVerify:
    def test_rejects_nonanalytic_factor(self):
        d = PlushDecomposition(1, hereditary_squares=squares((1, "x1'")))
        assert not verify_decomposition(parse("x1*x1'"), d)

    def test_rejects_wrong_expansion(self):
        d = PlushDecomposition(1, hereditary_squares=squares((1, "x1")))
        assert not verify_decomposition(parse("2*x1'*x1"), d)

    def test_rejects_context_mismatch(self):
        d = decompose("x1'*x1")
        assert not verify_decomposition(parse("x1'*x1", g=2), d)


class TestRelate:
    def test_identity(self):
        d = decompose("x1'^2*x1^2 + x1*x1'")
        relation = relate_representations(d, d)
        assert relation.related
        assert relation.hereditary.weighted == ((1,),)
        assert relation.hereditary.constants == (0,)
        assert relation.antihereditary.unweighted == ((1,),)

    def test_rational_isometry(self):
        a = decompose("x1'*x1")
        b = PlushDecomposition(1, hereditary_squares=squares((1, "3/5*x1"), (1, "4/5*x1")))
        relation = relate_representations(a, b).hereditary
        assert relation.weighted == ((Fraction(3, 5),), (Fraction(4, 5),))
        assert relation.unweighted == relation.weighted
        assert relation.rational_unweighted

    def test_irrational_isometry(self):
        a = decompose("x1'*x1")
        b = PlushDecomposition(1, hereditary_squares=squares((Fraction(1, 2), "x1"), (Fraction(1, 2), "x1")))
        relation = relate_representations(a, b).hereditary
        assert relation.weighted == ((1,), (1,))
        assert not relation.rational_unweighted

    def test_constant_shift(self):
        a = decompose("x1'*x1")
        b = PlushDecomposition(
            1, hereditary_squares=squares((1, "x1 + 1")), analytic_part=parse("-x1 - 1/2")
        )
        assert verify_decomposition(parse("x1'*x1"), b)
        relation = relate_representations(a, b).hereditary
        assert relation.weighted == ((1,),)
        assert relation.constants == (1,)

    def test_different_expansions(self):
        result = relate_representations(decompose("x1'*x1"), decompose("2*x1'*x1"))
        assert not result.related
        assert "different" in result.reason

    def test_reference_must_be_minimal(self):
        redundant = PlushDecomposition(1, hereditary_squares=squares((1, "x1"), (1, "x1")))
        with pytest.raises(PreconditionError):
            relate_representations(redundant, decompose("2*x1'*x1"))

    def assert_isometry(self, relation, a, b):
        """b's factors are the weighted combinations of a's plus the constants."""
        Uw = rational_matrix(relation.weighted, (len(b), len(a)))
        diag_a = rational_matrix([[s.weight if i == j else 0 for j, _ in enumerate(a)] for i, s in enumerate(a)], (len(a), len(a)))
        diag_b = rational_matrix([[s.weight if i == j else 0 for j, _ in enumerate(b)] for i, s in enumerate(b)], (len(b), len(b)))
        assert Uw.T * diag_b * Uw == diag_a
        if relation.unweighted is not None:
            U = rational_matrix(relation.unweighted, (len(b), len(a)))
            assert U.T * U == sympy.eye(len(a))
        for j, square in enumerate(b):
            image = sum((a[i].factor.scale(relation.weighted[j][i]) for i in range(len(a))), Polynomial.zero(square.factor.g))
            assert square.factor == image + relation.constants[j]

    @settings(max_examples=50)
    @given(plush_constructions())
    def test_relates_minimal_to_constructed(self, construction):
        p, fs, ks, F = construction
        constructed = PlushDecomposition(
            p.g,
            hereditary_squares=tuple(WeightedSquare(Fraction(1), f) for f in fs),
            antihereditary_squares=tuple(WeightedSquare(Fraction(1), k) for k in ks),
            analytic_part=F,
        )
        minimal = classify_plush(p).decomposition
        relation = relate_representations(minimal, constructed)
        assert relation.related
        for side, rel in zip(Side, (relation.hereditary, relation.antihereditary)):
            assert all(c == 0 for c in rel.constants)
            self.assert_isometry(rel, minimal.squares(side), constructed.squares(side))

    @settings(max_examples=50)
    @given(plush_constructions(), st.data())
    def test_recovers_constant_shifts(self, construction, data):
        p, fs, ks, F = construction
        shift = st.integers(min_value=-2, max_value=2)
        cs = data.draw(st.lists(shift, min_size=len(fs), max_size=len(fs)))
        ds = data.draw(st.lists(shift, min_size=len(ks), max_size=len(ks)))
        analytic = F
        for c, factor in zip(cs + ds, fs + ks):
            analytic = analytic - factor.scale(c) - Fraction(c * c, 2)
        shifted = PlushDecomposition(
            p.g,
            hereditary_squares=tuple(WeightedSquare(Fraction(1), f + c) for f, c in zip(fs, cs)),
            antihereditary_squares=tuple(WeightedSquare(Fraction(1), k + d) for k, d in zip(ks, ds)),
            analytic_part=analytic,
        )
        assert verify_decomposition(p, shifted)
        minimal = classify_plush(p).decomposition
        relation = relate_representations(minimal, shifted)
        assert relation.related
        assert relation.hereditary.constants == tuple(cs)
        assert relation.antihereditary.constants == tuple(ds)
        for side, rel in zip(Side, (relation.hereditary, relation.antihereditary)):
            self.assert_isometry(rel, minimal.squares(side), shifted.squares(side))


def test_serialized_decomposition_round_trips():
    d = decompose("2*x1'*x1 + x1'*x2 + x2'*x1 + x2'*x2 + x1*x2 + x2'*x1'")
    assert decomposition_from_dict(decomposition_to_dict(d)) == d
