import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ncplush.errors import MalformedSystemError, NotIntegrableError, VariableIndexError
from ncplush.freealg import Polynomial, Word, h, x
from ncplush.nccalc import complex_hessian, derivative, partial_x
from ncplush.ncint import (
    FrobeniusFailure,
    FrobeniusSystem,
    HessianViolation,
    IntegrabilityFailure,
    WedVerdict,
    frobenius_check,
    integrate,
    integrate_in,
    is_complex_hessian,
    is_integrable,
    is_integrable_in,
    levi_class,
    levi_wed,
    one_wed,
    subst_sequence,
    subst_set,
    wed_class,
    zero_hessian_split,
)
from ncplush.ncparse import parse

from .strategies import polynomial_pairs, polynomials, words


def w(text):
    """The single word of a one-term expression."""
    (word,) = parse(text).words()
    return word


class TestSubstitution:
    def test_single(self):
        assert subst_set(w("x1*x2*x1*x2"), x(1), h(1)) == {w("h1*x2*x1*x2"), w("x1*x2*h1*x2")}

    def test_absent(self):
        assert subst_set(w("x2*x2"), x(1), h(1)) == frozenset()

    def test_double_is_order_independent(self):
        word = w("x1*x2*x1*x2")
        forward = subst_sequence(word, [(x(1), h(1)), (x(2), h(2))])
        backward = subst_sequence(word, [(x(2), h(2)), (x(1), h(1))])
        assert forward == backward
        assert forward == {
            w("h1*h2*x1*x2"),
            w("h1*x2*x1*h2"),
            w("x1*h2*h1*x2"),
            w("x1*x2*h1*h2"),
        }


class TestWedRelations:
    def test_wed_with_respect_to_variable(self):
        relation = one_wed(w("h1*x2'*x1"), w("x1*x2'*h1"))
        assert relation.verdict is WedVerdict.WED_WRT
        assert relation.variable == x(1)

    def test_wed_across_variables(self):
        assert one_wed(w("h1*x2'*x1"), w("x1*h2'*x1")).verdict is WedVerdict.WED

    def test_not_wed(self):
        assert not one_wed(w("x2*h2*x2"), w("x1*x2*h2")).wed
        assert not one_wed(w("h1*x1"), w("h1*x1*x1")).wed

    def test_levi(self):
        assert levi_wed(w("h1'*h1*x1'*x1"), w("x1'*x1*h1'*h1"))
        assert not levi_wed(w("h1'*h1*x1'*x1"), w("h1'*x1*h1'*x1"))
        assert levi_wed(w("h1'*h1"), w("h1'*h1"))
        assert not levi_wed(w("h1*h1"), w("h1*h1"))

    def test_classes_are_sorted(self):
        assert wed_class(w("x1*h1")) == (w("x1*h1"), w("h1*x1"))
        assert levi_class(w("h1'*x1'*x1*x1")) == (
            w("x1'*h1'*x1*h1"),
            w("x1'*h1'*h1*x1"),
            w("h1'*x1'*x1*h1"),
            w("h1'*x1'*h1*x1"),
        )

    @given(st.integers(min_value=1, max_value=3).flatmap(lambda g: words(g, min_size=1)), st.data())
    def test_one_wed_is_an_equivalence_on_a_class(self, base, data):
        members = wed_class(base)
        a, b, c = (data.draw(st.sampled_from(members)) for _ in range(3))
        assert one_wed(a, a).wed
        assert one_wed(a, b).wed and one_wed(b, a).wed
        assert one_wed(a, c).wed

    @given(
        st.lists(st.integers(min_value=1, max_value=2), min_size=1, max_size=4),
        st.lists(st.integers(min_value=1, max_value=2), min_size=1, max_size=4),
        st.data(),
    )
    def test_levi_pairs_match_wed_pairs(self, u_indices, v_indices, data):
        def analytic_word(indices):
            return Word(tuple(x(i) for i in indices))

        def with_direction(word):
            position = data.draw(st.integers(min_value=0, max_value=len(word) - 1))
            return word.replace(position, word[position].as_direction())

        def partner(indices):
            if data.draw(st.booleans()):
                return indices
            return data.draw(
                st.lists(st.integers(min_value=1, max_value=2), min_size=len(indices), max_size=len(indices))
            )

        u, v = analytic_word(u_indices), analytic_word(v_indices)
        m, n = with_direction(u), with_direction(v)
        m2 = with_direction(analytic_word(partner(u_indices)))
        n2 = with_direction(analytic_word(partner(v_indices)))
        both_wed = one_wed(m, m2).wed and one_wed(n, n2).wed
        assert both_wed == levi_wed(n.T * m, n2.T * m2)


class TestIntegrability:
    def test_derivative_of_square(self):
        assert is_integrable(parse("h1*x1 + x1*h1")).integrable

    def test_missing_mate(self):
        report = is_integrable(parse("h1*x1"))
        assert not report.integrable
        assert report.reason is IntegrabilityFailure.MISSING_MATE
        assert report.missing == w("x1*h1")

    def test_transposed_direction_is_its_own_class(self):
        report = is_integrable(parse("h1*x1 + x1*h1 + h1'"))
        assert report.integrable
        assert len(report.classes) == 2

    def test_coefficient_mismatch(self):
        report = is_integrable(parse("h1*x1 + 2*x1*h1"))
        assert report.reason is IntegrabilityFailure.COEFFICIENT_MISMATCH

    def test_h_degree(self):
        report = is_integrable(parse("h1*h1 + x1"))
        assert report.reason is IntegrabilityFailure.H_DEGREE
        assert report.witness == w("x1")

    def test_integrate_example(self):
        q = parse("h1*x2'*x1 + x1*x2'*h1 + x1*h2'*x1 + h1'*x2*x1' + x1'*x2*h1' + x1'*h2*x1'")
        assert integrate(q) == parse("x1*x2'*x1 + x1'*x2*x1'")

    def test_integrate_zero_and_square(self):
        assert integrate(Polynomial.zero(2)).is_zero()
        assert integrate(parse("h1*x1 + x1*h1")) == parse("x1^2")

    def test_integrate_raises_with_report(self):
        with pytest.raises(NotIntegrableError) as info:
            integrate(parse("h1*x1"))
        assert info.value.report.missing == w("x1*h1")

    @settings(max_examples=500)
    @given(polynomials(transposed=False, min_degree=1))
    def test_integrates_derivatives_up_to_constants(self, p):
        assert integrate(derivative(p)) == p - p.constant_term()

    @settings(max_examples=500)
    @given(polynomials(max_degree=4), st.data())
    def test_bumping_one_mate_breaks_integrability(self, p, data):
        q = derivative(p)
        paired = [word for word in q.words() if len(wed_class(word)) > 1]
        assume(paired)
        word = data.draw(st.sampled_from(paired))
        assert not is_integrable(q + Polynomial.from_word(word, q.g)).integrable


class TestIntegrabilityInOneVariable:
    def test_partial(self):
        assert integrate_in(parse("h1*x2'*x1 + x1*x2'*h1"), 1) == parse("x1*x2'*x1")

    def test_missing_mate(self):
        with pytest.raises(NotIntegrableError, match="x1\\*h1"):
            integrate_in(parse("h1*x1"), 1)

    def test_foreign_direction(self):
        report = is_integrable_in(parse("h2*x1", g=2), 1)
        assert report.reason is IntegrabilityFailure.H_DEGREE

    def test_index_checked(self):
        with pytest.raises(VariableIndexError):
            is_integrable_in(parse("h1"), 2)

    @given(polynomials(g=2, max_degree=4))
    def test_inverts_partial(self, p):
        part = partial_x(p, 2)
        assert partial_x(integrate_in(part, 2), 2) == part


class TestFrobenius:
    def system(self, *texts):
        return FrobeniusSystem(tuple(parse(text, g=len(texts)) for text in texts))

    def test_gradient_system(self):
        result = frobenius_check(self.system("h1*x2", "x1*h2"))
        assert result.integrable
        assert result.potential == parse("x1*x2")

    def test_cross_partials(self):
        result = frobenius_check(self.system("h1*x2", "0"))
        assert result.failure is FrobeniusFailure.CROSS_PARTIAL_MISMATCH
        assert result.indices == (1, 2)

    def test_component_not_integrable(self):
        result = frobenius_check(self.system("h1*x1", "0"))
        assert result.failure is FrobeniusFailure.COMPONENT_NOT_INTEGRABLE
        assert result.indices == (1,)
        assert "x1*h1" in result.describe()

    @pytest.mark.parametrize("components", [("h2*x1", "x1*h2"), ("h1*x1'", "0"), ("h1*h1", "0")])
    def test_malformed(self, components):
        with pytest.raises(MalformedSystemError):
            self.system(*components)

    @settings(max_examples=200)
    @given(polynomials(g=2, max_degree=4, transposed=False))
    def test_gradients_of_analytic_polynomials(self, p):
        result = frobenius_check(FrobeniusSystem((partial_x(p, 1), partial_x(p, 2))))
        assert result.integrable
        assert result.potential == p - p.constant_term()

    @settings(max_examples=200)
    @given(polynomials(g=2, max_degree=4, transposed=False))
    def test_corrupted_gradients(self, p):
        first, second = partial_x(p, 1), partial_x(p, 2)
        bad_first = first + parse("h1*x1", g=2)
        result = frobenius_check(FrobeniusSystem((bad_first, second)))
        assert result.failure is FrobeniusFailure.COMPONENT_NOT_INTEGRABLE
        assert result.indices == (1,)
        bad_second = second + parse("h2*x1", g=2)
        result = frobenius_check(FrobeniusSystem((first, bad_second)))
        assert result.failure is FrobeniusFailure.CROSS_PARTIAL_MISMATCH
        assert result.indices == (1, 2)


class TestComplexHessianRecognition:
    def test_mixed_example(self):
        report = is_complex_hessian(parse("h1*h2'*x1 + x1*h2'*h1 + h1'*h2*x1' + x1'*h2*h1'"))
        assert report.is_hessian
        assert report.antiderivative == parse("x1*x2'*x1 + x1'*x2*x1'")

    def test_hereditary_square(self):
        assert is_complex_hessian(parse("h1'*h1")).antiderivative == parse("x1'*x1")

    def test_missing_levi_mate(self):
        report = is_complex_hessian(parse("h1*h2'*x1"))
        assert report.violation is HessianViolation.P2
        assert report.missing == w("x1*h2'*h1")

    def test_direction_shape(self):
        report = is_complex_hessian(parse("h1*h1 + h1'*h1"))
        assert report.violation is HessianViolation.P1
        assert report.witness == w("h1*h1")

    @settings(max_examples=300)
    @given(polynomials(max_degree=4))
    def test_recovers_antiderivative(self, p):
        q = complex_hessian(p)
        report = is_complex_hessian(q)
        assert report.is_hessian
        assert complex_hessian(report.antiderivative) == q

    @given(polynomials(max_degree=4))
    def test_levi_classes_share_coefficients(self, p):
        q = complex_hessian(p)
        for word, coeff in q.items():
            assert all(q.coefficient(mate) == coeff for mate in levi_class(word))

    @given(polynomials(max_degree=4), st.data())
    def test_dropping_a_levi_mate_is_detected(self, p, data):
        q = complex_hessian(p)
        paired = [word for word in q.words() if len(levi_class(word)) > 1]
        assume(paired)
        word = data.draw(st.sampled_from(paired))
        report = is_complex_hessian(q - Polynomial.from_word(word, q.g, q.coefficient(word)))
        assert report.violation is HessianViolation.P2


class TestZeroHessianSplit:
    def test_split(self):
        split = zero_hessian_split(parse("x1 + x1' + 3 + x1*x2 + x2'*x1'"))
        assert split.ok
        assert split.analytic == parse("3 + x1 + x1*x2")
        assert split.antianalytic_generator == parse("x1 + x1*x2")

    def test_mixed(self):
        assert zero_hessian_split(parse("x1'*x1")).witness == w("x1'*x1")

    @settings(max_examples=300)
    @given(polynomials(max_degree=3))
    def test_splits_exactly_the_zero_hessian_kernel(self, p):
        assert zero_hessian_split(p).ok == complex_hessian(p).is_zero()

    @given(polynomial_pairs(transposed=False, max_degree=3))
    def test_recombines_analytic_and_antianalytic(self, pair):
        f, k = pair
        p = f + k.transpose()
        split = zero_hessian_split(p)
        assert complex_hessian(p).is_zero()
        assert split.ok
        assert split.analytic + split.antianalytic_generator.transpose() == p
