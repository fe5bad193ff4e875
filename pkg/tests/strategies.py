"""Hypothesis strategies for words, polynomials and plush constructions."""

from hypothesis import strategies as st

from ncplush.freealg import Family, Letter, Polynomial, Word

coefficients = st.one_of(
    st.integers(min_value=-4, max_value=4).filter(bool),
    st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(bool),
)


def letters(g, families=(Family.X,), transposed=True):
    return st.builds(
        Letter,
        st.sampled_from(families),
        st.integers(min_value=1, max_value=g),
        st.booleans() if transposed else st.just(False),
    )


def words(g, min_size=0, max_size=5, families=(Family.X,), transposed=True):
    return st.lists(
        letters(g, families, transposed), min_size=min_size, max_size=max_size
    ).map(lambda items: Word(tuple(items)))


@st.composite
def polynomials(
    draw,
    g=None,
    max_degree=5,
    max_terms=8,
    min_degree=0,
    families=(Family.X,),
    transposed=True,
):
    if g is None:
        g = draw(st.integers(min_value=1, max_value=3))
    terms = draw(
        st.lists(
            st.tuples(words(g, min_degree, max_degree, families, transposed), coefficients),
            max_size=max_terms,
        )
    )
    return Polynomial.from_terms(terms, g)


def analytic_polynomials(g=None, max_degree=3, max_terms=4, min_degree=1):
    return polynomials(g, max_degree, max_terms, min_degree, transposed=False)


def polynomial_pairs(**kwargs):
    return st.integers(min_value=1, max_value=3).flatmap(
        lambda g: st.tuples(polynomials(g, **kwargs), polynomials(g, **kwargs))
    )


def polynomial_triples(**kwargs):
    return st.integers(min_value=1, max_value=3).flatmap(
        lambda g: st.tuples(
            polynomials(g, **kwargs), polynomials(g, **kwargs), polynomials(g, **kwargs)
        )
    )


@st.composite
def plush_constructions(draw, max_squares=3, max_degree=3):
    """(p, fs, ks, F) with p = sum f^T f + sum k k^T + F + F^T."""
    g = draw(st.integers(min_value=1, max_value=3))
    factor = analytic_polynomials(g, max_degree=max_degree, max_terms=3)
    fs = draw(st.lists(factor, max_size=max_squares))
    ks = draw(st.lists(factor, max_size=max_squares))
    F = draw(analytic_polynomials(g, max_degree=max_degree, max_terms=3, min_degree=0))
    p = F + F.transpose()
    for f in fs:
        p = p + f.transpose() * f
    for k in ks:
        p = p + k * k.transpose()
    return p, fs, ks, F
