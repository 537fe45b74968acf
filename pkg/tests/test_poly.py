from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from mvcalc.blades import AlgebraError
from mvcalc.poly import PolyScalar

rationals = st.builds(
    Fraction,
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=1, max_value=12),
)


def polys(nvars=3):
    monomial = st.tuples(
        st.lists(
            st.integers(min_value=0, max_value=3), min_size=nvars, max_size=nvars
        ),
        rationals,
    )
    return st.lists(monomial, max_size=4).map(
        lambda monos: sum(
            (PolyScalar.monomial(nvars, tuple(e), c) for e, c in monos),
            PolyScalar.constant(nvars, 0),
        )
    )


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys())
def test_additive_inverse(p):
    assert not (p - p)
    assert p + (-p) == PolyScalar.constant(3, 0)


@given(polys(), st.lists(rationals, min_size=3, max_size=3))
def test_evaluate_is_ring_homomorphism(p, point):
    q = p * p + p
    assert q.evaluate(point) == p.evaluate(point) * p.evaluate(point) + p.evaluate(point)


@given(polys(), polys(), st.integers(min_value=0, max_value=2))
def test_partial_is_linear_and_leibniz(p, q, i):
    assert (p + q).partial(i) == p.partial(i) + q.partial(i)
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


def test_variable_and_partial():
    x0 = PolyScalar.variable(3, 0)
    x1 = PolyScalar.variable(3, 1)
    p = x0 * x0 * Fraction(3, 2) + x1
    assert p.partial(0) == 3 * x0
    assert p.partial(1) == PolyScalar.constant(3, 1)
    assert p.partial(2) == PolyScalar.constant(3, 0)


def test_rejects_floats_and_bools():
    with pytest.raises(AlgebraError):
        PolyScalar.constant(2, 0.5)
    with pytest.raises(AlgebraError):
        PolyScalar.constant(2, True)
    x = PolyScalar.variable(2, 0)
    with pytest.raises(TypeError):
        x + 0.5
    with pytest.raises(TypeError):
        0.5 * x


def test_mixed_arithmetic_with_rationals():
    x = PolyScalar.variable(2, 0)
    assert 1 + x - 1 == x
    assert Fraction(1, 2) * x * 2 == x
    assert (x + x) / 2 == x
    with pytest.raises(ZeroDivisionError):
        x / 0


def test_division_only_by_rationals():
    x = PolyScalar.variable(2, 0)
    with pytest.raises(TypeError):
        x / x


def test_is_constant_and_value():
    c = PolyScalar.constant(2, Fraction(7, 3))
    assert c.is_constant()
    assert c.constant_value() == Fraction(7, 3)
    x = PolyScalar.variable(2, 1)
    assert not x.is_constant()
    with pytest.raises(AlgebraError):
        x.constant_value()


def test_text_is_graded_lex_descending():
    x0 = PolyScalar.variable(3, 0)
    x1 = PolyScalar.variable(3, 1)
    x2 = PolyScalar.variable(3, 2)
    p = x2 + x0 * x0 * Fraction(3, 2) + x0 * x1
    assert str(p) == "3/2 ^ x0^2 + x0 ^ x1 + x2"
    assert str(PolyScalar.constant(3, 0)) == "0"
    assert str(-x1) == "-x1"
