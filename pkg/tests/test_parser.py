from fractions import Fraction

import pytest

from mvcalc.blades import Metric, Multivector
from mvcalc.em import MaxwellConfig, build_lagrangian
from mvcalc.parser import ExprError, parse_expr, parse_lagrangian, tokenize
from mvcalc.poly import PolyScalar
from mvcalc.randgen import random_field, rng_for
from mvcalc.verify import BATTERY_METRICS
from mvcalc.variational import DerivOp, FieldSymbol

M13 = Metric(1, 3)


def b(indices, coeff=1):
    return Multivector.blade(M13, indices, coeff)


def test_round_trip_through_text():
    rng = rng_for(103, "unit/parser-round-trip")
    for metric in BATTERY_METRICS:
        for grade in range(metric.dim + 1):
            for _ in range(8):
                field = random_field(rng, metric, grade)
                assert parse_expr(str(field), metric) == field


def test_round_trip_of_zero():
    assert parse_expr(str(Multivector.zero(M13, 3)), M13) == Multivector.zero(M13, 3)


def test_tokenizer_keeps_source_offsets():
    kinds = [(t.kind, t.pos) for t in tokenize("d^ x0 _| |_ dX e[0,1]")]
    assert kinds == [
        ("DEXT", 0),
        ("POLY", 3),
        ("LINT", 6),
        ("RINT", 9),
        ("DTENS", 12),
        ("BLADE", 15),
        ("EOF", 21),
    ]


def test_names_starting_with_underscore_still_tokenize():
    # the contraction glyph _| must win over NAME, but _x alone is a name
    assert [t.kind for t in tokenize("_x _|")] == ["NAME", "LINT", "EOF"]


def test_literals():
    assert parse_expr("3/2", M13) == Multivector.scalar(M13, Fraction(3, 2))
    assert parse_expr("e[]", M13) == Multivector.scalar(M13, 1)
    assert parse_expr("x1", M13) == Multivector.scalar(
        M13, PolyScalar.variable(4, 1)
    )
    assert parse_expr("x2^3", M13) == Multivector.scalar(
        M13, PolyScalar.variable(4, 2, 3)
    )
    assert parse_expr("e[0,2,3]", M13) == b((0, 2, 3))


def test_scaling_and_sums():
    assert parse_expr("2 ^ e[0] - e[0]", M13) == b((0,))
    assert parse_expr("-e[1] + e[1] + e[1]", M13) == b((1,))
    assert parse_expr("(x0 + 1) ^ e[2]", M13) == b((2,), PolyScalar.variable(4, 0)) + b((2,))


def test_product_pins():
    assert parse_expr("e[0] ^ e[1]", M13) == b((0, 1))
    assert parse_expr("e[0] . e[0]", M13) == Multivector.scalar(M13, -1)
    assert parse_expr("e[0] _| e[0,1]", M13) == b((1,))
    assert parse_expr("e[0,1] |_ e[1]", M13) == b((0,), -1)
    assert parse_expr("hodge(e[0])", M13) == b((1, 2, 3), -1)
    assert parse_expr("invhodge(hodge(x0 ^ e[1,2]))", M13) == b(
        (1, 2), PolyScalar.variable(4, 0)
    )


def test_derivative_pins():
    assert parse_expr("d^ (x0 ^ e[1])", M13) == b((0, 1), -1)
    assert parse_expr("d_| (x0 ^ e[0,1])", M13) == b((1,), -1)
    assert parse_expr("d^ ( d^ (x0^2 ^ x1 ^ e[2]) )", M13).is_zero()


def test_term_operators_associate_left():
    # (e0 ^ e1) _| e012, not e0 ^ (e1 _| e012)
    assert parse_expr("e[0] ^ e[1] _| e[0,1,2]", M13) == b((2,), -1)


def test_offsets_on_errors():
    with pytest.raises(ExprError, match="unknown token '@'") as err:
        parse_expr("e[0] @ e[1]", M13)
    assert err.value.offset == 5
    with pytest.raises(ExprError, match="strictly increasing") as err:
        parse_expr("e[1,0]", M13)
    assert err.value.offset == 0
    with pytest.raises(ExprError, match="coordinate x9 out of range"):
        parse_expr("x9", M13)
    with pytest.raises(ExprError, match="blade index 7 out of range"):
        parse_expr("e[7]", M13)
    with pytest.raises(ExprError, match="nonnegative"):
        parse_expr("e[-1]", M13)
    with pytest.raises(ExprError, match="trailing input") as err:
        parse_expr("1 1", M13)
    assert err.value.offset == 2
    with pytest.raises(ExprError, match="end of input"):
        parse_expr("1 +", M13)
    with pytest.raises(ExprError, match="unknown name 'foo'"):
        parse_expr("foo", M13)
    with pytest.raises(ExprError, match="bad blade literal"):
        parse_expr("e[0, b]", M13)


def test_grade_mismatch_reported_at_operator():
    with pytest.raises(ExprError) as err:
        parse_expr("e[0] + e[0,1]", M13)
    assert err.value.offset == 5


def test_unclosed_call():
    with pytest.raises(ExprError, match="expected '\\)'") as err:
        parse_expr("hodge(e[0]", M13)
    assert err.value.offset == 10


SYMBOLS = (
    FieldSymbol("A", 1, "dynamical"),
    FieldSymbol("J", 1, "source"),
)


def test_lagrangian_matches_builtin_construction():
    L = parse_lagrangian("-1/2*(d^A . d^A) + (J . A)", SYMBOLS)
    assert L == build_lagrangian(MaxwellConfig(M13, 2))


def test_lagrangian_with_all_term_forms():
    L = parse_lagrangian(
        "-1/2*(d^A . d^A) + (J . A) - 2*(A . A) - 1*(d_|A . d_|A)", SYMBOLS
    )
    coeffs = [t[0] for t in L.terms]
    assert coeffs == [Fraction(-1, 2), 1, -2, -1]
    assert L.terms[3][1][0] is DerivOp.INT


def test_lagrangian_tensor_slots():
    a = FieldSymbol("a", 0, "dynamical")
    rho = FieldSymbol("rho", 0, "source")
    L = parse_lagrangian("1/2*(dX a . dX a) + (rho . a)", [a, rho])
    assert L.terms[0][1] == (DerivOp.TENSOR, a)


def test_lagrangian_unknown_symbol():
    with pytest.raises(ExprError, match=r"unknown field symbol 'B' \(declared: A, J\)"):
        parse_lagrangian("(B . B)", SYMBOLS)


def test_lagrangian_coefficient_needs_star():
    with pytest.raises(ExprError, match="expected '\\*'"):
        parse_lagrangian("1/2(A . A)", SYMBOLS)


def test_lagrangian_slot_grade_mismatch():
    with pytest.raises(ExprError):
        parse_lagrangian("(d^A . A)", SYMBOLS)


def test_lagrangian_trailing_garbage():
    with pytest.raises(ExprError, match="trailing input"):
        parse_lagrangian("(A . A) (", SYMBOLS)
