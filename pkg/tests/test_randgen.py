from mvcalc.blades import Metric
from mvcalc.randgen import (
    field_cases,
    random_field,
    random_matrix_field,
    rng_for,
)

M13 = Metric(1, 3)


def test_streams_are_keyed_by_seed_and_name():
    a = rng_for(1, "prop").random()
    b = rng_for(1, "prop").random()
    c = rng_for(2, "prop").random()
    d = rng_for(1, "other").random()
    assert a == b
    assert a != c and a != d


def test_same_stream_reproduces_fields():
    first = random_field(rng_for(3, "f"), M13, 2)
    second = random_field(rng_for(3, "f"), M13, 2)
    assert first == second


def test_fields_have_declared_shape():
    rng = rng_for(5, "shape")
    for grade in range(5):
        field = random_field(rng, M13, grade)
        assert field.metric == M13
        assert field.grade == grade or field.is_zero()
    matrix = random_matrix_field(rng, M13, 1, 2)
    assert (matrix.row_grade, matrix.col_grade) == (1, 2) or not matrix.terms


def test_field_cases_lead_with_degenerate_inputs():
    cases = field_cases(rng_for(7, "cases"), M13, 1, 6)
    assert len(cases) == 6
    assert cases[0].is_zero()
    from mvcalc.poly import PolyScalar

    constant_coeffs = [
        not isinstance(c, PolyScalar) or c.is_constant()
        for c in cases[1].terms.values()
    ]
    assert all(constant_coeffs)
    assert len(cases[2].terms) <= 1


def test_field_cases_never_exceed_count():
    assert len(field_cases(rng_for(11, "short"), M13, 0, 2)) == 2
    assert len(field_cases(rng_for(11, "one"), M13, 3, 1)) == 1
