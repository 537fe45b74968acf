"""Differential operators on multivector fields.

A field is a Multivector whose coefficients are PolyScalar polynomials
in the coordinates x0..x(d-1) (plain rational coefficients count as
constant fields).  With D_ii the metric sign of axis i and s(.,.) the
merge signature, the derivative operator acts in four ways:

    exterior    ext_deriv(a)    = sum_{i not in I} D_ii s(i,I) d_i a_I e_{i+I}
    interior    int_deriv(a)    = sum_{i in I} s(I\\i, i) d_i a_I e_{I\\i}
    tensor      tensor_deriv(a) = sum_{i,I} D_ii d_i a_I w_{i,I}
    laplacian   laplacian(a)    = sum_i D_ii d_i^2 a_I e_I   (component-wise)

plus the right-acting interior derivative

    right_int_deriv(a) = sum_{i in I} s(i, I\\i) d_i a_I e_{I\\i}

which satisfies int_deriv(a) == (-1)^(gr(a)+1) right_int_deriv(a), and
the divergence of a row-grade-1 matrix field

    matrix_divergence(B) = sum_{i,J} d_i b_{i,J} e_J.

Both exterior and interior derivatives are nilpotent.  The two second
derivatives split the Laplacian with a grade-dependent sign:

    int_deriv(ext_deriv(a)) - ext_deriv(int_deriv(a)) = (-1)^gr(a) laplacian(a)

(verified symbolically by the verification suite; wave-equation
rewriting refuses to run unless this check passes for its shape).
"""

from __future__ import annotations

from fractions import Fraction

from .blades import AlgebraError, GradeError, Metric, Multivector
from .indexes import merge_signature
from .matrices import MvMatrix
from .poly import PolyScalar


def _partial(coeff, index: int):
    """Partial derivative of a coefficient; constants differentiate to zero."""
    if isinstance(coeff, PolyScalar):
        return coeff.partial(index)
    return Fraction(0)


def ext_deriv(field: Multivector) -> Multivector:
    """Exterior derivative; raises the grade by one (zero at top grade)."""
    metric = field.metric
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        members = set(indices)
        for i in range(metric.dim):
            if i in members:
                continue
            d = _partial(coeff, i)
            if not d:
                continue
            sign, merged = merge_signature((i,), indices)
            term = metric.sign(i) * sign * d
            s = out.get(merged, Fraction(0)) + term
            if s:
                out[merged] = s
            else:
                out.pop(merged, None)
    return Multivector(metric, field.grade + 1, out)


def int_deriv(field: Multivector) -> Multivector:
    """Interior derivative; lowers the grade by one (zero at grade 0)."""
    metric = field.metric
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        for pos, i in enumerate(indices):
            d = _partial(coeff, i)
            if not d:
                continue
            rest = indices[:pos] + indices[pos + 1:]
            sign, _ = merge_signature(rest, (i,))
            s = out.get(rest, Fraction(0)) + sign * d
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
    return Multivector(metric, field.grade - 1, out)


def right_int_deriv(field: Multivector) -> Multivector:
    """Right-acting interior derivative (the field contracted from the right).

    Same index sums as ``int_deriv`` but with the removed axis merged in
    from the left, so the two differ by (-1)^(gr-1).
    """
    metric = field.metric
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        for pos, i in enumerate(indices):
            d = _partial(coeff, i)
            if not d:
                continue
            rest = indices[:pos] + indices[pos + 1:]
            sign, _ = merge_signature((i,), rest)
            s = out.get(rest, Fraction(0)) + sign * d
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
    return Multivector(metric, field.grade - 1, out)


def tensor_deriv(field: Multivector) -> MvMatrix:
    """Tensor derivative: row grade 1 matrix of all first partials."""
    metric = field.metric
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        for i in range(metric.dim):
            d = _partial(coeff, i)
            if not d:
                continue
            out[((i,), indices)] = metric.sign(i) * d
    return MvMatrix(metric, 1, field.grade, out)


def laplacian(field: Multivector) -> Multivector:
    """Component-wise d'Alembertian sum_i D_ii d_i^2, grade unchanged."""
    metric = field.metric
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        total = Fraction(0)
        for i in range(metric.dim):
            d2 = _partial(_partial(coeff, i), i)
            if d2:
                total = total + metric.sign(i) * d2
        if total:
            out[indices] = total
    return Multivector(metric, field.grade, out)


def matrix_divergence(matrix: MvMatrix) -> Multivector:
    """Divergence of a row-grade-1 matrix field, one grade-m field.

    Contracting the derivative against the row slot cancels the metric
    signs, leaving sum_{i,J} d_i b_{i,J} e_J.
    """
    if matrix.row_grade != 1 and matrix.terms:
        raise GradeError("matrix divergence needs row grade 1")
    out: dict[tuple, object] = {}
    for (rows, cols), coeff in matrix.terms.items():
        d = _partial(coeff, rows[0])
        if not d:
            continue
        s = out.get(cols, Fraction(0)) + d
        if s:
            out[cols] = s
        else:
            out.pop(cols, None)
    return Multivector(matrix.metric, matrix.col_grade, out)


def divergence_scalar(field: Multivector):
    """Divergence of a 1-vector field as a plain scalar, sum_i d_i v_i."""
    if field.grade != 1 and field.terms:
        raise GradeError("scalar divergence needs a 1-vector field")
    total = Fraction(0)
    for indices, coeff in field.terms.items():
        total = total + _partial(coeff, indices[0])
    return total


def directional_deriv(direction: Multivector, field: Multivector) -> Multivector:
    """Convective derivative (v . d) a, component-wise sum_i v_i d_i a_I."""
    if direction.grade != 1 and direction.terms:
        raise GradeError("direction must be a 1-vector field")
    if direction.metric != field.metric:
        raise AlgebraError("mixed metrics")
    out: dict[tuple, object] = {}
    for indices, coeff in field.terms.items():
        total = Fraction(0)
        for dir_indices, v in direction.terms.items():
            d = _partial(coeff, dir_indices[0])
            if d:
                total = total + v * d
        if total:
            out[indices] = total
    return Multivector(field.metric, field.grade, out)


def check_laplacian_splitting(metric: Metric, grade: int, fields) -> bool:
    """Check int(ext a) - ext(int a) == (-1)^grade laplacian(a) on given fields."""
    sign = -1 if grade & 1 else 1
    for a in fields:
        lhs = int_deriv(ext_deriv(a)) - ext_deriv(int_deriv(a))
        if lhs != sign * laplacian(a):
            return False
    return True
