"""Matrix space over basis blades.

A matrix of row grade l and column grade m is a sparse sum of tensor
bases w_{I,J} = e_I (x) e_J with |I| = l, |J| = m.  Products contract
through the metric sign of the shared list:

    w_{I1,I2} . w_{J1,J2} = D_I1J1 D_I2J2          (Frobenius scalar)
    w_{I,J} x w_{K,L}     = D_JK w_{I,L}
    w_{I,J} x e_K         = e_K x w_{J,I} = D_JK e_I

The identity of grade l is sum_I D_II w_{I,I}.  There is no matrix
inverse here; only the products above are defined.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .blades import AlgebraError, GradeError, Metric, Multivector, _check_coeff
from .indexes import check_canonical


class MvMatrix:
    """Sparse matrix over blade tensor bases, exact coefficients."""

    __slots__ = ("metric", "row_grade", "col_grade", "terms")

    def __init__(
        self,
        metric: Metric,
        row_grade: int,
        col_grade: int,
        terms: Mapping[tuple, object] | None = None,
    ):
        clean: dict[tuple, object] = {}
        for key, coeff in (terms or {}).items():
            rows, cols = key
            rows, cols = tuple(rows), tuple(cols)
            check_canonical(rows, metric.dim)
            check_canonical(cols, metric.dim)
            coeff = _check_coeff(coeff)
            if coeff:
                clean[(rows, cols)] = coeff
        if clean:
            for grade in (row_grade, col_grade):
                if not 0 <= grade <= metric.dim:
                    raise GradeError(f"grade {grade} out of range")
            for rows, cols in clean:
                if len(rows) != row_grade or len(cols) != col_grade:
                    raise GradeError(
                        f"entry ({rows!r},{cols!r}) does not have grades "
                        f"({row_grade},{col_grade})"
                    )
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "row_grade", row_grade)
        object.__setattr__(self, "col_grade", col_grade)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MvMatrix is immutable")

    @classmethod
    def zero(cls, metric: Metric, row_grade: int, col_grade: int) -> "MvMatrix":
        return cls(metric, row_grade, col_grade)

    @classmethod
    def basis(cls, metric: Metric, rows, cols, coeff=1) -> "MvMatrix":
        rows, cols = tuple(rows), tuple(cols)
        return cls(metric, len(rows), len(cols), {(rows, cols): coeff})

    @classmethod
    def identity(cls, metric: Metric, grade: int) -> "MvMatrix":
        terms = {(I, I): metric.sign_of(I) for I in metric.blades(grade)}
        return cls(metric, grade, grade, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def entry(self, rows, cols):
        return self.terms.get((tuple(rows), tuple(cols)), Fraction(0))

    def _require_same_space(self, other: "MvMatrix") -> None:
        if not isinstance(other, MvMatrix):
            raise AlgebraError(f"expected an MvMatrix, got {type(other).__name__}")
        if other.metric != self.metric:
            raise AlgebraError("mixed metrics")

    def __add__(self, other):
        self._require_same_space(other)
        shapes_differ = (self.row_grade, self.col_grade) != (other.row_grade, other.col_grade)
        if shapes_differ and self.terms and other.terms:
            raise GradeError("cannot add matrices of different grade shapes")
        if self.terms or not other.terms:
            row_grade, col_grade = self.row_grade, self.col_grade
        else:
            row_grade, col_grade = other.row_grade, other.col_grade
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MvMatrix(self.metric, row_grade, col_grade, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MvMatrix(
            self.metric,
            self.row_grade,
            self.col_grade,
            {k: -c for k, c in self.terms.items()},
        )

    def __mul__(self, scalar):
        try:
            scalar = _check_coeff(scalar)
        except AlgebraError:
            return NotImplemented
        return MvMatrix(
            self.metric,
            self.row_grade,
            self.col_grade,
            {k: scalar * c for k, c in self.terms.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MvMatrix):
            return NotImplemented
        if self.metric != other.metric:
            return False
        if not self.terms and not other.terms:
            return True
        return (
            self.row_grade == other.row_grade
            and self.col_grade == other.col_grade
            and self.terms == other.terms
        )

    __hash__ = None

    def transpose(self) -> "MvMatrix":
        return MvMatrix(
            self.metric,
            self.col_grade,
            self.row_grade,
            {(cols, rows): coeff for (rows, cols), coeff in self.terms.items()},
        )

    def dot(self, other: "MvMatrix"):
        """Frobenius scalar product; requires matching grade shapes."""
        self._require_same_space(other)
        if (self.row_grade, self.col_grade) != (other.row_grade, other.col_grade):
            raise GradeError("dot needs matching grade shapes")
        total = Fraction(0)
        for (rows, cols), coeff in self.terms.items():
            oc = other.terms.get((rows, cols))
            if oc is not None:
                total = total + self.metric.sign_of(rows) * self.metric.sign_of(cols) * coeff * oc
        return total

    def matmul(self, other: "MvMatrix") -> "MvMatrix":
        """Matrix product; contracts self's columns with other's rows."""
        self._require_same_space(other)
        if self.col_grade != other.row_grade:
            raise GradeError(
                f"cannot contract column grade {self.col_grade} "
                f"with row grade {other.row_grade}"
            )
        out: dict[tuple, object] = {}
        for (ra, ca), va in self.terms.items():
            delta = self.metric.sign_of(ca)
            for (rb, cb), vb in other.terms.items():
                if ca != rb:
                    continue
                key = (ra, cb)
                s = out.get(key, Fraction(0)) + delta * va * vb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MvMatrix(self.metric, self.row_grade, other.col_grade, out)

    def __repr__(self) -> str:
        entries = ", ".join(
            f"w[{','.join(map(str, r))};{','.join(map(str, c))}]*{v}"
            for (r, c), v in sorted(self.terms.items())
        )
        return (
            f"<MvMatrix ({self.metric.k},{self.metric.n}) "
            f"grades ({self.row_grade},{self.col_grade}): {entries or '0'}>"
        )


def mat_vec(matrix: MvMatrix, vector: Multivector) -> Multivector:
    """matrix x vector: contracts columns against the vector's blades."""
    if matrix.metric != vector.metric:
        raise AlgebraError("mixed metrics")
    if matrix.col_grade != vector.grade and matrix.terms and vector.terms:
        raise GradeError(
            f"cannot contract column grade {matrix.col_grade} with grade {vector.grade}"
        )
    out: dict[tuple, object] = {}
    for (rows, cols), coeff in matrix.terms.items():
        vc = vector.terms.get(cols)
        if vc is None:
            continue
        s = out.get(rows, Fraction(0)) + matrix.metric.sign_of(cols) * coeff * vc
        if s:
            out[rows] = s
        else:
            out.pop(rows, None)
    return Multivector(matrix.metric, matrix.row_grade, out)


def vec_mat(vector: Multivector, matrix: MvMatrix) -> Multivector:
    """vector x matrix: contracts the vector against the matrix's rows.

    Equals ``mat_vec(matrix.transpose(), vector)``.
    """
    if matrix.metric != vector.metric:
        raise AlgebraError("mixed metrics")
    if matrix.row_grade != vector.grade and matrix.terms and vector.terms:
        raise GradeError(
            f"cannot contract row grade {matrix.row_grade} with grade {vector.grade}"
        )
    out: dict[tuple, object] = {}
    for (rows, cols), coeff in matrix.terms.items():
        vc = vector.terms.get(rows)
        if vc is None:
            continue
        s = out.get(cols, Fraction(0)) + matrix.metric.sign_of(rows) * coeff * vc
        if s:
            out[cols] = s
        else:
            out.pop(cols, None)
    return Multivector(matrix.metric, matrix.col_grade, out)
