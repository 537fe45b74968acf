"""Metric signatures, basis blades, and grade-homogeneous multivectors.

The ambient space is flat with k time-like axes (square -1, indices
0..k-1) and n space-like axes (square +1, indices k..k+n-1).  A
multivector of grade m is a finite sum of coefficients times basis
blades e_I with |I| = m; mixed grades are rejected at construction.

Product table on basis blades, with D_II the metric sign product of a
list and s(.,.) the merge signature:

    dot           e_I . e_J   = D_II            when I == J, else 0
    wedge         e_I ^ e_J   = s(I,J) e_{I+J}
    left int.     e_I _| e_J  = D_II s(J\\I, I) e_{J\\I}   when I <= J, else 0
    right int.    e_J |_ e_I  = D_II s(I, J\\I) e_{J\\I}   when I <= J, else 0
    hodge         e_I^H       = D_II s(I, Ic) e_{Ic}
    inv. hodge    e_I^(H-1)   = D_IcIc s(Ic, I) e_{Ic}

Coefficients are exact: int, Fraction, or PolyScalar.  Floats are
rejected.  Values are immutable by convention; every operation returns
a new multivector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping

from .indexes import (
    MAX_DIM,
    AlgebraError,
    check_canonical,
    complement,
    merge_signature,
    subtract,
)
from .poly import PolyScalar, monomial_text


class GradeError(AlgebraError):
    """Grades incompatible with the requested operation."""


@dataclass(frozen=True)
class Metric:
    """Flat metric signature with k time-like and n space-like axes."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise AlgebraError("k and n must be nonnegative")
        if not 1 <= self.k + self.n <= MAX_DIM:
            raise AlgebraError(f"dimension k+n must lie in [1, {MAX_DIM}]")

    @property
    def dim(self) -> int:
        return self.k + self.n

    def sign(self, index: int) -> int:
        """Metric sign of one axis: -1 time-like, +1 space-like."""
        if not 0 <= index < self.dim:
            raise AlgebraError(f"index {index} out of range for dimension {self.dim}")
        return -1 if index < self.k else 1

    def sign_of(self, indices: tuple) -> int:
        """Product of axis signs over an index list (1 for the empty list)."""
        s = 1
        for i in indices:
            s *= self.sign(i)
        return s

    def blades(self, grade: int) -> Iterator[tuple]:
        """All canonical index lists of one grade, in lexicographic order."""
        if not 0 <= grade <= self.dim:
            return iter(())
        return itertools.combinations(range(self.dim), grade)


def _check_coeff(value):
    """Coerce to an exact coefficient; reject floats and other approximations."""
    if isinstance(value, PolyScalar):
        return value
    if isinstance(value, bool):
        raise AlgebraError("bool is not a coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, Rational)):
        return Fraction(value)
    raise AlgebraError(f"exact coefficient required, got {type(value).__name__}")


class Multivector:
    """Grade-homogeneous multivector with sparse exact coefficients.

    ``terms`` maps canonical index lists to nonzero coefficients.  The
    grade annotation survives on the zero multivector, and only the zero
    multivector may carry a grade outside [0, k+n] (such grades arise as
    stated results of wedge overflow and of interior derivatives of
    grade 0).
    """

    __slots__ = ("metric", "grade", "terms")

    def __init__(self, metric: Metric, grade: int, terms: Mapping[tuple, object] | None = None):
        clean: dict[tuple, object] = {}
        for indices, coeff in (terms or {}).items():
            indices = tuple(indices)
            check_canonical(indices, metric.dim)
            coeff = _check_coeff(coeff)
            if coeff:
                clean[indices] = coeff
        if clean:
            if not 0 <= grade <= metric.dim:
                raise GradeError(f"grade {grade} out of range for dimension {metric.dim}")
            for indices in clean:
                if len(indices) != grade:
                    raise GradeError(
                        f"index list {indices!r} has grade {len(indices)}, expected {grade}"
                    )
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, metric: Metric, grade: int) -> "Multivector":
        return cls(metric, grade)

    @classmethod
    def blade(cls, metric: Metric, indices, coeff=1) -> "Multivector":
        indices = tuple(indices)
        return cls(metric, len(indices), {indices: coeff})

    @classmethod
    def scalar(cls, metric: Metric, value) -> "Multivector":
        return cls(metric, 0, {(): value})

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices):
        """Coefficient of one blade (0 when absent)."""
        return self.terms.get(tuple(indices), Fraction(0))

    def scalar_value(self):
        if self.grade != 0:
            raise GradeError("scalar_value needs a grade-0 multivector")
        return self.terms.get((), Fraction(0))

    def items(self) -> list[tuple[tuple, object]]:
        """Terms sorted by index list; the iteration order for printing."""
        return sorted(self.terms.items())

    def _require_same_space(self, other: "Multivector") -> None:
        if not isinstance(other, Multivector):
            raise AlgebraError(f"expected a Multivector, got {type(other).__name__}")
        if other.metric != self.metric:
            raise AlgebraError("mixed metrics")

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        self._require_same_space(other)
        if self.grade != other.grade and self.terms and other.terms:
            raise GradeError(f"cannot add grades {self.grade} and {other.grade}")
        grade = self.grade if self.terms or not other.terms else other.grade
        out = dict(self.terms)
        for indices, coeff in other.terms.items():
            s = out.get(indices, Fraction(0)) + coeff
            if s:
                out[indices] = s
            else:
                out.pop(indices, None)
        return Multivector(self.metric, grade, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Multivector(self.metric, self.grade, {i: -c for i, c in self.terms.items()})

    def __mul__(self, scalar):
        try:
            scalar = _check_coeff(scalar)
        except AlgebraError:
            return NotImplemented
        return Multivector(
            self.metric, self.grade, {i: scalar * c for i, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.metric != other.metric:
            return False
        # zeros of every grade are the same value; the annotation only
        # records intent
        if not self.terms and not other.terms:
            return True
        return self.grade == other.grade and self.terms == other.terms

    __hash__ = None

    # -- products ----------------------------------------------------------

    def dot(self, other: "Multivector"):
        """Scalar product; requires equal grades.

        Equal basis blades contract to their metric sign product, so the
        result is sum(D_II a_I b_I) over shared index lists.
        """
        self._require_same_space(other)
        if self.grade != other.grade:
            raise GradeError(f"dot needs equal grades, got {self.grade} and {other.grade}")
        total = Fraction(0)
        for indices, coeff in self.terms.items():
            oc = other.terms.get(indices)
            if oc is not None:
                total = total + self.metric.sign_of(indices) * coeff * oc
        return total

    def wedge(self, other: "Multivector") -> "Multivector":
        """Exterior product; grade adds (zero past the top grade)."""
        self._require_same_space(other)
        out: dict[tuple, object] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                sign, merged = merge_signature(ia, ib)
                if sign == 0:
                    continue
                term = sign * ca * cb
                s = out.get(merged, Fraction(0)) + term
                if s:
                    out[merged] = s
                else:
                    out.pop(merged, None)
        return Multivector(self.metric, self.grade + other.grade, out)

    def left_contract(self, other: "Multivector") -> "Multivector":
        """Left interior product self _| other; lowers other's grade by self's."""
        self._require_same_space(other)
        out: dict[tuple, object] = {}
        for ia, ca in self.terms.items():
            delta = self.metric.sign_of(ia)
            for ib, cb in other.terms.items():
                rest = subtract(ib, ia)
                if rest is None:
                    continue
                sign, _ = merge_signature(rest, ia)
                term = delta * sign * ca * cb
                s = out.get(rest, Fraction(0)) + term
                if s:
                    out[rest] = s
                else:
                    out.pop(rest, None)
        return Multivector(self.metric, other.grade - self.grade, out)

    def right_contract(self, other: "Multivector") -> "Multivector":
        """Right interior product self |_ other; lowers self's grade by other's."""
        self._require_same_space(other)
        out: dict[tuple, object] = {}
        for ib, cb in other.terms.items():
            delta = self.metric.sign_of(ib)
            for ia, ca in self.terms.items():
                rest = subtract(ia, ib)
                if rest is None:
                    continue
                sign, _ = merge_signature(ib, rest)
                term = delta * sign * ca * cb
                s = out.get(rest, Fraction(0)) + term
                if s:
                    out[rest] = s
                else:
                    out.pop(rest, None)
        return Multivector(self.metric, self.grade - other.grade, out)

    def hodge(self) -> "Multivector":
        """Hodge complement, blade by blade."""
        dim = self.metric.dim
        out: dict[tuple, object] = {}
        for indices, coeff in self.terms.items():
            comp = complement(indices, dim)
            sign, _ = merge_signature(indices, comp)
            out[comp] = self.metric.sign_of(indices) * sign * coeff
        return Multivector(self.metric, dim - self.grade, out)

    def inv_hodge(self) -> "Multivector":
        """Inverse Hodge complement: inv_hodge(hodge(a)) == a."""
        dim = self.metric.dim
        out: dict[tuple, object] = {}
        for indices, coeff in self.terms.items():
            comp = complement(indices, dim)
            sign, _ = merge_signature(comp, indices)
            out[comp] = self.metric.sign_of(comp) * sign * coeff
        return Multivector(self.metric, dim - self.grade, out)

    # -- canonical text -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        if self.grade == 0:
            return _coeff_text(self.terms[()])
        pieces = []
        for pos, (indices, coeff) in enumerate(self.items()):
            sign, body = _blade_term_text(indices, coeff)
            if pos == 0:
                pieces.append(body if sign >= 0 else "-" + body)
            else:
                pieces.append(f" {'+' if sign >= 0 else '-'} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"<Multivector ({self.metric.k},{self.metric.n}) grade {self.grade}: {self}>"


def _coeff_text(coeff) -> str:
    if isinstance(coeff, PolyScalar):
        return str(coeff)
    return str(coeff)


def _split_sign(coeff):
    """(sign, magnitude-pieces) of a coefficient for blade-term printing.

    Multi-term polynomials keep their internal signs and get parentheses;
    a single monomial or plain rational folds its sign into the term join.
    """
    if isinstance(coeff, PolyScalar):
        terms = coeff.sorted_terms()
        if len(terms) > 1:
            return 1, [f"({coeff})"]
        exps, value = terms[0]
        text = monomial_text(exps, abs(value))
        return (1 if value > 0 else -1), ([] if text == "1" else text.split(" ^ "))
    value = coeff
    return (1 if value > 0 else -1), ([] if abs(value) == 1 else [str(abs(value))])


def _blade_term_text(indices: tuple, coeff) -> tuple[int, str]:
    blade = "e[" + ",".join(str(i) for i in indices) + "]"
    sign, pieces = _split_sign(coeff)
    return sign, " ^ ".join(pieces + [blade])
