"""Sparse multivariate polynomials over exact rationals.

Coefficient ring for multivector fields: polynomials in the coordinates
x0..x(d-1) with Fraction coefficients, stored as a map from exponent
tuples to coefficients.  No floats anywhere; arithmetic is exact.

Canonical text form (used by the CLI and the parser round-trip) orders
monomials by graded lexicographic order, highest first, and spells
products with the wedge token, e.g. ``3/2 ^ x0^2 ^ x1 + x2``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

from .indexes import AlgebraError


def _as_fraction(value) -> Fraction:
    # bool subclasses int and therefore registers as Rational; reject it
    # before the Rational branch can quietly coerce True to 1
    if isinstance(value, bool):
        raise AlgebraError(f"exact rational coefficient required, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise AlgebraError(f"exact rational coefficient required, got {value!r}")


class PolyScalar:
    """A polynomial in x0..x(nvars-1) with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise AlgebraError("nvars must be nonnegative")
        clean: dict[tuple, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise AlgebraError(f"bad exponent vector {exps!r} for {nvars} variables")
            c = _as_fraction(coeff)
            if c:
                clean[exps] = c
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, value) -> "PolyScalar":
        c = _as_fraction(value)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "PolyScalar":
        if not 0 <= index < nvars:
            raise AlgebraError(f"variable index {index} out of range for {nvars} variables")
        if power < 0:
            raise AlgebraError("negative powers are not polynomials")
        exps = tuple(power if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff) -> "PolyScalar":
        return cls(nvars, {tuple(exps): coeff})

    # -- ring structure -------------------------------------------------

    def _coerce(self, other) -> "PolyScalar | None":
        if isinstance(other, PolyScalar):
            if other.nvars != self.nvars:
                raise AlgebraError("mixed variable counts")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction, Rational)):
            return PolyScalar.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return PolyScalar(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exps, Fraction(0)) + ca * cb
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
        return PolyScalar(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # exact division by a nonzero rational only; polynomial division
        # is out of scope
        try:
            other = _as_fraction(other)
        except AlgebraError:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyScalar):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction, Rational)):
            value = Fraction(other)
            if not value:
                return not self.terms
            return self.terms == {(0,) * self.nvars: value}
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and queries -------------------------------------------

    def partial(self, index: int) -> "PolyScalar":
        """Exact partial derivative with respect to x(index)."""
        if not 0 <= index < self.nvars:
            raise AlgebraError(f"variable index {index} out of range")
        out: dict[tuple, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = exps[:index] + (e - 1,) + exps[index + 1:]
            s = out.get(lowered, Fraction(0)) + c * e
            if s:
                out[lowered] = s
            else:
                out.pop(lowered, None)
        return PolyScalar(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise AlgebraError("point has wrong length")
        values = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(values, exps):
                term *= v ** e
            total += term
        return total

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- canonical text --------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        # graded lex, leading (highest) monomial first
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for pos, (exps, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            body = monomial_text(exps, abs(coeff))
            if pos == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"PolyScalar({self.nvars}, {self})"


def monomial_text(exps: tuple, coeff: Fraction) -> str:
    """Grammar-compatible text of one monomial with nonnegative coefficient."""
    factors = []
    if coeff != 1 or not any(exps):
        factors.append(str(coeff))
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    return " ^ ".join(factors)
