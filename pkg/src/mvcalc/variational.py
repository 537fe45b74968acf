"""Quadratic Lagrangian densities and their Euler-Lagrange equations.

A Lagrangian density here is a finite sum of bilinear dot-product terms

    L = sum_t  c_t * (D1 f1 . D2 f2)

where each slot applies one derivative operator D in {identity, d^, d_|,
dX} to a named field symbol.  Exactly the two differentiation rules

    vderiv(a . a, wrt a) = 2a        vderiv(a . b, wrt a) = b

are needed to differentiate such a density with respect to a slot, and
they make the vector derivative total and exact.  Field equations come
out as formal expressions: rational combinations of operator chains
applied to symbols, which can be rendered as text, serialized, or
evaluated on concrete polynomial fields.

Two independent routes produce the equations of motion for the single
dynamical symbol a (grade s):

    tensor     vderiv(L, a) = divergence of vderiv(L, dX a)
    exterior   vderiv(L, a) = (-1)^s d_| vderiv(L, d^ a)
                              - (-1)^s d^ vderiv(L, d_| a)

``verify_tensor_exterior_identity`` checks that both routes agree after
substituting random polynomial fields; the tensor side is evaluated
through an explicit slot-matrix chain rule (``tensor_slot_matrix``), not
through the exterior-route formulas, so the comparison is meaningful.

``first_variation`` decomposes the first-order change of L under
a -> a + t*eps into a bulk part (the equation residual dotted with eps)
plus an exact divergence, and the two together recover the t-linear
coefficient of L(a + t*eps) exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .blades import AlgebraError, GradeError, Metric, Multivector
from .calculus import ext_deriv, int_deriv, laplacian, matrix_divergence, tensor_deriv
from .indexes import merge_signature
from .matrices import MvMatrix, mat_vec
from .poly import _as_fraction

ROLES = ("dynamical", "source")


class DerivOp(enum.Enum):
    """Derivative operator applied inside a Lagrangian slot."""

    ID = ""
    EXT = "ext"
    INT = "int"
    TENSOR = "tensor"

    @property
    def chain(self) -> tuple:
        """The formal operator chain this slot contributes, outermost first."""
        return () if self is DerivOp.ID else (self.value,)


@dataclass(frozen=True)
class FieldSymbol:
    """A named multivector field of fixed grade.

    Role "dynamical" marks the field that is varied; "source" fields are
    held fixed (currents, charge densities).
    """

    name: str
    grade: int
    role: str = "dynamical"

    def __post_init__(self):
        if not self.name or not self.name[0].isalpha() or not all(
            ch.isalnum() or ch == "_" for ch in self.name
        ):
            raise AlgebraError(f"bad field symbol name {self.name!r}")
        if self.grade < 0:
            raise GradeError(f"field symbol grade must be nonnegative, got {self.grade}")
        if self.role not in ROLES:
            raise AlgebraError(f"role must be one of {ROLES}, got {self.role!r}")


Slot = tuple  # (DerivOp, FieldSymbol)


def _slot_grade(slot: Slot):
    """Grade of the slot expression; a tensor slot gets a shape tag instead."""
    op, sym = slot
    if op is DerivOp.ID:
        return sym.grade
    if op is DerivOp.EXT:
        return sym.grade + 1
    if op is DerivOp.INT:
        if sym.grade < 1:
            raise GradeError(f"interior slot needs grade >= 1, got {sym.name} of grade 0")
        return sym.grade - 1
    return ("matrix", 1, sym.grade)


def _slot_value(slot: Slot, assignment: Mapping):
    op, sym = slot
    try:
        value = assignment[sym.name]
    except KeyError:
        raise AlgebraError(f"no field value bound to symbol {sym.name!r}") from None
    if value.grade != sym.grade and value.terms:
        raise GradeError(
            f"symbol {sym.name} has grade {sym.grade}, got a grade {value.grade} field"
        )
    if op is DerivOp.ID:
        return value
    if op is DerivOp.EXT:
        return ext_deriv(value)
    if op is DerivOp.INT:
        return int_deriv(value)
    return tensor_deriv(value)


class LagrangianDensity:
    """Sum of rational-coefficient bilinear dot terms in field slots.

    Immutable.  At most one distinct dynamical symbol may appear (the
    field the action is varied with respect to); any number of sources.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple]):
        clean = []
        for coeff, left, right in terms:
            coeff = _as_fraction(coeff)
            left = (DerivOp(left[0]), left[1])
            right = (DerivOp(right[0]), right[1])
            if _slot_grade(left) != _slot_grade(right):
                raise GradeError(
                    f"dot product of unequal slot grades: "
                    f"{_slot_grade(left)} vs {_slot_grade(right)}"
                )
            if coeff:
                clean.append((coeff, left, right))
        object.__setattr__(self, "terms", tuple(clean))
        dyn = {sym for _, l, r in self.terms for _, sym in (l, r) if sym.role == "dynamical"}
        if len(dyn) > 1:
            names = sorted(s.name for s in dyn)
            raise AlgebraError(f"more than one dynamical symbol: {names}")

    def __setattr__(self, name, value):
        raise AttributeError("LagrangianDensity is immutable")

    @property
    def dynamical(self) -> FieldSymbol | None:
        for _, left, right in self.terms:
            for _, sym in (left, right):
                if sym.role == "dynamical":
                    return sym
        return None

    def symbols(self) -> dict:
        out: dict[str, FieldSymbol] = {}
        for _, left, right in self.terms:
            for _, sym in (left, right):
                if out.setdefault(sym.name, sym) != sym:
                    raise AlgebraError(f"symbol name {sym.name!r} bound to two fields")
        return out

    def __add__(self, other):
        if not isinstance(other, LagrangianDensity):
            return NotImplemented
        return LagrangianDensity(self.terms + other.terms)

    def __mul__(self, scalar):
        try:
            scalar = _as_fraction(scalar)
        except AlgebraError:
            return NotImplemented
        return LagrangianDensity(tuple((scalar * c, l, r) for c, l, r in self.terms))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LagrangianDensity):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def value(self, assignment: Mapping):
        """Evaluate the density on concrete fields; a scalar, exact."""
        total = Fraction(0)
        for coeff, left, right in self.terms:
            total = total + coeff * _slot_value(left, assignment).dot(
                _slot_value(right, assignment)
            )
        return total

    def __repr__(self):
        parts = []
        for coeff, (lop, lsym), (rop, rsym) in self.terms:
            parts.append(
                f"{coeff}*({lop.value or 'id'} {lsym.name} . {rop.value or 'id'} {rsym.name})"
            )
        return f"<LagrangianDensity {' + '.join(parts) or '0'}>"


_OP_TOKENS = {"ext": "d^", "int": "d_|", "lap": "lap", "tensor": "dX"}

# grade shift per chain element; "tensor" handled separately (matrix-valued)
_CHAIN_SHIFT = {"ext": 1, "int": -1, "lap": 0}


class FormalExpr:
    """Rational combination of operator chains applied to field symbols.

    Terms are kept in insertion order for stable rendering; equality is
    order-insensitive.  A chain is a tuple of op tokens, outermost first,
    drawn from {"ext", "int", "lap"} plus the standalone "tensor" (which
    may only appear alone, since dX produces a matrix).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple] = ()):
        clean: dict[tuple, Fraction] = {}
        for chain, symbol, coeff in terms:
            chain = tuple(chain)
            for op in chain:
                if op not in _OP_TOKENS:
                    raise AlgebraError(f"unknown operator token {op!r}")
            if "tensor" in chain and chain != ("tensor",):
                raise AlgebraError("dX may only appear as a standalone chain")
            coeff = _as_fraction(coeff)
            key = (chain, symbol)
            c = clean.get(key, Fraction(0)) + coeff
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FormalExpr is immutable")

    @classmethod
    def zero(cls) -> "FormalExpr":
        return cls()

    @classmethod
    def single(cls, chain, symbol: FieldSymbol, coeff=1) -> "FormalExpr":
        return cls([(chain, symbol, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_matrix(self) -> bool:
        return any(chain == ("tensor",) for chain, _ in self.terms)

    @property
    def grade(self):
        """Common grade of all terms; None when the expression is zero."""
        grades = set()
        for (chain, symbol) in self.terms:
            if chain == ("tensor",):
                grades.add(("matrix", 1, symbol.grade))
            else:
                grades.add(symbol.grade + sum(_CHAIN_SHIFT[op] for op in chain))
        if not grades:
            return None
        if len(grades) > 1:
            raise GradeError(f"mixed-grade formal expression: {sorted(map(str, grades))}")
        return grades.pop()

    def __add__(self, other):
        if not isinstance(other, FormalExpr):
            return NotImplemented
        merged = [(ch, sym, c) for (ch, sym), c in self.terms.items()]
        merged.extend((ch, sym, c) for (ch, sym), c in other.terms.items())
        return FormalExpr(merged)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * Fraction(-1)

    def __mul__(self, scalar):
        try:
            scalar = _as_fraction(scalar)
        except AlgebraError:
            return NotImplemented
        return FormalExpr([(ch, sym, scalar * c) for (ch, sym), c in self.terms.items()])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalExpr):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def apply(self, op: str) -> "FormalExpr":
        """Prepend a derivative operator to every chain (outermost position)."""
        if op not in ("ext", "int", "lap"):
            raise AlgebraError(f"cannot apply operator {op!r} to a formal expression")
        if self.is_matrix:
            raise AlgebraError("cannot apply a vector operator to a matrix expression")
        return FormalExpr(
            [((op,) + ch, sym, c) for (ch, sym), c in self.terms.items()]
        )

    def divergence(self) -> "FormalExpr":
        """Matrix divergence of a dX expression: dX folds into lap.

        The divergence of the tensor derivative is the component-wise
        Laplacian, which keeps the result inside the vector chain algebra.
        """
        out = []
        for (chain, sym), c in self.terms.items():
            if chain != ("tensor",):
                raise AlgebraError("divergence expects dX chains only")
            out.append((("lap",), sym, c))
        return FormalExpr(out)

    def evaluate(self, assignment: Mapping, metric: Metric | None = None,
                 grade: int | None = None) -> Multivector:
        """Substitute concrete fields for symbols and run the chains.

        ``metric`` and ``grade`` are only consulted when the expression
        is zero and there is nothing to infer them from.
        """
        if self.is_matrix:
            raise AlgebraError("matrix expression does not evaluate to a field")
        total = None
        for (chain, sym), coeff in self.terms.items():
            value = _slot_value((DerivOp.ID, sym), assignment)
            for op in reversed(chain):
                if op == "ext":
                    value = ext_deriv(value)
                elif op == "int":
                    value = int_deriv(value)
                else:
                    value = laplacian(value)
            total = value * coeff if total is None else total + value * coeff
        if total is None:
            if metric is None:
                raise AlgebraError("evaluating a zero expression needs an explicit metric")
            return Multivector.zero(metric, 0 if grade is None else grade)
        return total

    def render(self) -> str:
        """Canonical text, e.g. ``d_| ( d^ A ) + 4 * A``."""
        if not self.terms:
            return "0"
        pieces = []
        for (chain, sym), coeff in self.terms.items():
            body = sym.name
            for op in reversed(chain):
                if " " in body:
                    body = f"( {body} )"
                body = f"{_OP_TOKENS[op]} {body}"
            mag = abs(coeff)
            text = body if mag == 1 else f"{mag} * {body}"
            if not pieces:
                pieces.append(f"-{text}" if coeff < 0 else text)
            else:
                pieces.append(f" - {text}" if coeff < 0 else f" + {text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<FormalExpr {self.render()}>"


@dataclass(frozen=True)
class FieldEquation:
    """Formal equation lhs = rhs between expressions of a common grade."""

    lhs: FormalExpr
    rhs: FormalExpr
    grade: int

    def __post_init__(self):
        for side in (self.lhs, self.rhs):
            g = side.grade
            if g is not None and g != self.grade:
                raise GradeError(f"equation side has grade {g}, expected {self.grade}")

    def residual(self, assignment: Mapping, metric: Metric) -> Multivector:
        """lhs - rhs on concrete fields; zero iff the fields solve the equation."""
        lv = self.lhs.evaluate(assignment, metric, self.grade)
        rv = self.rhs.evaluate(assignment, metric, self.grade)
        return lv - rv

    def render(self) -> str:
        return f"{self.lhs.render()} = {self.rhs.render()}"

    def __str__(self) -> str:
        return self.render()


def vderiv(L: LagrangianDensity, wrt: Slot) -> FormalExpr:
    """Derivative of the density with respect to one slot expression.

    Implements the two product rules (2a for the matched square, b for a
    matched mixed term); slots that do not mention the wrt expression
    contribute nothing.  Only the dynamical symbol may be differentiated.
    """
    op, sym = (DerivOp(wrt[0]), wrt[1])
    if sym.role != "dynamical":
        raise AlgebraError(f"cannot vary source symbol {sym.name!r}")
    out = []
    for coeff, left, right in L.terms:
        lmatch = left == (op, sym)
        rmatch = right == (op, sym)
        if lmatch and rmatch:
            out.append((op.chain, sym, 2 * coeff))
        elif lmatch:
            rop, rsym = right
            out.append((rop.chain, rsym, coeff))
        elif rmatch:
            lop, lsym = left
            out.append((lop.chain, lsym, coeff))
    return FormalExpr(out)


def _dynamical_or_raise(L: LagrangianDensity) -> FieldSymbol:
    a = L.dynamical
    if a is None:
        raise AlgebraError("Lagrangian has no dynamical symbol to vary")
    return a


def euler_lagrange_tensor(L: LagrangianDensity) -> FieldEquation:
    """Equation of motion through the tensor-derivative slot.

    lhs is the explicit vector derivative of L, rhs the matrix divergence
    of the dX-slot derivative.  Only identity and dX slots are allowed;
    densities written with d^ / d_| slots take the exterior route.
    """
    a = _dynamical_or_raise(L)
    for _, left, right in L.terms:
        for op, sym in (left, right):
            if sym == a and op in (DerivOp.EXT, DerivOp.INT):
                raise AlgebraError(
                    "tensor route needs identity/dX slots; use euler_lagrange_exterior"
                )
    lhs = vderiv(L, (DerivOp.ID, a))
    rhs = vderiv(L, (DerivOp.TENSOR, a)).divergence()
    return FieldEquation(lhs, rhs, a.grade)


def euler_lagrange_exterior(L: LagrangianDensity) -> FieldEquation:
    """Equation of motion through the d^ / d_| slots.

    With s the grade of the dynamical field,

        vderiv(L, a) = (-1)^s d_| vderiv(L, d^ a) - (-1)^s d^ vderiv(L, d_| a)
    """
    a = _dynamical_or_raise(L)
    for _, left, right in L.terms:
        for op, sym in (left, right):
            if sym == a and op is DerivOp.TENSOR:
                raise AlgebraError(
                    "exterior route cannot handle dX slots; use euler_lagrange_tensor"
                )
    sign = Fraction(-1 if a.grade & 1 else 1)
    lhs = vderiv(L, (DerivOp.ID, a))
    rhs = (
        vderiv(L, (DerivOp.EXT, a)).apply("int") * sign
        - vderiv(L, (DerivOp.INT, a)).apply("ext") * sign
    )
    return FieldEquation(lhs, rhs, a.grade)


def tensor_slot_matrix(L: LagrangianDensity, assignment: Mapping) -> MvMatrix:
    """Derivative of L with respect to the tensor derivative of its field.

    Chain rule through the slot expressions: each d^ / d_| / dX slot of
    the dynamical symbol is expanded in the entries of dX a, and the
    other factor of its term is evaluated on the concrete fields.  The
    packaging signs collapse so that the entry at (i, I) is

        ext slot:  coeff * s(i, I) * other_{i+I}           for i not in I
        int slot:  coeff * D_ii * s(I\\i, i) * other_{I\\i}  for i in I
        dX  slot:  coeff * other_{(i), I}

    Used by the first-variation decomposition and as the tensor side of
    the two-route identity check.
    """
    a = _dynamical_or_raise(L)
    value = assignment.get(a.name)
    if value is None:
        raise AlgebraError(f"no field value bound to symbol {a.name!r}")
    metric = value.metric
    out: dict[tuple, object] = {}

    def add(rows, cols, c):
        s = out.get((rows, cols), Fraction(0)) + c
        if s:
            out[(rows, cols)] = s
        else:
            out.pop((rows, cols), None)

    for coeff, left, right in L.terms:
        for mine, other in ((left, right), (right, left)):
            op, sym = mine
            if sym != a or op is DerivOp.ID:
                continue
            other_val = _slot_value(other, assignment)
            if op is DerivOp.EXT:
                for K, vK in other_val.terms.items():
                    for pos, i in enumerate(K):
                        I = K[:pos] + K[pos + 1:]
                        sig, _ = merge_signature((i,), I)
                        add((i,), I, coeff * sig * vK)
            elif op is DerivOp.INT:
                for K, vK in other_val.terms.items():
                    members = set(K)
                    for i in range(metric.dim):
                        if i in members:
                            continue
                        sig, I = merge_signature(K, (i,))
                        add((i,), I, coeff * metric.sign(i) * sig * vK)
            else:
                for (rows, cols), v in other_val.terms.items():
                    add(rows, cols, coeff * v)
    return MvMatrix(metric, 1, a.grade, out)


def first_variation(L: LagrangianDensity, a_value: Multivector,
                    eps: Multivector, sources: Mapping | None = None):
    """Split the first-order change of L under a -> a + t*eps.

    Returns (bulk, boundary): bulk is the equation residual dotted with
    eps (a scalar), boundary the vector field whose plain divergence
    completes the t-linear coefficient of L(a + t*eps):

        bulk + int_deriv(boundary) == d/dt L(a + t*eps) at t=0, exactly.
    """
    a = _dynamical_or_raise(L)
    if a_value.metric != eps.metric:
        raise AlgebraError("mixed metrics")
    if eps.grade != a_value.grade and eps.terms:
        raise GradeError(f"variation grade {eps.grade} does not match field grade {a_value.grade}")
    assignment = dict(sources or {})
    assignment[a.name] = a_value
    B = tensor_slot_matrix(L, assignment)
    explicit = vderiv(L, (DerivOp.ID, a)).evaluate(assignment, a_value.metric, a.grade)
    bulk = (explicit - matrix_divergence(B)).dot(eps)
    boundary = mat_vec(B, eps)
    return bulk, boundary


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of a randomized two-route comparison."""

    metric: Metric
    grade: int
    trials: int
    counterexamples: tuple

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_tensor_exterior_identity(L: LagrangianDensity, metric: Metric,
                                    fields: Sequence[Mapping]) -> IdentityReport:
    """Check that the exterior and tensor EL routes agree on given fields.

    ``fields`` is a sequence of symbol-name -> concrete-field mappings.
    The exterior side evaluates the formal rhs of euler_lagrange_exterior;
    the tensor side goes through tensor_slot_matrix and the concrete
    matrix divergence.  Disagreements are reported as (k, n, s, index).
    """
    a = _dynamical_or_raise(L)
    rhs = euler_lagrange_exterior(L).rhs
    bad = []
    for idx, assignment in enumerate(fields):
        exterior = rhs.evaluate(assignment, metric, a.grade)
        tensor = matrix_divergence(tensor_slot_matrix(L, assignment))
        if exterior != tensor:
            bad.append((metric.k, metric.n, a.grade, idx))
    return IdentityReport(metric, a.grade, len(fields), tuple(bad))
