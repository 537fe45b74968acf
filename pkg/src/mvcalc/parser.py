"""Expression parsing for the command line.

Two small grammars share one tokenizer.  Algebra expressions evaluate
directly to multivector fields over a given metric:

    expr   := term (('+'|'-') term)*
    term   := factor (op factor)*        op := '^' | '.' | '_|' | '|_'
    factor := rational | blade | poly | '-' factor
            | 'hodge' '(' expr ')' | 'invhodge' '(' expr ')'
            | 'd^' factor | 'd_|' factor | '(' expr ')'
    blade  := 'e[' indices ']'           indices strictly increasing
    poly   := 'x' digits ('^' digits)?

and Lagrangian densities are sums of bilinear slot terms over declared
field symbols:

    lagr   := ['-'] lterm (('+'|'-') lterm)*
    lterm  := [rational '*'] '(' slot '.' slot ')'
    slot   := ['d^' | 'd_|' | 'dX'] name

Every error carries the character offset it was raised at.  The
canonical text printed for a multivector parses back to an equal value,
which the round-trip property relies on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .blades import AlgebraError, GradeError, Metric, Multivector
from .calculus import ext_deriv, int_deriv
from .poly import PolyScalar
from .variational import DerivOp, FieldSymbol, LagrangianDensity


class ExprError(AlgebraError):
    """Parse or evaluation error with a source offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<BLADE>e\[[^\]]*\])
    | (?P<POLY>x\d+(?:\^\d+)?)
    | (?P<NUMBER>\d+(?:/\d+)?)
    | (?P<DEXT>d\^)
    | (?P<DINT>d_\|)
    | (?P<DTENS>dX)
    | (?P<LINT>_\|)
    | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<RINT>\|_)
    | (?P<OP>[-+*^.()])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprError(f"unknown token {text[pos]!r}", pos)
        if m.lastgroup != "WS":
            kind = m.lastgroup
            if kind == "OP":
                kind = m.group()
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ExprError(f"expected {kind!r}, found {found!r}", tok.pos)
        return self.advance()

    def expect_eof(self):
        tok = self.peek()
        if tok.kind != "EOF":
            raise ExprError(f"unexpected trailing input {tok.text!r}", tok.pos)


class _ExprParser(_Parser):
    """Evaluating parser; every node is a Multivector over the metric."""

    def __init__(self, text: str, metric: Metric):
        super().__init__(text)
        self.metric = metric

    def expr(self) -> Multivector:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            try:
                value = value + rhs if op.kind == "+" else value - rhs
            except AlgebraError as exc:
                raise ExprError(str(exc), op.pos) from None
        return value

    def term(self) -> Multivector:
        value = self.factor()
        while self.peek().kind in ("^", ".", "LINT", "RINT"):
            op = self.advance()
            rhs = self.factor()
            try:
                if op.kind == "^":
                    value = value.wedge(rhs)
                elif op.kind == ".":
                    value = Multivector.scalar(self.metric, value.dot(rhs))
                elif op.kind == "LINT":
                    value = value.left_contract(rhs)
                else:
                    value = value.right_contract(rhs)
            except AlgebraError as exc:
                raise ExprError(str(exc), op.pos) from None
        return value

    def factor(self) -> Multivector:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            return Multivector.scalar(self.metric, Fraction(tok.text))
        if tok.kind == "POLY":
            self.advance()
            return Multivector.scalar(self.metric, self._poly(tok))
        if tok.kind == "BLADE":
            self.advance()
            return self._blade(tok)
        if tok.kind == "DEXT":
            self.advance()
            return ext_deriv(self.factor())
        if tok.kind == "DINT":
            self.advance()
            return int_deriv(self.factor())
        if tok.kind == "-":
            self.advance()
            return -self.factor()
        if tok.kind == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "NAME" and tok.text in ("hodge", "invhodge"):
            self.advance()
            self.expect("(")
            value = self.expr()
            self.expect(")")
            return value.hodge() if tok.text == "hodge" else value.inv_hodge()
        if tok.kind == "NAME":
            raise ExprError(f"unknown name {tok.text!r}", tok.pos)
        found = tok.text or "end of input"
        raise ExprError(f"expected a value, found {found!r}", tok.pos)

    def _poly(self, tok: Token) -> PolyScalar:
        body = tok.text[1:]
        if "^" in body:
            index_text, power_text = body.split("^")
            power = int(power_text)
        else:
            index_text, power = body, 1
        index = int(index_text)
        if index >= self.metric.dim:
            raise ExprError(
                f"coordinate x{index} out of range for dimension {self.metric.dim}", tok.pos
            )
        return PolyScalar.variable(self.metric.dim, index, power)

    def _blade(self, tok: Token) -> Multivector:
        inner = tok.text[2:-1].strip()
        if not inner:
            return Multivector.blade(self.metric, ())
        try:
            indices = tuple(int(part) for part in inner.split(","))
        except ValueError:
            raise ExprError(f"bad blade literal {tok.text!r}", tok.pos) from None
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ExprError("indices must be strictly increasing", tok.pos)
        if indices and indices[-1] >= self.metric.dim:
            raise ExprError(
                f"blade index {indices[-1]} out of range for dimension {self.metric.dim}",
                tok.pos,
            )
        if any(i < 0 for i in indices):
            raise ExprError("blade indices must be nonnegative", tok.pos)
        return Multivector.blade(self.metric, indices)


def parse_expr(text: str, metric: Metric) -> Multivector:
    """Parse and evaluate an algebra expression over the metric."""
    parser = _ExprParser(text, metric)
    value = parser.expr()
    parser.expect_eof()
    return value


_SLOT_OPS = {"DEXT": DerivOp.EXT, "DINT": DerivOp.INT, "DTENS": DerivOp.TENSOR}


class _LagrangianParser(_Parser):
    def __init__(self, text: str, symbols: Mapping[str, FieldSymbol]):
        super().__init__(text)
        self.symbols = symbols

    def lagrangian(self) -> LagrangianDensity:
        terms = [self.lterm(self._leading_sign())]
        while self.peek().kind in ("+", "-"):
            sign = Fraction(1) if self.advance().kind == "+" else Fraction(-1)
            terms.append(self.lterm(sign))
        try:
            return LagrangianDensity(terms)
        except AlgebraError as exc:
            raise ExprError(str(exc), 0) from None

    def _leading_sign(self) -> Fraction:
        if self.peek().kind == "-":
            self.advance()
            return Fraction(-1)
        return Fraction(1)

    def lterm(self, sign: Fraction) -> tuple:
        coeff = sign
        if self.peek().kind == "NUMBER":
            coeff = sign * Fraction(self.advance().text)
            self.expect("*")
        self.expect("(")
        left = self.slot()
        self.expect(".")
        right = self.slot()
        self.expect(")")
        return (coeff, left, right)

    def slot(self) -> tuple:
        op = DerivOp.ID
        if self.peek().kind in _SLOT_OPS:
            op = _SLOT_OPS[self.advance().kind]
        tok = self.expect("NAME")
        symbol = self.symbols.get(tok.text)
        if symbol is None:
            known = ", ".join(sorted(self.symbols)) or "none"
            raise ExprError(
                f"unknown field symbol {tok.text!r} (declared: {known})", tok.pos
            )
        return (op, symbol)


def parse_lagrangian(text: str, symbols: Mapping[str, FieldSymbol] | Sequence[FieldSymbol]) -> LagrangianDensity:
    """Parse a Lagrangian density over declared field symbols."""
    if not isinstance(symbols, Mapping):
        symbols = {sym.name: sym for sym in symbols}
    parser = _LagrangianParser(text, symbols)
    density = parser.lagrangian()
    parser.expect_eof()
    return density
