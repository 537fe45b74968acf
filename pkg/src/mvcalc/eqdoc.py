"""JSON documents for derived field equations.

A document is a plain dict that survives a round trip losslessly:

    {
      "metric": {"k": 1, "n": 3},
      "grade": 1,
      "lhs": [{"coeff": "1", "ops": ["int", "ext"], "symbol": "A"}],
      "rhs": [{"coeff": "1", "ops": [], "symbol": "J"}],
      "symbols": {"A": {"grade": 1, "role": "dynamical"},
                  "J": {"grade": 1, "role": "source"}}
    }

Coefficients are exact rationals serialized as strings.  The ops list
is outermost first, matching the rendered text.  The symbols table
carries each field's grade and role so the equation can be rebuilt
without any out-of-band context.  ``dumps`` emits a single line with
sorted keys, so equal documents serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .blades import AlgebraError, Metric
from .variational import FieldEquation, FieldSymbol, FormalExpr, ROLES

_ALLOWED_OPS = ("ext", "int", "lap")


def _expr_to_terms(expr: FormalExpr) -> list[dict]:
    out = []
    for (chain, symbol), coeff in expr.terms.items():
        if any(op not in _ALLOWED_OPS for op in chain):
            raise AlgebraError("only ext/int/lap chains can be serialized")
        out.append({"coeff": str(coeff), "ops": list(chain), "symbol": symbol.name})
    return out


def _collect_symbols(eq: FieldEquation) -> dict[str, FieldSymbol]:
    table: dict[str, FieldSymbol] = {}
    for expr in (eq.lhs, eq.rhs):
        for (_, symbol) in expr.terms:
            if table.setdefault(symbol.name, symbol) != symbol:
                raise AlgebraError(f"symbol name {symbol.name!r} bound to two fields")
    return table


def equation_to_doc(eq: FieldEquation, metric: Metric) -> dict:
    symbols = _collect_symbols(eq)
    return {
        "metric": {"k": metric.k, "n": metric.n},
        "grade": eq.grade,
        "lhs": _expr_to_terms(eq.lhs),
        "rhs": _expr_to_terms(eq.rhs),
        "symbols": {
            name: {"grade": sym.grade, "role": sym.role}
            for name, sym in sorted(symbols.items())
        },
    }


def _need(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise AlgebraError(f"equation document is missing {key!r}")
    return doc[key]


def _terms_from_doc(entries, symbols: dict) -> FormalExpr:
    if not isinstance(entries, list):
        raise AlgebraError("term list must be a list")
    terms = []
    for entry in entries:
        name = _need(entry, "symbol")
        if name not in symbols:
            raise AlgebraError(f"term references undeclared symbol {name!r}")
        ops = _need(entry, "ops")
        if not isinstance(ops, list) or any(op not in _ALLOWED_OPS for op in ops):
            raise AlgebraError(f"bad ops list {ops!r}")
        try:
            coeff = Fraction(_need(entry, "coeff"))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise AlgebraError(f"bad coefficient {entry.get('coeff')!r}") from exc
        terms.append((tuple(ops), symbols[name], coeff))
    return FormalExpr(terms)


def doc_to_equation(doc: dict) -> tuple[FieldEquation, Metric]:
    metric_doc = _need(doc, "metric")
    try:
        metric = Metric(int(_need(metric_doc, "k")), int(_need(metric_doc, "n")))
    except (TypeError, ValueError) as exc:
        raise AlgebraError(f"bad metric entry {metric_doc!r}") from exc
    symbol_doc = _need(doc, "symbols")
    symbols = {}
    for name, entry in symbol_doc.items():
        role = _need(entry, "role")
        if role not in ROLES:
            raise AlgebraError(f"bad role {role!r} for symbol {name!r}")
        symbols[name] = FieldSymbol(name, int(_need(entry, "grade")), role)
    grade = _need(doc, "grade")
    if not isinstance(grade, int):
        raise AlgebraError(f"bad grade {grade!r}")
    eq = FieldEquation(
        _terms_from_doc(_need(doc, "lhs"), symbols),
        _terms_from_doc(_need(doc, "rhs"), symbols),
        grade,
    )
    return eq, metric


def dumps(eq: FieldEquation, metric: Metric) -> str:
    """Single-line canonical JSON for an equation."""
    return json.dumps(equation_to_doc(eq, metric), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> tuple[FieldEquation, Metric]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"not valid JSON: {exc}") from exc
    return doc_to_equation(doc)
