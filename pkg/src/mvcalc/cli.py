"""Command line entry points.

Three subcommands:

    derive  build the field equations of a quadratic density, either
            from a preset (maxwell, electrostatics, dual) or from an
            explicit density given with --lagrangian/--symbols
    verify  run the property suites and report per-property results
    eval    evaluate a multivector expression over a chosen metric

Exit codes: 0 on success, 1 when verification finds a failing property,
2 on usage or parse errors (diagnostics go to stderr).  Output for a
fixed invocation is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import eqdoc
from .blades import AlgebraError, GradeError, Metric
from .em import MaxwellConfig, derive_equations, dual_theory
from .parser import ExprError, parse_expr, parse_lagrangian
from .variational import DerivOp, FieldSymbol, euler_lagrange_exterior, euler_lagrange_tensor
from .verify import SUITES, format_report, run_suites

_PRESET_NAMES = {
    "maxwell": ("A", "J"),
    "electrostatics": ("phi", "rho"),
}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvcalc",
        description="exterior-algebra field equations over flat space-times",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    derive = sub.add_parser(
        "derive", help="derive the field equations of a quadratic density"
    )
    derive.add_argument("--k", type=int, required=True, help="number of time axes")
    derive.add_argument("--n", type=int, required=True, help="number of space axes")
    derive.add_argument("--r", type=int, help="grade of the field strength")
    derive.add_argument(
        "--preset",
        choices=("maxwell", "electrostatics", "dual"),
        default="maxwell",
        help="theory template (default: maxwell)",
    )
    derive.add_argument("--m", type=_rational, default=Fraction(0), help="mass parameter")
    derive.add_argument(
        "--xi", type=_rational, default=None, help="gauge-fixing parameter"
    )
    derive.add_argument(
        "--lagrangian",
        help="explicit density such as '1/2*(d^A . d^A) + (J . A)'; overrides --preset",
    )
    derive.add_argument(
        "--symbols",
        help="field declarations for --lagrangian, as name:grade:role,...",
    )
    derive.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="run the property suites")
    verify.add_argument(
        "--suite",
        choices=tuple(sorted(SUITES)) + ("all",),
        default="all",
        help="which suite to run (default: all)",
    )
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument(
        "--trials", type=int, default=40, help="randomized cases per sweep point"
    )

    evaluate = sub.add_parser("eval", help="evaluate a multivector expression")
    evaluate.add_argument("expr", help="expression such as 'd^ (x0 ^ e[1]) _| e[0,1]'")
    evaluate.add_argument("--k", type=int, required=True, help="number of time axes")
    evaluate.add_argument("--n", type=int, required=True, help="number of space axes")
    evaluate.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _parse_symbol_decls(text: str) -> dict[str, FieldSymbol]:
    out: dict[str, FieldSymbol] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [piece.strip() for piece in chunk.split(":")]
        if len(parts) != 3:
            raise AlgebraError(
                f"bad symbol declaration {chunk!r}; expected name:grade:role"
            )
        name, grade_text, role = parts
        try:
            grade = int(grade_text)
        except ValueError:
            raise AlgebraError(f"bad grade in symbol declaration {chunk!r}") from None
        out[name] = FieldSymbol(name, grade, role)
    return out


def _cmd_derive(args) -> int:
    metric = Metric(args.k, args.n)
    if args.lagrangian is not None:
        symbols = _parse_symbol_decls(args.symbols or "")
        density = parse_lagrangian(args.lagrangian, symbols)
        dynamical = density.dynamical
        if dynamical is None:
            raise AlgebraError("the density has no dynamical symbol to vary")
        if dynamical.grade > metric.dim:
            raise GradeError(
                f"dynamical grade {dynamical.grade} exceeds dimension {metric.dim}"
            )
        uses_tensor = any(
            op is DerivOp.TENSOR
            for _, left, right in density.terms
            for op, _ in (left, right)
        )
        route = euler_lagrange_tensor if uses_tensor else euler_lagrange_exterior
        eq = route(density)
    else:
        if args.r is None:
            raise AlgebraError("--r is required when using a preset")
        if args.preset == "dual":
            if args.m or args.xi is not None:
                raise AlgebraError("the dual preset takes neither --m nor --xi")
            eq, _ = dual_theory(metric, args.r + 1)
        else:
            cfg = MaxwellConfig(metric, args.r, mass=args.m, xi=args.xi)
            eq = derive_equations(cfg, *_PRESET_NAMES[args.preset])
    if args.format == "json":
        print(eqdoc.dumps(eq, metric))
    else:
        print(eq.render())
    return 0


def _cmd_verify(args) -> int:
    outcomes = run_suites(args.suite, seed=args.seed, trials=args.trials)
    print(format_report(outcomes))
    return 0 if all(item.ok for item in outcomes) else 1


def _cmd_eval(args) -> int:
    metric = Metric(args.k, args.n)
    value = parse_expr(args.expr, metric)
    if args.format == "json":
        doc = {
            "metric": {"k": metric.k, "n": metric.n},
            "grade": value.grade,
            "terms": [
                {"indices": list(indices), "coeff": str(coeff)}
                for indices, coeff in value.items()
            ],
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print(str(value))
    return 0


def run(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    handlers = {"derive": _cmd_derive, "verify": _cmd_verify, "eval": _cmd_eval}
    try:
        return handlers[args.command](args)
    except ExprError as exc:
        print(f"error: {exc} (at offset {exc.offset})", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run_main() -> None:
    sys.exit(run())
