"""Command-line interface: ``qalpha {decompose,verify,table,eval,classical}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import decomposition as dec
from . import hypergeometric as hg
from .errors import BoundError, ParseError, QAlphaError
from .expr import DEFAULT_MAX_ALPHA_DEGREE, DEFAULT_MAX_DEGREE, evaluate, parse, parse_scalar
from .quantum_matrix_algebra import render
from .scalar_field import AlphaPolynomial, LaurentPoly, QRational
from .uq_module_action import apply_word
from .verify import DEFAULT_SEED, SUITES, run_suite, summary

DEFAULT_MAX_M = 8


def max_m_bound() -> int:
    raw = os.environ.get("QALPHA_MAX_M")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_M
    try:
        return int(raw)
    except ValueError:
        raise BoundError(f"QALPHA_MAX_M must be an integer, got {raw!r}") from None


def check_m(m: int, what: str = "m") -> None:
    bound = max_m_bound()
    if not 0 <= m <= bound:
        raise BoundError(f"{what} = {m} is outside 0..{bound} (raise it with QALPHA_MAX_M)")


# latex rendering ---------------------------------------------------------------


def _latex_laurent(p: LaurentPoly) -> str:
    out = []
    for e in sorted(p.coeffs, reverse=True):
        c = p.coeffs[e]
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{{{e}}}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) or "0"


def latex_qrational(c: QRational) -> str:
    num = _latex_laurent(c.numerator)
    if c.denominator == LaurentPoly({0: 1}):
        return num
    return f"\\frac{{{num}}}{{{_latex_laurent(c.denominator)}}}"


def latex_alpha_poly(p: AlphaPolynomial) -> str:
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("\\alpha" if i == 1 else f"\\alpha^{{{i}}}")
        neg = c.leading_sign() < 0
        mag = -c if neg else c
        if not mono:
            body = latex_qrational(mag)
        elif mag == 1:
            body = mono
        elif mag.is_single_term() or mag.denominator != LaurentPoly({0: 1}):
            body = f"{latex_qrational(mag)}\\,{mono}"
        else:
            body = f"\\left({latex_qrational(mag)}\\right){mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) or "0"


def tables_latex(tables: Sequence[dec.FTable]) -> str:
    lines = ["\\begin{tabular}{rrl}", "\\hline", "$m$ & $j$ & $F_{m,j}(\\alpha)$ \\\\", "\\hline"]
    for t in tables:
        for j, f in enumerate(t.F):
            lines.append(f"{t.m} & {j} & ${latex_alpha_poly(f)}$ \\\\")
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines)


def tables_text(tables: Sequence[dec.FTable]) -> str:
    lines = []
    for t in tables:
        lines.append(f"m = {t.m}")
        for j, f in enumerate(t.F):
            lines.append(f"  F_{{{t.m},{j}}} = {f}")
    return "\n".join(lines)


# commands ------------------------------------------------------------------------


def summands_line(report: dec.DecompositionReport) -> str:
    dims = report.summands
    head = " + ".join(f"SL({d})" for d in dims) if dims else "0"
    return f"{head}, total dim {report.total_dimension}"


def cmd_decompose(args: argparse.Namespace) -> int:
    check_m(args.m)
    table = dec.solve_F_triangular(args.m)
    if args.alpha is None:
        if args.format == "json":
            print(json.dumps(table.to_json(), indent=2))
        else:
            for j, f in enumerate(table.F):
                print(f"F_{{{args.m},{j}}} = {f}")
        return 0
    alpha = parse_scalar(args.alpha)
    report = dec.decomposition_report(args.m, alpha, table)
    if args.format == "json":
        payload = {
            "m": args.m,
            "alpha": alpha.to_json(),
            "rows": [
                {"j": r.j, "dimension": r.dimension, "F": r.value.to_json(), "nonzero": r.nonzero} for r in report
            ],
            "total_dimension": report.total_dimension,
        }
        print(json.dumps(payload, indent=2))
        return 0
    for r in report:
        status = "present" if r.nonzero else "absent"
        print(f"j={r.j}  SL({r.dimension})  F = {r.value}  [{status}]")
    print(summands_line(report))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    check_m(args.max_m, "max-m")
    results = run_suite(args.suite, args.max_m, seed=args.seed, jobs=args.jobs)
    data = summary(args.suite, args.max_m, args.seed, results)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.detail}; {r.seconds:.3f}s)")
        n_ok = sum(r.passed for r in results)
        print(f"{n_ok}/{len(results)} checks passed")
    return 0 if data["passed"] else 1


def cmd_table(args: argparse.Namespace) -> int:
    check_m(args.max_m, "max-m")
    tables = [dec.solve_F_triangular(m) for m in range(args.max_m + 1)]
    if args.format == "json":
        print(json.dumps([t.to_json() for t in tables], indent=2))
    elif args.format == "latex":
        print(tables_latex(tables))
    else:
        print(tables_text(tables))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        node = parse(args.expression)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print(f"  {args.expression}", file=sys.stderr)
        print(f"  {' ' * exc.position}^", file=sys.stderr)
        return 2
    p = evaluate(node, max_degree=args.max_degree, max_alpha_degree=args.max_alpha_degree)
    if args.apply:
        bad = [g for g in args.apply if g not in "efkK"]
        if bad:
            raise BoundError(f"--apply letters must be in e, f, k, K; got {bad[0]!r}")
        p = apply_word(p, args.apply)
    print(render(p))
    return 0


def cmd_classical(args: argparse.Namespace) -> int:
    check_m(args.m)
    m = args.m
    ok = True
    constants = []
    for s in range(m + 1):
        lines = hg.classical_F_lines(m, s)
        limit = hg.closed_form_F(m, s).at_q_one()
        c = hg.eq1_constant(m, s)
        agree = lines["line_i"] == lines["line_ii"] == limit
        ok = ok and agree
        constants.append(c)
        printed_note = "agrees" if lines["line_i_printed"] == lines["line_i"] else f"differs: {lines['line_i_printed']}"
        print(f"s={s}")
        print(f"  line (i), parameter 2s+2 : {lines['line_i']}")
        print(f"  line (ii)                : {lines['line_ii']}")
        print(f"  q -> 1 of closed form    : {limit}")
        print(f"  c_{{{m},{s}}}                  : {c}")
        print(f"  line (i), parameter 2s+1 : {printed_note}")
        print(f"  {'all three agree' if agree else 'MISMATCH'}")
    try:
        hg.eq1_proportionality_check(m)
    except QAlphaError as exc:
        print(f"proportionality check failed: {exc}")
        ok = False
    print("c = " + ", ".join(str(c) for c in constants))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qalpha", description="Quantum alpha-determinant decomposition toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="transition polynomials F_{m,j} or the decomposition at a given alpha")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", help="exact scalar in Q(q), e.g. -1, 1/2, q^-2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run identity and invariant suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="emit F tables for m = 0..max-m")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("eval", help="normal form of an expression in A_q(Mat_2)[alpha]")
    p.add_argument("expression")
    p.add_argument("--apply", default="", help="U_q word over e, f, k, K (K = k^-1); rightmost acts first")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--max-alpha-degree", type=int, default=DEFAULT_MAX_ALPHA_DEGREE)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classical", help="classical (q = 1) transition polynomials")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (QAlphaError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
