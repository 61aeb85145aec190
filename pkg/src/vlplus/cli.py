"""Command line entry point (``vlplus`` / ``python -m vlplus``)."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .fock import Lattice, element_to_json
from .scalars import format_scalar


def _k_arg(text: str) -> Lattice:
    if text == "sym":
        return Lattice.symbolic()
    try:
        return Lattice(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'sym', got {text!r}") from exc


def _fixed_k(text: str) -> int:
    try:
        k = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if k < 1:
        raise argparse.ArgumentTypeError("k must be positive")
    return k


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_tables(args) -> int:
    from .report import emit_table

    t = emit_table(args.id)
    if args.format == "latex":
        print(t.to_latex())
    elif args.format == "csv":
        sys.stdout.write(t.to_csv())
    else:
        data = t.to_json()
        if not args.compare_paper:
            data = {k: v for k, v in data.items() if k not in ("mismatches", "entries_match_printed", "printed_determinant", "determinant_matches_printed")}
        _emit(data)
    if args.compare_paper and args.format != "json":
        _emit({"mismatches": [m.to_json() for m in t.mismatches],
               "determinant_matches_printed": t.determinant_matches})
    return 0 if t.computed_checks_ok else 1


def cmd_constants(args) -> int:
    from .report import compare_printed_pairs, corollary_constants

    cc = corollary_constants()
    out = cc.to_json()
    out["gamma_is_16rho_plus_4sigma"] = cc.gamma == cc.rho * 16 + cc.sigma * 4
    out["printed_pair_match"] = compare_printed_pairs(cc.rho, cc.sigma)["match"]
    if args.at_k is not None:
        out["at_k"] = {"k": args.at_k, **{n: format_scalar(getattr(cc, n)(args.at_k)) for n in ("beta", "rho", "sigma", "gamma")}}
    _emit(out)
    return 0


def cmd_eval(args) -> int:
    from .expr import eval_text

    e = eval_text(args.expr, args.k)
    _emit({"k": args.k.label, "expr": args.expr, "element": element_to_json(e)})
    return 0


def cmd_congruent(args) -> int:
    from .c2 import congruent
    from .expr import eval_text

    lat = Lattice(args.k)
    cert = congruent(lat, eval_text(args.lhs, lat), eval_text(args.rhs, lat))
    _emit(cert.to_json())
    return 0 if cert.member and cert.verified else 1


def cmd_c2dim(args) -> int:
    from .c2 import c2_component

    lat = Lattice(args.k)
    rows = []
    for n in range(args.max_weight + 1):
        comp = c2_component(lat, n)
        rows.append({"weight": n, "ambient_dim": comp.ambient_dim, "c2_rank": comp.rank, "quotient_dim": comp.quotient_dim})
    if args.format == "json":
        _emit({"k": args.k, "weights": rows})
    else:
        print("weight,ambient_dim,c2_rank,quotient_dim")
        for r in rows:
            print(f"{r['weight']},{r['ambient_dim']},{r['c2_rank']},{r['quotient_dim']}")
    return 0


def cmd_schur(args) -> int:
    from .vertex import schur_p

    _emit({"j": args.j, "m": args.m, "element": element_to_json(schur_p(args.j, args.m))})
    return 0


def cmd_report(args) -> int:
    from .report import full_report, report_latex, report_markdown

    if args.format == "latex":
        print(report_latex(), end="")
        return 0
    rep = full_report(args.k, include_c2=not args.no_c2)
    if args.format == "markdown":
        print(report_markdown(rep), end="")
    else:
        _emit(rep)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(args.k, args.max_weight)
    if args.json:
        _emit([r.to_json() for r in results])
    else:
        for r in results:
            print(r.line())
    return sum(not r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vlplus", description="Exact computations in V_L^+ and its C2 quotient.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="emit one of the six change-of-basis tables")
    t.add_argument("--id", type=int, choices=range(1, 7), required=True)
    t.add_argument("--format", choices=["json", "csv", "latex"], default="json")
    t.add_argument("--compare-paper", action="store_true", help="include the comparison with the printed table")
    t.set_defaults(func=cmd_tables)

    c = sub.add_parser("constants", help="beta, rho, sigma, gamma as rational functions of k")
    c.add_argument("--at-k", type=_fixed_k)
    c.set_defaults(func=cmd_constants)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("--k", type=_k_arg, default=Lattice(3))
    e.add_argument("--expr", required=True)
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("congruent", help="decide lhs = rhs mod C2 at fixed k")
    g.add_argument("--k", type=_fixed_k, default=3)
    g.add_argument("--lhs", required=True)
    g.add_argument("--rhs", required=True)
    g.set_defaults(func=cmd_congruent)

    d = sub.add_parser("c2dim", help="quotient dimensions per weight")
    d.add_argument("--k", type=_fixed_k, default=3)
    d.add_argument("--max-weight", type=int, required=True)
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.set_defaults(func=cmd_c2dim)

    s = sub.add_parser("schur", help="the Schur state p_j(m alpha)")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.set_defaults(func=cmd_schur)

    r = sub.add_parser("report", help="full comparison report")
    r.add_argument("--k", type=_fixed_k, default=3)
    r.add_argument("--format", choices=["json", "markdown", "latex"], default="json")
    r.add_argument("--no-c2", action="store_true", help="skip the fixed-k congruence checks")
    r.set_defaults(func=cmd_report)

    v = sub.add_parser("verify", help="run the acceptance suite; exit status is the number of failures")
    v.add_argument("--k", type=_fixed_k, default=3)
    v.add_argument("--max-weight", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Exception as exc:  # computational failures become JSON diagnostics
        from .expr import ExprSyntaxError

        diag = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ExprSyntaxError):
            diag.update(offset=exc.offset, expected=sorted(exc.expected))
        _emit(diag)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
