"""Command line front end.

Exit codes: 0 success, 2 unreadable input or bad flags, 3 invalid curve,
4 audit failure, 5 pipeline failure, 6 bound breach during rounding,
7 oracle failure, 10-12 arithmetic errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import builtin_hyperelliptic
from .document import SCHEMA, load_curve_document, report_document
from .errors import AuditFailure, ParseError, RigidZetaError
from .pipeline import RunConfig, prepare, run, run_oracle

EXCLUDED_HINT = "the prime divides the discriminant in a way the model cannot absorb; choose another prime"


def _coeffs(text: str) -> list:
    try:
        return [int(c) for c in text.replace(" ", "").split(",") if c != ""]
    except ValueError as exc:
        raise ParseError(f"bad coefficient list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigidzeta", description="Zeta functions of curves over finite fields.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", metavar="FILE", help="curve document (JSON)")
    src.add_argument("--builtin-hyperelliptic", metavar="F_COEFFS",
                     help="y^2 = f(x), coefficients of f from low to high, comma separated")
    ap.add_argument("--p", type=int, help="characteristic (required with --builtin-hyperelliptic)")
    ap.add_argument("--n", type=int, default=None, help="degree of F_q over F_p")
    ap.add_argument("--precision-margin", type=int, default=None)
    ap.add_argument("--force-N", type=int, default=None, help="unsafe: override the working precision")
    ap.add_argument("--oracle-depth", type=int, default=None, help="compare #X(F_q^i), i <= I, with brute force")
    ap.add_argument("--oracle-only", action="store_true", help="only run the brute-force counter")
    ap.add_argument("--audit-only", action="store_true")
    ap.add_argument("--emit", choices=["report", "chi", "counts"], default="report")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--no-timings", action="store_true", help="omit timings from the report")
    return ap


def _load(args) -> tuple:
    if args.curve:
        inp, doc = load_curve_document(args.curve)
        if args.p is not None and args.p != inp.p:
            raise ParseError("--p disagrees with the curve document")
        return inp, doc
    if args.p is None:
        raise ParseError("--builtin-hyperelliptic needs --p")
    inp = builtin_hyperelliptic(_coeffs(args.builtin_hyperelliptic), args.p, n=args.n or 1)
    return inp, {}


def _config(args, doc: dict) -> RunConfig:
    margin = args.precision_margin
    if margin is None:
        margin = int(doc.get("precision_margin", 1))
    depth = args.oracle_depth
    if depth is None:
        depth = int(doc.get("oracle_depth", 0))
    if margin < 0 or depth < 0 or args.threads < 1:
        raise ParseError("margin and oracle depth must be >= 0, threads >= 1")
    return RunConfig(precision_margin=margin, force_N=args.force_N, oracle_depth=depth,
                     audit_only=args.audit_only, threads=args.threads)


def _emit(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


def _audit_doc(cd) -> dict:
    return {"schema": SCHEMA, "genus": str(cd.genus),
            "audit": {"passed": cd.audit.passed, "clauses": dict(cd.audit.clauses)}}


def execute(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        inp, doc = _load(args)
        cfg = _config(args, doc)
        if args.oracle_only:
            cd = prepare(inp)
            depth = cfg.oracle_depth or 1
            res = run_oracle(cd, depth, [None] * depth, cfg.budget)
            rows = [{k: v for k, v in r.items() if k not in ("predicted", "match")} for r in res["counts"]]
            if args.emit == "counts":
                out.write("".join(f"{r['total']}\n" for r in rows))
            else:
                _emit({"schema": SCHEMA, "oracle": {"counts": [{k: str(v) for k, v in r.items()} for r in rows]}}, out)
            return 0
        res = run(inp, cfg)
    except AuditFailure as exc:
        rep = exc.report
        payload = {"schema": SCHEMA, "error": "AuditFailure", "message": str(exc), "hint": EXCLUDED_HINT}
        if rep is not None:
            payload["audit"] = {"passed": False, "clauses": dict(rep.clauses)}
        _emit(payload, out)
        return exc.exit_code
    except RigidZetaError as exc:
        print(f"rigidzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.audit_only:
        _emit(_audit_doc(res.cd), out)
        return 0
    if args.emit == "chi":
        out.write("".join(f"{c}\n" for c in res.lpoly.coeffs))
    elif args.emit == "counts":
        out.write("".join(f"{c}\n" for c in res.counts))
    else:
        _emit(report_document(res, include_timings=not args.no_timings), out)
    if res.oracle is not None and not res.oracle["all_match"]:
        print("rigidzeta: oracle counts disagree with the computed zeta function", file=sys.stderr)
        return 7
    return 0


def main(argv=None) -> None:
    sys.exit(execute(argv))
