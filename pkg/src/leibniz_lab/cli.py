"""Command-line front end: ``leibniz-lab <command> ...``.

Exit codes: 0 when the requested analysis ran (a failed certificate is still
a result), 1 for usage, I/O and invalid-input errors, 2 when the oracle
refuses an enumeration over budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import oracle
from .algebra import (LeibnizAlgebra, LeibnizIdentityError, NotClosedError, ideal_closure, is_lie,
                      is_nilpotent, is_solvable, leibniz_kernel, quotient, series,
                      subalgebra_closure)
from .algebra_file import AlgebraFileError, dumps_algebra, load_algebra, save_algebra, transplant
from .classify import TheoremFailure, construct_chain, construct_cyclic, construct_standard, verify_theorem
from .fields import FieldError, field_from_spec, is_prime
from .linalg import DimensionError, Subspace, span_rref
from .structure import core_of

REPORT_SCHEMA = "leibniz-report/1"
BUDGET_ENV = "LEIBNIZ_LAB_BUDGET"


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------------

def parse_rows(A: LeibnizAlgebra, text: str) -> list[tuple]:
    """``"1,0,-1;0,1,0"`` -> coordinate rows in A's field."""
    rows = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = [s.strip() for s in chunk.split(",")]
        if len(parts) != A.dim:
            raise UsageError(f"row {chunk!r} has {len(parts)} entries, expected {A.dim}")
        try:
            rows.append(tuple(A.field.parse(s) for s in parts))
        except (FieldError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"row {chunk!r}: {exc}") from None
    if not rows:
        raise UsageError("no rows given")
    return rows


def resolve_budget(arg: int | None) -> oracle.EnumerationBudget:
    if arg is not None:
        return oracle.EnumerationBudget(arg)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return oracle.EnumerationBudget(int(env))
        except ValueError:
            raise UsageError(f"{BUDGET_ENV}={env!r} is not an integer") from None
    return oracle.EnumerationBudget()


def _rows(A: LeibnizAlgebra, S: Subspace) -> list[list[str]]:
    return [[A.field.format(a) for a in r] for r in S.basis]


def _series_summary(A: LeibnizAlgebra, kind: str) -> dict:
    s = series(A, kind)
    return {"dims": s.dims(), "terminates_at_zero": s.terminates_at_zero, "last": _rows(A, s.last)}


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _minimality_data(A: LeibnizAlgebra, budget) -> dict:
    res = oracle.minimality_check(A, budget)
    subs = oracle.enumerate_subalgebras(A, budget) if res.status != "hypothesis_fail" else []
    census: dict = {}
    for S in subs:
        row = census.setdefault(str(S.dim), {"subalgebras": 0, "nilpotent": 0})
        row["subalgebras"] += 1
        row["nilpotent"] += S.is_zero or is_nilpotent(A, within=S)
    return {"status": res.status, "reason": res.reason, "subspaces": res.subspaces,
            "proper_subalgebras": res.subalgebras,
            "witness": _rows(A, res.witness) if res.witness is not None else None,
            "census": census}


def build_report(A: LeibnizAlgebra, input_digest: str, seed: int = 0, oracle_budget=None) -> dict:
    """Deterministic analysis report for a validated algebra."""
    leib = leibniz_kernel(A)
    report = {
        "schema": REPORT_SCHEMA,
        "input": input_digest,
        "seed": seed,
        "field": str(A.field),
        "dim": A.dim,
        "basis": list(A.labels),
        "validation": {"leibniz_identity": "PASS"},
        "flags": {"lie": is_lie(A), "nilpotent": is_nilpotent(A), "solvable": is_solvable(A)},
        "leib_kernel": _rows(A, leib),
        "series": {"lower_central": _series_summary(A, "lower_central"),
                   "derived": _series_summary(A, "derived")},
    }
    try:
        cert = verify_theorem(A, seed)
        report["certificate"] = cert.to_json()
        report["certificate_failure"] = None
    except TheoremFailure as exc:
        report["certificate"] = None
        report["certificate_failure"] = {"stage": exc.stage, "message": exc.message,
                                         "evidence": _json_safe(exc.evidence)}
    if oracle_budget is not None:
        report["oracle"] = {"minimality": _minimality_data(A, oracle_budget)}
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fmt_rows(A: LeibnizAlgebra, rows) -> str:
    if not rows:
        return "0"
    return "span{" + ", ".join(A.format_vector([A.field.parse(s) for s in r]) for r in rows) + "}"


def render_report(A: LeibnizAlgebra, report: dict) -> str:
    fl = report["flags"]
    lines = [
        f"algebra: dim {A.dim} over {report['field']}, basis {', '.join(A.labels)}",
        f"Leibniz identity: {report['validation']['leibniz_identity']}",
        f"lie: {fl['lie']}  nilpotent: {fl['nilpotent']}  solvable: {fl['solvable']}",
        f"Leib(L) = {_fmt_rows(A, report['leib_kernel'])}",
        f"lower central dims: {report['series']['lower_central']['dims']}",
        f"derived dims: {report['series']['derived']['dims']}",
    ]
    cert = report["certificate"]
    if cert is not None:
        lines += [
            "certificate: OK",
            f"  x  = {A.format_vector([A.field.parse(s) for s in cert['x']])}",
            f"  N  = {_fmt_rows(A, cert['N'])}",
            f"  L1 = {_fmt_rows(A, cert['L1'])}",
            f"  F  = {_fmt_rows(A, cert['F'])}",
            f"  A  = {_fmt_rows(A, cert['A'])} (nilradical)",
            f"  p(λ) coefficients (constant first): {cert['p']} [{cert['p_irreducible']}]",
            f"  dichotomy: {cert['dichotomy']}",
        ]
        if cert["generator"] is not None:
            lines.append(f"  generator: {A.format_vector([A.field.parse(s) for s in cert['generator']])}")
        for c in cert["open_clauses"]:
            lines.append(f"  open: {c}")
    else:
        fail = report["certificate_failure"]
        lines.append(f"certificate: FAILED at stage {fail['stage']}: {fail['message']}")
        for k, v in fail["evidence"].items():
            lines.append(f"  {k}: {v}")
    if "oracle" in report:
        m = report["oracle"]["minimality"]
        lines.append(f"oracle minimality: {m['status'].upper()} ({m['reason']})")
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------------

def cmd_validate(args, out) -> int:
    A = load_algebra(args.file)
    out.write(f"{args.file}: dim {A.dim} over {A.field}\nLeibniz identity: PASS\n")
    return 0


def cmd_analyze(args, out) -> int:
    A = load_algebra(args.file)
    t0 = time.perf_counter()
    budget = resolve_budget(args.budget) if args.oracle else None
    report = build_report(A, digest(args.file), args.seed, budget)
    out.write(render_report(A, report))
    if args.timing:
        out.write(f"elapsed: {time.perf_counter() - t0:.3f}s\n")
    if args.json:
        Path(args.json).write_text(dumps_report(report), encoding="utf-8")
    return 0


def _coeff_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_construct(args, out) -> int:
    try:
        F = field_from_spec(args.field)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    try:
        if args.family == "standard":
            if args.coeffs is None:
                raise UsageError("standard needs --coeffs")
            A = construct_standard(F, [F.parse(c) for c in _coeff_list(args.coeffs)])
        elif args.family == "chain":
            if args.j is None or args.k is None:
                raise UsageError("chain needs --j and --k")
            A = construct_chain(F, args.j, args.k)
        else:
            if args.dim is None or args.top is None:
                raise UsageError("cyclic needs --dim and --top")
            A = construct_cyclic(F, args.dim, [F.parse(c) for c in _coeff_list(args.top)])
    except (FieldError, ValueError) as exc:
        if isinstance(exc, (UsageError, LeibnizIdentityError)):
            raise
        raise UsageError(str(exc)) from None
    _write_algebra(A, args.output, out)
    return 0


def _write_algebra(A: LeibnizAlgebra, output: str, out):
    if output == "-":
        out.write(dumps_algebra(A))
    else:
        save_algebra(A, output)
        out.write(f"wrote {output}: dim {A.dim} over {A.field}\n")


def cmd_quotient(args, out) -> int:
    A = load_algebra(args.file)
    I = span_rref(A.field, parse_rows(A, args.ideal), A.dim)
    try:
        Q = quotient(A, I)
    except (NotClosedError, DimensionError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write_algebra(Q.algebra, args.output, out)
    return 0


def cmd_closure(args, out) -> int:
    A = load_algebra(args.file)
    rows = parse_rows(A, args.elements)
    S = ideal_closure(A, rows) if args.ideal else subalgebra_closure(A, rows)
    kind = "ideal" if args.ideal else "subalgebra"
    out.write(f"{kind} closure (dim {S.dim}): {A.format_subspace(S)}\n")
    for r in S.basis:
        out.write(",".join(A.field.format(a) for a in r) + "\n")
    return 0


def cmd_oracle(args, out) -> int:
    A = load_algebra(args.file)
    budget = resolve_budget(args.budget)
    fmt = A.format_subspace
    if args.query == "minimality":
        m = _minimality_data(A, budget)
        out.write(f"minimality: {m['status'].upper()} ({m['reason']})\n")
        out.write(f"subspaces enumerated: {m['subspaces']}, proper subalgebras: {m['proper_subalgebras']}\n")
        if m["witness"] is not None:
            out.write(f"witness: {_fmt_rows(A, m['witness'])}\n")
        for d in sorted(m["census"], key=int):
            c = m["census"][d]
            out.write(f"  dim {d}: {c['subalgebras']} subalgebras, {c['nilpotent']} nilpotent\n")
    elif args.query == "nilradical":
        out.write(f"nilradical: {fmt(oracle.bruteforce_nilradical(A, budget))}\n")
    elif args.query == "frattini":
        out.write(f"Frattini subalgebra: {fmt(oracle.frattini_subalgebra(A, budget))}\n")
        out.write(f"Frattini ideal: {fmt(oracle.frattini_ideal(A, budget))}\n")
    elif args.query == "core":
        if args.subalgebra is None:
            raise UsageError("oracle core needs --subalgebra ROWS")
        M = span_rref(A.field, parse_rows(A, args.subalgebra), A.dim)
        try:
            brute = oracle.bruteforce_largest_ideal(A, M, budget)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        fast = core_of(A, M)
        out.write(f"core (enumeration): {fmt(brute)}\n")
        out.write(f"core (fixed point): {fmt(fast)}\n")
        out.write(f"agree: {brute == fast}\n")
    else:
        ideals = oracle.minimal_ideals(A, budget)
        out.write(f"minimal ideals: {len(ideals)}\n")
        for I in ideals:
            out.write(f"  {fmt(I)}\n")
    return 0


def cmd_transplant(args, out) -> int:
    if not is_prime(args.to_gf):
        raise UsageError(f"{args.to_gf} is not prime")
    A = load_algebra(args.file)
    try:
        B = transplant(A, args.to_gf)
    except LeibnizIdentityError as exc:
        raise AlgebraFileError(f"reduction mod {args.to_gf} is not Leibniz: {exc}", args.file) from None
    except AlgebraFileError as exc:
        raise AlgebraFileError(str(exc).removeprefix("<input>: "), args.file) from None
    _write_algebra(B, args.output, out)
    return 0


# -- parser -------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leibniz-lab", description="Exact computations in finite-dimensional Leibniz algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check the Leibniz identity")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="flags, series, Leibniz kernel and structure certificate")
    s.add_argument("file")
    s.add_argument("--json", metavar="PATH")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--oracle", action="store_true", help="also run exhaustive minimality (GF(p) only)")
    s.add_argument("--budget", type=int)
    s.add_argument("--timing", action="store_true", help="print elapsed time (text output only)")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", help="write a member of a constructed family")
    s.add_argument("family", choices=("standard", "chain", "cyclic"))
    s.add_argument("--field", required=True)
    s.add_argument("--coeffs")
    s.add_argument("--j", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--top")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("quotient", help="quotient by an ideal given as rows")
    s.add_argument("file")
    s.add_argument("--ideal", required=True, metavar="ROWS")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("closure", help="subalgebra (or ideal) generated by rows")
    s.add_argument("file")
    s.add_argument("--elements", required=True, metavar="ROWS")
    s.add_argument("--ideal", action="store_true")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("oracle", help="exhaustive enumeration over GF(p)")
    s.add_argument("query", choices=("minimality", "nilradical", "frattini", "core", "minimal-ideals"))
    s.add_argument("file")
    s.add_argument("--budget", type=int)
    s.add_argument("--subalgebra", metavar="ROWS", help="subalgebra M for the core query")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("transplant", help="reduce Q or Q(i) structure constants mod p")
    s.add_argument("file")
    s.add_argument("--to-gf", type=int, required=True, dest="to_gf")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_transplant)
    return p


def run_command(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except AlgebraFileError as exc:
        err.write(f"invalid input: {exc}\n")
        return 1
    except (oracle.OracleFieldError, LeibnizIdentityError) as exc:
        err.write(f"invalid input: {exc}\n")
        return 1
    except oracle.BudgetExceeded as exc:
        err.write(f"budget refusal: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return 1


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
