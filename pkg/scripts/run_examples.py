#!/usr/bin/env python3
"""Certify the shipped example algebras and print a short summary for each."""

import argparse
from pathlib import Path

from leibniz_lab import load_algebra, series, subalgebra_closure, verify_theorem
from leibniz_lab.classify import TheoremFailure
from leibniz_lab.fields import QQI, I
from leibniz_lab import oracle

ROOT = Path(__file__).resolve().parent.parent / "algebras"


def certify(path: Path, with_oracle: bool):
    A = load_algebra(path)
    print(f"== {path.name}: dim {A.dim} over {A.field}")
    try:
        cert = verify_theorem(A)
    except TheoremFailure as exc:
        print(f"   certificate FAILED at {exc.stage}: {exc.message}")
    else:
        fmt = A.format_subspace
        print(f"   N = {fmt(cert.N)}   L1 = {fmt(cert.L1)}   F = {fmt(cert.F)}")
        print(f"   p(λ) = {cert.p} [{cert.p_irreducible}], dichotomy {cert.dichotomy}")
    if with_oracle and A.field.characteristic:
        res = oracle.minimality_check(A)
        print(f"   oracle minimality: {res.status} over {res.subspaces} subspaces")


def counterexample(path: Path):
    C = load_algebra(path)
    if C.field != QQI:
        return
    z, z2, z3 = C["z"], C["z^2"], C["z^3"]
    M = subalgebra_closure(C, [I * z - z2, z2 + I * z3])
    s = series(C, within=M)
    print(f"   proper subalgebra {C.format_subspace(M)} has lower central dims {s.dims()}"
          f" (nilpotent: {s.terminates_at_zero})")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--oracle", action="store_true", help="also run exhaustive minimality over GF(p)")
    ap.add_argument("files", nargs="*", type=Path)
    args = ap.parse_args()
    for path in args.files or sorted(ROOT.glob("*.json")):
        certify(path, args.oracle)
        if path.stem == "counterexample":
            counterexample(path)


if __name__ == "__main__":
    main()
