#!/usr/bin/env python3
"""Run the fast structure routines against exhaustive enumeration on the GF(p) corpus."""

import argparse
import sys
import time

from leibniz_lab.corpus import MAX_DIM, PRIMES, corpus_algebras, cross_validate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=list(PRIMES))
    ap.add_argument("--max-dim", type=int, default=MAX_DIM)
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = cross_validate(corpus_algebras(tuple(args.primes), args.max_dim))
    print(f"{report.algebras} corpus algebras, {report.derived} subalgebras and quotients")
    for name, count in sorted(report.checks.items()):
        print(f"  {name}: {count} checks")
    print(f"disagreements: {len(report.disagreements)}  ({time.perf_counter() - t0:.1f}s)")
    for d in report.disagreements[:20]:
        print(f"  {d}")
    sys.exit(1 if report.disagreements else 0)


if __name__ == "__main__":
    main()
