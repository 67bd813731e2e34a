#!/usr/bin/env python3
"""Reproduce the headline class counts three ways.

For each supported group the closed-form value, the structured
enumeration and (within the configured bound) the brute-force orbit
classification are printed side by side; any disagreement is flagged.

Usage: python3 scripts/reproduce_counts.py [--max-p 7] [--oracle-bound 27]
"""

import argparse
import sys
import time

from paramedial.affine import CyclicGroup, ElemAbelian2Group
from paramedial.enum_cyclic import closed_form_count, enumerate_cyclic, gl2_closed_count, pq_total
from paramedial.enum_gl2 import enumerate_gl2
from paramedial.modring import Modulus, is_prime
from paramedial.oracle import classify_triples


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-p", type=int, default=7, help="largest prime to cover")
    parser.add_argument("--max-k", type=int, default=3, help="largest cyclic exponent")
    parser.add_argument("--oracle-bound", type=int, default=27,
                        help="run the orbit oracle for groups up to this order")
    args = parser.parse_args()

    primes = [p for p in range(2, args.max_p + 1) if is_prime(p)]
    failures = 0
    print(f"{'group':>14} {'closed':>8} {'enum':>8} {'oracle':>8}")
    for p in primes:
        for k in range(1, args.max_k + 1):
            try:
                m = Modulus(p, k)
            except ValueError:
                continue
            closed = closed_form_count(m)
            enum = enumerate_cyclic(m).count
            oracle = "-"
            if m.n <= args.oracle_bound:
                oracle = classify_triples(CyclicGroup(m), max_order=args.oracle_bound).count
            ok = enum == closed and (oracle == "-" or oracle == closed)
            failures += 0 if ok else 1
            flag = "" if ok else "   <-- MISMATCH"
            print(f"{'Z_' + str(p) + '^' + str(k):>14} {closed:>8} {enum:>8} {oracle:>8}{flag}")
    for p in primes:
        closed = gl2_closed_count(p)
        enum = enumerate_gl2(p).total
        oracle = "-"
        if p * p <= args.oracle_bound:
            oracle = classify_triples(ElemAbelian2Group(p)).count
        ok = enum == closed and (oracle == "-" or oracle == closed)
        failures += 0 if ok else 1
        flag = "" if ok else "   <-- MISMATCH"
        print(f"{'Z_' + str(p) + ' x Z_' + str(p):>14} {closed:>8} {enum:>8} {oracle:>8}{flag}")

    print()
    for p in primes:
        if p == 2:
            continue
        print(f"pq({p}) = {pq_total(p)} (= 2p-1),  pq({p * p}) = {pq_total(p * p)} (= 6p^2-p-1)")
    return 1 if failures else 0


if __name__ == "__main__":
    start = time.perf_counter()
    code = main()
    print(f"\ndone in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    sys.exit(code)
