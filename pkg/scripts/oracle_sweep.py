#!/usr/bin/env python3
"""Compare the straightening product against the projector-oracle product on
every ordered pair of basis monomials up to an exponent bound.

The straightening product multiplies in the presented algebra with the
derived rewrite rules; the oracle expands both factors into the double coset
space, multiplies with the projector series, and converts back.  Agreement
on every pair is an end-to-end consistency proof of the rule catalog at that
degree.
"""

import argparse
import time

from ospz.zalgebra import ZElement, all_monomials, z_multiply, z_oracle_multiply


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=1,
                    help="bound on the even-generator exponents (odd ones cap at 1)")
    ap.add_argument("--progress", type=int, default=0,
                    help="print a progress line every N left factors")
    args = ap.parse_args()

    monos = all_monomials(args.max_exp)
    total = len(monos) ** 2
    print(f"{len(monos)} basis monomials, {total} ordered pairs")
    t0 = time.time()
    bad = []
    for i, mu in enumerate(monos):
        u = ZElement.monomial(mu)
        for mv in monos:
            v = ZElement.monomial(mv)
            if z_multiply(u, v) != z_oracle_multiply(u, v):
                bad.append((mu, mv))
        if args.progress and (i + 1) % args.progress == 0:
            print(f"  {i + 1}/{len(monos)} rows, {time.time() - t0:.1f} s")
    elapsed = time.time() - t0
    for mu, mv in bad:
        print(f"MISMATCH {mu} * {mv}")
    print(f"{total} pairs, {len(bad)} mismatches, {elapsed:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
