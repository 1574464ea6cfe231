#!/usr/bin/env python3
"""Print the extremal-projector coefficient table phi_n and the kappa_n
ladder coefficients, and check the defining recursion."""

import argparse

from ospz.projector import kappa, phi, verify_projector_recursion


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8, help="largest index to print")
    args = ap.parse_args()

    print("n   phi_n(H)                      kappa_n(H)")
    for n in range(args.n + 1):
        k = str(kappa(n)) if n >= 1 else "-"
        print(f"{n:<3} {str(phi(n)):<29} {k}")

    rows = verify_projector_recursion(args.n)
    bad = [r["n"] for r in rows if not r["zero"]]
    if bad:
        print(f"recursion FAILS at n = {bad}")
        return 1
    print(f"recursion (-1)^n phi_n(h+1) + phi_(n+1)(h+1) kappa_(n+1)(h) = 0 "
          f"holds for n <= {args.n}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
