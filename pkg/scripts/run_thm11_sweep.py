#!/usr/bin/env python3
"""Sweep the vanishing theorem over the standard fan suite.

For every fan, every ray subset D' and every integral L with coefficients
in {0,1,2}, the hypothesis LP is solved; on each feasible instance the
direct engine and the certificate round trip both run.  Any failure line
here would falsify the theorem or expose an engine bug.
"""

import argparse
import sys
import time

from toricbott.suite import suite_fans, thm11_sweep


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fans", default="all", help="comma list or 'all'")
    parser.add_argument("--no-certify", action="store_true")
    parser.add_argument("--coeffs", default="0,1,2",
                        help="coefficient range for L")
    args = parser.parse_args()

    fans = suite_fans()
    names = sorted(fans) if args.fans == "all" else args.fans.split(",")
    coeffs = tuple(int(x) for x in args.coeffs.split(","))
    print(f"{'fan':8s} {'instances':>9s} {'feasible':>8s} {'verified':>8s} "
          f"{'certified':>9s} {'time':>7s}")
    grand_ok = True
    for name in names:
        fan = fans[name]
        start = time.time()
        out = thm11_sweep(fan, certify=not args.no_certify, coeffs=coeffs)
        ok = out.all_verified and (args.no_certify or out.all_certified)
        grand_ok = grand_ok and ok
        print(f"{name:8s} {out.instances:9d} {out.feasible:8d} {out.verified:8d} "
              f"{out.certified:9d} {time.time() - start:6.1f}s"
              + ("" if ok else "  FAILURES"))
        for failure in out.failures:
            print(f"    {failure}")
    print("all instances verified" if grand_ok else "FAILURES FOUND")
    return 0 if grand_ok else 1


if __name__ == "__main__":
    sys.exit(main())
