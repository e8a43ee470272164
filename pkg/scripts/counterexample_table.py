#!/usr/bin/env python3
"""Print the degree table of the relative-vanishing failure family."""

import argparse
import sys

from toricbott.counterexample import minimal_failing_degree, scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=12)
    args = parser.parse_args()

    minimal = minimal_failing_degree()
    print("  d      e  deg(w2 N*)  genus  deg L  a.D  b.D  rr_bound  fails")
    for d in range(1, args.max_degree + 1):
        r = scenario(d)
        mark = "  <- minimal" if d == minimal else ""
        print(f"{r.d:3d} {r.e_invariant:6d} {r.deg_wedge2_conormal:11d} "
              f"{r.genus:6d} {r.deg_L:6d} {r.a_dot_D:4d} {r.b_dot_D:4d} "
              f"{r.rr_lower_bound:9d}  {str(r.bott_fails):5s}{mark}")
    print(f"\nminimal failing degree: {minimal}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
