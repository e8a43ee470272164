#!/usr/bin/env python3
"""Serre duality sweep: h^q(O(D)) = h^(r-q)(O(K-D)) over coefficient boxes,
plus a seeded sample of the log duality pairing."""

import argparse
import random
import sys
import time

from toricbott.suite import log_serre_duality_failures, serre_duality_failures, suite_fans


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fans", default="all")
    parser.add_argument("--bound", type=int, default=3)
    parser.add_argument("--log-samples", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    fans = suite_fans()
    names = sorted(fans) if args.fans == "all" else args.fans.split(",")
    rng = random.Random(args.seed)
    ok = True
    for name in names:
        fan = fans[name]
        start = time.time()
        bad = serre_duality_failures(fan, bound=args.bound)
        log_bad = log_serre_duality_failures(fan, rng, count=args.log_samples)
        ok = ok and not bad and not log_bad
        total = (2 * args.bound + 1) ** fan.n_rays
        print(f"{name:8s} {total:7d} bundles, failures={len(bad)}, "
              f"log-failures={len(log_bad)}, {time.time() - start:6.1f}s")
    print("duality holds everywhere" if ok else "FAILURES FOUND")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
