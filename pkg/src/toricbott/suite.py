"""The standard verification suite: fans, sweeps and seeded samples.

The suite fans are the surfaces and threefolds every property in the test
battery runs over: P^1, P^2, P^3, P^1 x P^1, the Hirzebruch surfaces F_1 and
F_2, and P^2 blown up in one to three torus-fixed points.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .certifier import build_certificate, check_certificate
from .danilov import verify_vanishing
from .divisors import InvariantDivisor, canonical_divisor, hypothesis_feasible
from .fan import Fan, hirzebruch, product, projective_space, star_subdivision


def suite_fans() -> Dict[str, Fan]:
    p2 = projective_space(2)
    bl1 = star_subdivision(p2, (0, 1))
    bl2 = star_subdivision(bl1, (1, 2))
    bl3 = star_subdivision(bl2, (0, 2))
    p1 = projective_space(1)
    return {
        "p1": p1,
        "p2": p2,
        "p3": projective_space(3),
        "p1xp1": product(p1, p1),
        "f1": hirzebruch(1),
        "f2": hirzebruch(2),
        "bl1": bl1,
        "bl2": bl2,
        "bl3": bl3,
    }


def iter_thm11_instances(fan: Fan, coeffs: Tuple[int, ...] = (0, 1, 2)):
    """All (D', L) pairs of the sweep: every ray subset, every coefficient
    vector from the given range."""
    ray_indices = range(fan.n_rays)
    for size in range(fan.n_rays + 1):
        for dprime in itertools.combinations(ray_indices, size):
            for lc in itertools.product(coeffs, repeat=fan.n_rays):
                yield dprime, InvariantDivisor(lc)


@dataclass
class SweepOutcome:
    instances: int = 0
    feasible: int = 0
    verified: int = 0
    certified: int = 0
    agreed: int = 0
    failures: list = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return self.verified == self.feasible and not self.failures

    @property
    def all_certified(self) -> bool:
        return self.certified == self.feasible and self.agreed == self.feasible


def thm11_sweep(fan: Fan, certify: bool = True,
                coeffs: Tuple[int, ...] = (0, 1, 2)) -> SweepOutcome:
    """Run the vanishing check (and optionally the certificate round trip)
    on every hypothesis-feasible instance of the sweep."""
    out = SweepOutcome()
    for dprime, l in iter_thm11_instances(fan, coeffs):
        out.instances += 1
        witness = hypothesis_feasible(fan, l, dprime)
        if witness is None:
            continue
        out.feasible += 1
        report = verify_vanishing(fan, dprime, l, witness=witness)
        if report.passed:
            out.verified += 1
        else:
            out.failures.append(("verify", dprime, l.coeffs, report.violations))
        if certify:
            cert = build_certificate(fan, dprime, l)
            ok = check_certificate(fan, cert)
            if ok:
                out.certified += 1
            else:
                out.failures.append(("certificate", dprime, l.coeffs, None))
            if ok and report.passed:
                out.agreed += 1
            elif ok != report.passed:
                out.failures.append(("disagree", dprime, l.coeffs, None))
    return out


def iter_integral_divisors(fan: Fan, bound: int):
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=fan.n_rays):
        yield InvariantDivisor(coeffs)


def serre_duality_failures(fan: Fan, bound: int = 3) -> list:
    """h^q(O(D)) vs h^{r-q}(O(K-D)) over the full coefficient box."""
    from .danilov import line_bundle_cohomology

    k = canonical_divisor(fan)
    r = fan.dim
    failures = []
    for d in iter_integral_divisors(fan, bound):
        left = line_bundle_cohomology(fan, d)
        right = line_bundle_cohomology(fan, k - d)
        if any(left[q] != right[r - q] for q in range(r + 1)):
            failures.append((d.coeffs, left, right))
    return failures


def log_serre_duality_failures(fan: Fan, rng: random.Random, count: int,
                               bound: int = 2) -> list:
    """Sampled check of h^q(spec(p,D',L-D')) = h^{r-q}(spec(r-p,D',-L))."""
    from .danilov import log_spec_dims
    from .divisors import rayset_divisor

    r = fan.dim
    failures = []
    for _ in range(count):
        dprime = tuple(sorted(rng.sample(range(fan.n_rays),
                                         rng.randint(0, fan.n_rays))))
        l = InvariantDivisor(tuple(rng.randint(-bound, bound)
                                   for _ in range(fan.n_rays)))
        p = rng.randint(0, r)
        left = log_spec_dims(fan, p, dprime, l - rayset_divisor(fan, dprime))
        right = log_spec_dims(fan, r - p, dprime, -l)
        if any(left[q] != right[r - q] for q in range(r + 1)):
            failures.append((p, dprime, l.coeffs, left, right))
    return failures


def sample_euler_instances(fans: Dict[str, Fan], rng: random.Random, count: int,
                           bound: int = 2) -> list:
    """Seeded (fan, D', h, L) tuples for the additivity check."""
    names = sorted(fans)
    out = []
    while len(out) < count:
        name = rng.choice(names)
        fan = fans[name]
        h = rng.randrange(fan.n_rays)
        others = [i for i in range(fan.n_rays) if i != h]
        dprime = tuple(sorted(rng.sample(others, rng.randint(0, len(others)))))
        l = InvariantDivisor(tuple(rng.randint(-bound, bound)
                                   for _ in range(fan.n_rays)))
        out.append((name, fan, dprime, h, l))
    return out


def hodge_chart_subsets(fan: Fan) -> list:
    """All D' for which the complement-in-one-chart condition holds."""
    all_rays = set(range(fan.n_rays))
    subsets = set()
    for cone in fan.max_cones:
        outside = tuple(sorted(all_rays - set(cone)))
        for extra in itertools.chain.from_iterable(
            itertools.combinations(sorted(cone), k) for k in range(fan.dim + 1)
        ):
            subsets.add(tuple(sorted(set(outside) | set(extra))))
    return sorted(subsets)
