"""Combinatorial model of smooth complete toric varieties.

A fan is stored as primitive integer rays plus maximal cones given by ray
index sets.  Only simplicial full-dimensional maximal cones are
representable; together with the unit-determinant check this restricts the
package to smooth varieties, which is exactly the intended scope.

Fans are immutable values: blowups and strata return new fans.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, Sequence

from .exactmath import QMatrix, det, invert, lp_feasible_strict


class FanError(ValueError):
    """Base class for fan-related failures."""


class MalformedInput(FanError):
    """Structurally invalid fan data (non-primitive rays, bad cone sizes...)."""


class NotComplete(FanError):
    """Operation requires a complete fan."""


class NotACone(FanError):
    """The given ray set does not span a cone of the fan."""


class UnknownFamily(FanError):
    """Unknown builtin fan family."""


@dataclass(frozen=True)
class Fan:
    """Rays plus maximal cones in the cocharacter lattice Z^dim."""

    dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )

    @property
    def n_rays(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class Wall:
    """A shared codimension-one face of two maximal cones.

    Indexes the torus-invariant curve C_tau; ``u_extra`` / ``u_extra_prime``
    are the ray indices completing tau inside sigma / sigma_prime.
    """

    tau: tuple
    sigma: int
    sigma_prime: int
    u_extra: int
    u_extra_prime: int


@dataclass(frozen=True)
class FanDiagnostics:
    smooth: bool
    complete: bool
    fan_axioms: bool
    reasons: tuple

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete and self.fan_axioms


def _check_structure(f: Fan) -> None:
    if f.dim < 0:
        raise MalformedInput("negative dimension")
    seen = set()
    for ray in f.rays:
        if len(ray) != f.dim:
            raise MalformedInput(f"ray {ray} has wrong length")
        g = 0
        for x in ray:
            g = gcd(g, abs(x))
        if g != 1:
            raise MalformedInput(f"ray {ray} is not primitive")
        if ray in seen:
            raise MalformedInput(f"duplicate ray {ray}")
        seen.add(ray)
    if not f.max_cones:
        raise MalformedInput("fan has no maximal cones")
    used = set()
    cone_sets = set()
    for cone in f.max_cones:
        if len(cone) != f.dim:
            raise MalformedInput(f"maximal cone {cone} has size {len(cone)}, expected {f.dim}")
        if len(set(cone)) != len(cone):
            raise MalformedInput(f"repeated ray index in cone {cone}")
        for i in cone:
            if not 0 <= i < f.n_rays:
                raise MalformedInput(f"ray index {i} out of range")
        if cone in cone_sets:
            raise MalformedInput(f"duplicate maximal cone {cone}")
        cone_sets.add(cone)
        used.update(cone)
    if used != set(range(f.n_rays)):
        raise MalformedInput("some ray is not used by any maximal cone")


def ray_matrix(f: Fan, cone: Sequence[int]) -> QMatrix:
    """Matrix whose columns are the primitive generators of the cone."""
    return QMatrix.from_rows([[f.rays[i][k] for i in cone] for k in range(f.dim)])


@lru_cache(maxsize=None)
def _dual_basis_rational(f: Fan, cone: tuple) -> tuple:
    """Rows m_i with <m_i, u_j> = delta_ij for the cone's rays."""
    return invert(ray_matrix(f, cone)).entries


@lru_cache(maxsize=None)
def _dual_basis(f: Fan, cone: tuple) -> tuple:
    """Integer dual basis of a unimodular cone."""
    entries = _dual_basis_rational(f, cone)
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    for row, orig in zip(rows, entries):
        for a, b in zip(row, orig):
            if a != b:
                raise FanError("cone ray matrix is not unimodular")
    return rows


def _facet_incidence(f: Fan) -> Dict[tuple, list]:
    facets: Dict[tuple, list] = {}
    for ci, cone in enumerate(f.max_cones):
        for drop in cone:
            facet = tuple(i for i in cone if i != drop)
            facets.setdefault(facet, []).append(ci)
    return facets


def _pairwise_face_check(f: Fan) -> bool:
    """LP check that every pairwise intersection is the common-ray face.

    For smooth simplicial cones sigma = {x : M_sigma x >= 0}; the
    intersection equals cone(sigma(1) & sigma'(1)) iff no point of the
    intersection has a strictly positive coordinate at a non-shared ray.
    """
    duals = [_dual_basis_rational(f, c) for c in f.max_cones]
    for a, b in itertools.combinations(range(len(f.max_cones)), 2):
        shared = set(f.max_cones[a]) & set(f.max_cones[b])
        for src, other in ((a, b), (b, a)):
            cone = f.max_cones[src]
            rows = []
            for m in duals[src]:
                rows.append([-x for x in m])
            for m in duals[other]:
                rows.append([-x for x in m])
            norm = [sum(col) for col in zip(*duals[src])]
            rows.append(norm)
            rhs = [0] * (2 * f.dim) + [1]
            strict = [False] * (2 * f.dim) + [False]
            for pos, ray in enumerate(cone):
                if ray in shared:
                    continue
                probe = rows + [[-x for x in duals[src][pos]]]
                probe_rhs = rhs + [0]
                probe_strict = strict + [True]
                witness = lp_feasible_strict(QMatrix.from_rows(probe), probe_rhs, probe_strict)
                if witness is not None:
                    return False
    return True


def _point_location_ok(f: Fan, samples: int = 8) -> bool:
    """Randomized redundant completeness check: random directions must land
    inside some maximal cone."""
    rng = random.Random(20_24)
    duals = [_dual_basis_rational(f, c) for c in f.max_cones]
    for _ in range(samples):
        x = [rng.randint(-9, 9) for _ in range(f.dim)]
        if all(v == 0 for v in x):
            x[0] = 1
        covered = any(
            all(sum(m[k] * x[k] for k in range(f.dim)) >= 0 for m in dual) for dual in duals
        )
        if not covered:
            return False
    return True


@lru_cache(maxsize=None)
def validate(f: Fan) -> FanDiagnostics:
    """Smoothness, completeness and fan-axiom diagnostics.

    Raises MalformedInput for structurally broken data; soft geometric
    failures come back as False flags with reasons.
    """
    _check_structure(f)
    reasons = []
    if f.dim == 0:
        complete = f.max_cones == ((),)
        if not complete:
            reasons.append("zero-dimensional fan must consist of the zero cone")
        return FanDiagnostics(True, complete, True, tuple(reasons))

    dets = [det(ray_matrix(f, c)) for c in f.max_cones]
    smooth = all(abs(d) == 1 for d in dets)
    if not smooth:
        bad = [c for c, d in zip(f.max_cones, dets) if abs(d) != 1]
        reasons.append(f"non-unimodular maximal cones: {bad}")

    simplicial = all(d != 0 for d in dets)
    fan_axioms = False
    if simplicial:
        fan_axioms = _pairwise_face_check(f)
        if not fan_axioms:
            reasons.append("two maximal cones overlap beyond their common ray face")
    else:
        reasons.append("degenerate maximal cone; fan axioms not checkable")

    complete = True
    facets = _facet_incidence(f)
    for facet, cones in facets.items():
        if len(cones) != 2:
            complete = False
            reasons.append(f"facet {facet} lies in {len(cones)} maximal cones")
            break
    if complete:
        adjacency = {i: set() for i in range(len(f.max_cones))}
        for cones in facets.values():
            adjacency[cones[0]].add(cones[1])
            adjacency[cones[1]].add(cones[0])
        seen = {0}
        stack = [0]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(f.max_cones):
            complete = False
            reasons.append("wall-adjacency graph is disconnected")
    if complete and simplicial and fan_axioms and not _point_location_ok(f):
        complete = False
        reasons.append("random direction not covered by any maximal cone")
    return FanDiagnostics(smooth, complete, fan_axioms, tuple(reasons))


def require_smooth_complete(f: Fan) -> None:
    diag = validate(f)
    if not diag.ok:
        raise FanError(f"fan is not smooth/complete/valid: {diag.reasons}")


def is_cone(f: Fan, tau: Sequence[int]) -> bool:
    """Faces of simplicial cones are the ray subsets of maximal cones."""
    tau_set = set(tau)
    if len(tau_set) != len(tuple(tau)):
        return False
    if not all(0 <= i < f.n_rays for i in tau_set):
        return False
    return any(tau_set <= set(c) for c in f.max_cones)


def walls(f: Fan) -> tuple:
    """One Wall per shared codimension-one face of a complete fan."""
    require_smooth_complete(f)
    facets = _facet_incidence(f)
    out = []
    for facet in sorted(facets):
        cones = facets[facet]
        if len(cones) != 2:
            raise NotComplete(f"facet {facet} lies in {len(cones)} maximal cones")
        a, b = sorted(cones)
        extra_a = next(i for i in f.max_cones[a] if i not in facet)
        extra_b = next(i for i in f.max_cones[b] if i not in facet)
        out.append(Wall(facet, a, b, extra_a, extra_b))
    return tuple(out)


def star_subdivision(f: Fan, tau: Sequence[int]) -> Fan:
    """Star subdivision at the cone spanned by tau (toric blowup).

    Adds the primitivized ray sum of tau and subdivides every maximal cone
    containing tau.  Smoothness and completeness are preserved for smooth
    input with |tau| >= 2; subdividing a single ray would only duplicate it.
    """
    if not validate(f).smooth:
        raise FanError("star subdivision requires a smooth fan")
    tau = tuple(sorted(tau))
    if not is_cone(f, tau):
        raise NotACone(f"{tau} does not span a cone of the fan")
    if len(tau) < 2:
        raise MalformedInput("star subdivision at a single ray duplicates the ray")
    new_ray = tuple(sum(f.rays[i][k] for i in tau) for k in range(f.dim))
    g = 0
    for x in new_ray:
        g = gcd(g, abs(x))
    new_ray = tuple(x // g for x in new_ray)
    if new_ray in f.rays:
        raise MalformedInput(f"subdivision ray {new_ray} already present")
    new_index = f.n_rays
    cones = []
    for cone in f.max_cones:
        if set(tau) <= set(cone):
            for drop in tau:
                cones.append(tuple(sorted([i for i in cone if i != drop] + [new_index])))
        else:
            cones.append(cone)
    return Fan(f.dim, f.rays + (new_ray,), tuple(cones))


@dataclass(frozen=True)
class StratumProjection:
    """Quotient fan of Star(tau) with the data mapping ambient rays onto it."""

    fan: Fan
    ray_map: tuple          # pairs (ambient ray index, stratum ray index)
    matrix: tuple           # projection N -> N/<tau> as integer rows
    base_cone: int          # maximal cone used to split the quotient

    def map_ray(self, i: int) -> int:
        for a, b in self.ray_map:
            if a == i:
                return b
        raise KeyError(i)

    @property
    def adjacent(self) -> tuple:
        return tuple(a for a, _ in self.ray_map)


@lru_cache(maxsize=None)
def stratum_fan(f: Fan, tau: tuple) -> StratumProjection:
    """Fan of the closed stratum V(tau) in the quotient lattice N/<tau>."""
    require_smooth_complete(f)
    tau = tuple(sorted(tau))
    if tau == ():
        ident = tuple(tuple(int(i == j) for j in range(f.dim)) for i in range(f.dim))
        return StratumProjection(f, tuple((i, i) for i in range(f.n_rays)), ident, 0)
    if not is_cone(f, tau):
        raise NotACone(f"{tau} does not span a cone of the fan")
    base = next(ci for ci, c in enumerate(f.max_cones) if set(tau) <= set(c))
    duals = _dual_basis(f, f.max_cones[base])
    proj_rows = tuple(
        duals[pos] for pos, ray in enumerate(f.max_cones[base]) if ray not in tau
    )

    def project(v):
        return tuple(sum(row[k] * v[k] for k in range(f.dim)) for row in proj_rows)

    star = [c for c in f.max_cones if set(tau) <= set(c)]
    adjacent = sorted({i for c in star for i in c if i not in tau})
    images = []
    for i in adjacent:
        img = project(f.rays[i])
        g = 0
        for x in img:
            g = gcd(g, abs(x))
        if g != 1:
            raise FanError(f"projected ray {img} is not primitive")
        if img in images:
            raise FanError("two adjacent rays project to the same stratum ray")
        images.append(img)
    index_of = {i: images.index(project(f.rays[i])) for i in adjacent}
    cones = tuple(
        tuple(sorted(index_of[i] for i in c if i not in tau)) for c in star
    )
    out = Fan(f.dim - len(tau), tuple(images), cones)
    require_smooth_complete(out)
    return StratumProjection(out, tuple(sorted(index_of.items())), proj_rows, base)


def projective_space(r: int) -> Fan:
    if r < 1:
        raise UnknownFamily("projective_space needs r >= 1")
    rays = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    rays.append(tuple(-1 for _ in range(r)))
    cones = [tuple(sorted(c)) for c in itertools.combinations(range(r + 1), r)]
    return Fan(r, tuple(rays), tuple(cones))


def hirzebruch(a: int) -> Fan:
    if a < 0:
        raise UnknownFamily("hirzebruch needs a >= 0")
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (0, 3))
    return Fan(2, rays, cones)


def product(f1: Fan, f2: Fan) -> Fan:
    zeros1 = (0,) * f1.dim
    zeros2 = (0,) * f2.dim
    rays = tuple(r + zeros2 for r in f1.rays) + tuple(zeros1 + r for r in f2.rays)
    shift = f1.n_rays
    cones = tuple(
        tuple(sorted(c1 + tuple(i + shift for i in c2)))
        for c1 in f1.max_cones
        for c2 in f2.max_cones
    )
    return Fan(f1.dim + f2.dim, rays, cones)


def builtin(name: str, **params) -> Fan:
    """Standard fan families by name (CLI entry point)."""
    if name == "projective_space":
        return projective_space(int(params["dim"]))
    if name == "hirzebruch":
        return hirzebruch(int(params["param"]))
    if name == "product":
        return product(params["f1"], params["f2"])
    raise UnknownFamily(f"unknown builtin family {name!r}")


def fan_to_dict(f: Fan) -> dict:
    return {
        "dim": f.dim,
        "rays": [list(r) for r in f.rays],
        "max_cones": [list(c) for c in f.max_cones],
    }


def fan_from_dict(data: dict) -> Fan:
    try:
        fan = Fan(int(data["dim"]),
                  tuple(tuple(int(x) for x in r) for r in data["rays"]),
                  tuple(tuple(int(i) for i in c) for c in data["max_cones"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad fan data: {exc}") from exc
    _check_structure(fan)
    return fan


def fan_hash(f: Fan) -> str:
    """Stable content hash of the fan (used in certificates)."""
    blob = json.dumps(fan_to_dict(f), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()
