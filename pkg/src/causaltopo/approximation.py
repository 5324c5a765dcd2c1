"""Finite approximation of frameworks: restrictions ``π_K``, the completion
σ, its maximal members μ, ultra-closed filters and the Wallman space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import bits, canonical_sorted, cap as resolve_cap, popcount, require_cap
from .errors import CapExceeded, NotT1
from .fintop import FiniteTopSpace, from_closed_subbase, is_T1
from .framework import Framework, dual


def restrict(f: Framework, K) -> Framework:
    """Induced subframework on ``K``: members ``U ∩ K``."""
    km = f.mask(K)
    places = [p for i, p in enumerate(f.places) if km >> i & 1]
    return Framework(places, [f.member(u & km) for u in f.masks])


def _maximal(masks) -> list[int]:
    ms = sorted(set(masks), key=popcount, reverse=True)
    out: list[int] = []
    for m in ms:
        if not any(m & ~o == 0 for o in out):
            out.append(m)
    return sorted(out)


def sigma_masks_literal(f: Framework, *, cap: int | None = None) -> list[int]:
    """Sweep every ``W ⊆ P`` and every ``K ⊆ P``, keeping W when each
    ``W ∩ K`` is some ``U ∩ K``.  Doubly exponential in spirit; the place
    count is capped (default 16)."""
    n = len(f.places)
    require_cap("sigma", n, cap, "place count")
    size = 1 << n
    members = np.array(f.masks, dtype=np.int64)
    alive = np.arange(size, dtype=np.int64)
    allowed = np.zeros(size, dtype=bool)  # scratch: traces U ∩ K for the current K
    # large K first: they prune hardest, so later K only see the survivors
    for K in range(size - 1, -1, -1):
        if not len(alive):
            break
        allowed[:] = False
        allowed[members & K] = True
        alive = alive[allowed[alive & K]]
    return sorted(int(w) for w in alive)


def sigma_masks(f: Framework, *, cap: int | None = None) -> list[int]:
    """σ of a framework on a finite place set.

    ``K = P`` is itself an admissible finite restriction, so σ collapses to
    π; the literal sweep is used whenever the place count is within the
    cap and serves as the oracle for the shortcut.
    """
    if len(f.places) <= resolve_cap("sigma", cap):
        return sigma_masks_literal(f, cap=cap)
    return sorted(f.masks)


def sigma(f: Framework, *, cap: int | None = None) -> frozenset:
    return frozenset(f.member(m) for m in sigma_masks(f, cap=cap))


def mu(f: Framework, *, cap: int | None = None) -> frozenset:
    """⊆-maximal members of σ."""
    return frozenset(f.member(m) for m in _maximal(sigma_masks(f, cap=cap)))


@dataclass(frozen=True)
class ApproximationState:
    base: Framework
    sigma: frozenset
    mu: frozenset

    @classmethod
    def of(cls, f: Framework, *, cap: int | None = None) -> "ApproximationState":
        s = sigma_masks(f, cap=cap)
        return cls(f, frozenset(f.member(m) for m in s), frozenset(f.member(m) for m in _maximal(s)))


def closed_framework(space: FiniteTopSpace) -> Framework:
    """Dual of ``(X, closed sets)``: places are closed sets, members ``C(x)``."""
    closed = sorted(space.closed)
    return dual(Framework.from_masks(space.points, closed))


def ultra_closed_filters(space: FiniteTopSpace, *, cap: int | None = None) -> list[frozenset]:
    """Maximal families of closed sets with the finite intersection property.

    On a finite carrier a family with the FIP has a common point x and so
    lies inside ``C(x)``; the answer is therefore the ⊆-maximal ``C(x)``,
    and each one is re-checked to be FIP and non-extendable.
    """
    require_cap("filters", space.n, cap, "point count")
    closed = sorted(space.closed)
    fixed = []
    for x in range(space.n):
        fixed.append(sum(1 << k for k, c in enumerate(closed) if c >> x & 1))
    out = []
    for fam in _maximal(fixed):
        sets = [closed[k] for k in bits(fam)]
        common = space.full
        for c in sets:
            common &= c
        # FIP of a finite family is a non-empty total intersection
        assert common
        assert all(fam >> k & 1 or not (common & c) for k, c in enumerate(closed))
        out.append(frozenset(space.members(c) for c in sets))
    return canonical_sorted(out)


def ultra_closed_filters_bruteforce(space: FiniteTopSpace, *, cap: int = 16) -> list[frozenset]:
    """Enumerate every family of closed sets; exponential in the lattice size."""
    closed = sorted(space.closed)
    if len(closed) > cap:
        raise CapExceeded(f"{len(closed)} closed sets exceed the brute-force cap {cap}")
    fips = []
    for fam in range(1, 1 << len(closed)):
        acc = space.full
        for k in bits(fam):
            acc &= closed[k]
        if acc:
            fips.append(fam)
    fip_set = set(fips)
    maximal = [f for f in fips if not any((f | 1 << k) in fip_set and not f >> k & 1 for k in range(len(closed)))]
    return canonical_sorted(frozenset(space.members(closed[k]) for k in bits(f)) for f in maximal)


@dataclass(frozen=True)
class WallmanResult:
    space: FiniteTopSpace
    embedding: dict  # point -> C(point)
    mu: frozenset


def wallman_space(space: FiniteTopSpace, *, cap: int | None = None) -> WallmanResult:
    """Space on μ of the closed-set framework with closed subbase
    ``μ(C) = {U ∈ μ : C ∈ U}``, and the embedding ``x ↦ C(x)``."""
    require_cap("wallman", space.n, cap, "point count")
    if not is_T1(space):
        raise NotT1("the Wallman construction needs a T1 space")
    f = closed_framework(space)
    m = mu(f)
    points = canonical_sorted(m)
    subbase = [[U for U in points if C in U] for C in f.places]
    Y = from_closed_subbase(points, subbase, cap=max(len(points), 1))
    embedding = {
        x: frozenset(space.members(c) for c in space.closed if c >> i & 1)
        for i, x in enumerate(space.points)
    }
    return WallmanResult(Y, embedding, m)
