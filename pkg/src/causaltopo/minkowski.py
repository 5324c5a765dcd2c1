"""Causal structure of finite integer event sets in flat spacetime, and the
causal site of unions of multi-diamonds built on it.

Events are integer tuples ``(t, x, ...)`` with c = 1; ``p ≤ q`` iff
``Δt ≥ 0`` and ``Δt² ≥ |Δx|²``, so null separation counts as causal.
Regions are handled as bitmasks over the event order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from ._util import bits, popcount, require_cap
from .causal_site import CausalSite, maximal_centered
from .errors import CapExceeded, DimensionMismatch, EmptyGenerator, SeparationFailure, UnknownEvent
from .order import Poset

DIMS = (2, 4)


def causal_leq(e1: Sequence[int], e2: Sequence[int], dim: int | None = None) -> bool:
    if len(e1) != len(e2) or (dim is not None and len(e1) != dim):
        raise DimensionMismatch(f"events {tuple(e1)} and {tuple(e2)} do not share dimension {dim}")
    dt = e2[0] - e1[0]
    if dt < 0:
        return False
    return dt * dt >= sum((b - a) ** 2 for a, b in zip(e1[1:], e2[1:]))


class EventSet:
    """Distinct integer events of a common dimension (2 for 1+1, 4 for 3+1)."""

    def __init__(self, events: Iterable[Sequence[int]], dim: int | None = None):
        evs = [tuple(int(c) for c in e) for e in events]
        if dim is None:
            dim = len(evs[0]) if evs else 2
        if dim not in DIMS:
            raise DimensionMismatch(f"dimension must be 2 (1+1) or 4 (3+1), got {dim}")
        for e in evs:
            if len(e) != dim:
                raise DimensionMismatch(f"event {e} has {len(e)} coordinates, expected {dim}")
        if len(set(evs)) != len(evs):
            raise ValueError("events must be pairwise distinct")
        self.dim = dim
        self.events = tuple(evs)
        self._index = {e: i for i, e in enumerate(self.events)}

    def __len__(self):
        return len(self.events)

    def __repr__(self):
        return f"EventSet(dim={self.dim}, {len(self)} events)"

    def index(self, e) -> int:
        try:
            return self._index[tuple(e)]
        except (KeyError, TypeError):
            raise UnknownEvent(e) from None

    def mask(self, evs: Iterable) -> int:
        m = 0
        for e in evs:
            m |= 1 << self.index(e)
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.events[i] for i in bits(mask))

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[i, j]``: event i is in the causal past of event j."""
        a = np.array(self.events, dtype=np.int64).reshape(len(self), self.dim)
        d = a[None, :, :] - a[:, None, :]  # d[i, j] = e_j - e_i
        dt = d[..., 0]
        out = (dt >= 0) & (dt * dt >= (d[..., 1:] ** 2).sum(axis=-1))
        out.setflags(write=False)
        return out

    @cached_property
    def future_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in self.leq)

    @cached_property
    def past_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << int(i) for i in np.flatnonzero(col)) for col in self.leq.T)

    def poset(self) -> Poset:
        return Poset(self.events, self.leq)


def _as_events(events) -> EventSet:
    return events if isinstance(events, EventSet) else EventSet(events)


def j_plus(events, p) -> frozenset:
    es = _as_events(events)
    return es.members(es.future_masks[es.index(p)])


def j_minus(events, p) -> frozenset:
    es = _as_events(events)
    return es.members(es.past_masks[es.index(p)])


def _diamond_mask(es: EventSet, fm: int, gm: int) -> int:
    out = (1 << len(es)) - 1
    for i in bits(fm):
        out &= es.future_masks[i]
    for i in bits(gm):
        out &= es.past_masks[i]
    return out


def multi_diamond(events, F: Iterable, G: Iterable) -> frozenset:
    """``F ◇ G``: events in the future of all of F and the past of all of G."""
    es = _as_events(events)
    F, G = list(F), list(G)
    if not F or not G:
        raise EmptyGenerator("multi-diamond generators F and G must be non-empty")
    return es.members(_diamond_mask(es, es.mask(F), es.mask(G)))


def _subsets_up_to(n: int, k: int | None) -> list[int]:
    k = n if k is None else min(k, n)
    return [sum(1 << i for i in c) for r in range(1, k + 1) for c in combinations(range(n), r)]


def _and_over_subsets(n: int, masks: Sequence[int]) -> np.ndarray:
    """``out[S]`` is the AND of ``masks[i]`` over ``i ∈ S`` (all ones for S = ∅)."""
    out = np.empty(1 << n, dtype=np.int64)
    out[0] = (1 << n) - 1
    for i in range(n):
        out[1 << i : 1 << (i + 1)] = out[: 1 << i] & masks[i]
    return out


@dataclass(frozen=True)
class RegionFamily:
    events: EventSet
    diamonds: tuple  # D as sorted masks
    regions: tuple  # P as sorted masks, ∅ first
    generators: dict  # diamond mask -> first (F, G) producing it
    caps: tuple

    def region(self, mask: int) -> frozenset:
        return self.events.members(mask)

    def region_sets(self) -> list[frozenset]:
        return [self.region(m) for m in self.regions]


def _region_sort(masks: Iterable[int]) -> list[int]:
    return sorted(set(masks), key=lambda m: (popcount(m), list(bits(m))))


def build_region_family(events, maxF: int | None = 1, maxG: int | None = 1,
                        maxUnion: int | None = None, *, cap: int | None = None) -> RegionFamily:
    """D: non-empty multi-diamonds with ``|F| ≤ maxF``, ``|G| ≤ maxG``.
    P: ∅ together with all unions of at most ``maxUnion`` members of D
    (``None`` means no bound).

    P must come out closed under intersection; otherwise the caps are too
    small to describe the family and CapExceeded is raised.
    """
    es = _as_events(events)
    for name, v in (("maxF", maxF), ("maxG", maxG), ("maxUnion", maxUnion)):
        if v is not None and v < 1:
            raise ValueError(f"{name} must be positive")
    n = len(es)
    limit = require_cap("regions", 0, cap)
    fut = _and_over_subsets(n, es.future_masks)
    past = _and_over_subsets(n, es.past_masks)
    generators: dict[int, tuple] = {}
    for gm in _subsets_up_to(n, maxG):
        for fm in _subsets_up_to(n, maxF):
            d = int(fut[fm] & past[gm])
            if d and d not in generators:
                generators[d] = (es.members(fm), es.members(gm))
    diamonds = _region_sort(generators)

    regions = {0} | set(diamonds)
    layer = set(diamonds)
    k = 1
    while layer and (maxUnion is None or k < maxUnion):
        nxt = {u | d for u in layer for d in diamonds} - regions
        regions |= nxt
        layer = nxt
        k += 1
        if len(regions) > limit:
            raise CapExceeded(f"region family exceeds cap regions={limit}")
    if len(regions) > limit:
        raise CapExceeded(f"region family exceeds cap regions={limit}")
    ordered = _region_sort(regions)

    arr = np.array(ordered, dtype=np.int64)
    if not np.isin(np.bitwise_and.outer(arr, arr), arr).all():
        raise CapExceeded(
            f"region family is not closed under intersection with maxUnion={maxUnion}; raise the caps"
        )
    return RegionFamily(es, tuple(diamonds), tuple(ordered), generators, (maxF, maxG, maxUnion))


def _strictly_below_all(es: EventSet) -> np.ndarray:
    """``out[S]``: mask of events strictly below every event of S."""
    lt = np.array(es.leq, copy=True)
    np.fill_diagonal(lt, False)
    strict_past = [sum(1 << int(i) for i in np.flatnonzero(lt[:, j])) for j in range(len(es))]
    return _and_over_subsets(len(es), strict_past)


def region_prec(A: Iterable, B: Iterable, events=None) -> bool:
    """``A ≺ B``: every event of A lies strictly in the causal past of every
    event of B (``a ≤ b`` and ``a ≠ b``).  Vacuous when A or B is empty."""
    A, B = [tuple(a) for a in A], [tuple(b) for b in B]
    return all(a != b and causal_leq(a, b) for a in A for b in B)


def build_causal_site(events, maxF: int | None = 1, maxG: int | None = 1,
                      maxUnion: int | None = None, *, cap: int | None = None,
                      family: RegionFamily | None = None) -> CausalSite:
    """The causal site ``(P, ⊆, ≺)`` of a region family.

    Joins are unions, so P must be closed under union; every cutting
    ``B ∩ A_⊥`` must land in P as well.  CapExceeded is raised when the caps
    leave either out.
    """
    fam = family or build_region_family(events, maxF, maxG, maxUnion, cap=cap)
    es = fam.events
    arr = np.array(fam.regions, dtype=np.int64)
    if not np.isin(np.bitwise_or.outer(arr, arr), arr).all():
        raise CapExceeded(f"region family is not closed under union with maxUnion={fam.caps[2]}; raise the caps")
    below = _strictly_below_all(es)[arr]
    leq = (arr[:, None] & ~arr[None, :]) == 0
    prec = (arr[:, None] & ~below[None, :]) == 0
    cuts = arr[:, None] & below[None, :]  # cuts[b, a] = B ∩ A_⊥
    if not np.isin(cuts, arr).all():
        raise CapExceeded("region family is not closed under cuttings; raise the caps")
    regions = [es.members(int(m)) for m in arr]
    return CausalSite(Poset(regions, leq, check=False), prec, check=False)


@dataclass(frozen=True)
class CuttingConstruction:
    O_A: frozenset
    M_A: frozenset
    A_bot: frozenset
    B_A: frozenset


def _single_cone(es: EventSet, dm: int) -> tuple[int, int, int]:
    """``(O_A, M_A, A_⊥)`` masks for a single multi-diamond ``A``."""
    lt = np.array(es.leq, copy=True)
    np.fill_diagonal(lt, False)
    o = 0
    for x in range(len(es)):
        if all(lt[x, y] for y in bits(dm)):
            o |= 1 << x
    m = 0
    for x in bits(o):
        if not any(lt[x, y] for y in bits(o)):
            m |= 1 << x
    abot = 0
    for x in bits(m):
        abot |= es.past_masks[x]
    return o, m, abot


def diamond_components(family: RegionFamily, a: int) -> list[int]:
    """The ⊆-maximal diamonds inside region ``a``; they cover it."""
    parts = [d for d in family.diamonds if d & ~a == 0]
    parts = [d for d in parts if not any(d != e and d & ~e == 0 for e in parts)]
    cover = 0
    for d in parts:
        cover |= d
    if cover != a:
        raise ValueError("region is not a union of multi-diamonds of the family")
    return parts


def cone_construction(family: RegionFamily, a: int) -> tuple[int, int, int]:
    """``(O_A, M_A, A_⊥)`` masks for a region given as a mask.

    A union takes the intersection of the component ``O`` and ``A_⊥`` sets
    and collects the component ``M`` sets; ``A = ∅`` gives all events.
    """
    es = family.events
    if a in family.generators:
        return _single_cone(es, a)
    full = (1 << len(es)) - 1
    o_all, m_all, abot_all = full, 0, full
    for d in diamond_components(family, a):
        o, m, abot = _single_cone(es, d)
        o_all &= o
        m_all |= m
        abot_all &= abot
    return o_all, m_all, abot_all


def formula_cutting(family: RegionFamily, B: Iterable, A: Iterable) -> CuttingConstruction:
    """Cutting of ``A`` by ``B`` from the cone construction.

    For a single multi-diamond ``A``: ``O_A`` is the set of events strictly
    below all of A, ``M_A`` its maximal events, ``A_⊥`` the union of the pasts
    of ``M_A`` and ``B_A = B ∩ A_⊥``.  For a union the cutting is the
    intersection of the component cuttings (B itself for A = ∅).
    """
    es = family.events
    a, b = es.mask(A), es.mask(B)
    o, m, abot = cone_construction(family, a)
    return CuttingConstruction(es.members(o), es.members(m), es.members(abot), es.members(b & abot))


@dataclass(frozen=True)
class PointCorrespondence:
    f: dict  # event -> maximal centered family
    g: dict  # maximal centered family -> event


def point_correspondence(events, site: CausalSite) -> PointCorrespondence:
    """``f(p)`` = regions containing p; ``g(Q)`` = the unique event common to Q."""
    es = _as_events(events)
    maximal = set(maximal_centered(site))
    f, g = {}, {}
    for p in es.events:
        fp = frozenset(C for C in site.regions if p in C)
        if fp not in maximal:
            raise SeparationFailure(f"regions through {p} do not form a maximal centered family")
        f[p] = fp
    for Q in maximal:
        common = set(es.events)
        for C in Q:
            common &= C
        if len(common) != 1:
            raise SeparationFailure(f"a maximal centered family meets {len(common)} events")
        g[Q] = next(iter(common))
    if len(f) != len(g) or any(g[f[p]] != p for p in f):
        raise SeparationFailure("regions do not separate events")
    return PointCorrespondence(f, g)


def random_events(n: int, rng: random.Random, dim: int = 2, spread: int = 2) -> EventSet:
    """``n`` distinct events with ``t ∈ [0, n]`` and spatial coordinates in
    ``[-spread, spread]``; small boxes keep many pairs causally related."""
    seen: set = set()
    while len(seen) < n:
        t = rng.randint(0, max(1, n))
        xs = tuple(rng.randint(-spread, spread) for _ in range(dim - 1))
        seen.add((t,) + xs)
    return EventSet(sorted(seen), dim)
