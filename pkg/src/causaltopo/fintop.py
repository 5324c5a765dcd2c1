"""Finite topological spaces materialised as closed-set lattices.

Subsets of the carrier are int bitmasks over point indices.  Every finite
space is Alexandrov, so the closed sets are exactly the down-sets of the
specialization preorder ``x <= y  iff  x in cl{y}``; the constructors use
that, and :func:`closed_sets_literal` keeps the definition-level route
(finite unions, then intersections) for cross-checking.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _iso
from ._util import bits, require_cap
from .errors import CoverNotOpen, OutOfCarrier, SizeCapExceeded
from .order import Poset, transitive_closure


class FiniteTopSpace:
    """Point list plus the full lattice of closed sets.

    ``subbase`` remembers the closed subbase the space was generated from,
    when there was one.
    """

    def __init__(self, points: Iterable[Hashable], closed: Iterable[int], *, subbase=None, check=True):
        self.points = tuple(points)
        self._index = {p: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise ValueError("duplicate points")
        self.n = len(self.points)
        self.full = (1 << self.n) - 1
        self.closed = frozenset(closed)
        self.subbase = None if subbase is None else tuple(subbase)
        if check:
            self._validate()

    def _validate(self):
        if 0 not in self.closed or self.full not in self.closed:
            raise ValueError("closed sets must contain the empty set and the carrier")
        if any(c & ~self.full for c in self.closed):
            raise OutOfCarrier("closed set outside the carrier")
        # closure under pairwise union/intersection via the point hulls:
        # a family containing all down-sets of its own specialization preorder
        # and nothing else is a finite topology
        if self.closed != frozenset(_down_sets(self.n, self._hulls_from_family())):
            raise ValueError("closed sets are not closed under finite unions and intersections")

    def _hulls_from_family(self):
        hull = []
        for y in range(self.n):
            h = self.full
            for c in self.closed:
                if c >> y & 1:
                    h &= c
            hull.append(h)
        return hull

    def __repr__(self):
        return f"FiniteTopSpace({self.n} points, {len(self.closed)} closed sets)"

    def __eq__(self, other):
        if not isinstance(other, FiniteTopSpace) or set(self.points) != set(other.points):
            return False
        if self.points == other.points:
            return self.closed == other.closed
        return self.closed_point_sets() == other.closed_point_sets()

    def __hash__(self):
        return hash(self.closed_point_sets())

    def index(self, p) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise OutOfCarrier(f"{p!r} is not a point of the space") from None

    def mask(self, pts: Iterable[Hashable]) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.index(p)
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in bits(mask))

    @cached_property
    def opens(self) -> frozenset:
        return frozenset(self.full ^ c for c in self.closed)

    def closed_point_sets(self) -> frozenset:
        return frozenset(self.members(c) for c in self.closed)

    def open_point_sets(self) -> frozenset:
        return frozenset(self.members(o) for o in self.opens)

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        """``point_closures[y]`` is the mask of cl{y}."""
        return tuple(self._hulls_from_family())

    @cached_property
    def open_hulls(self) -> tuple[int, ...]:
        """Smallest open set containing each point."""
        hull = []
        for x in range(self.n):
            h = self.full
            for o in self.opens:
                if o >> x & 1:
                    h &= o
            hull.append(h)
        return tuple(hull)

    def closure(self, mask: int) -> int:
        out = 0
        for y in bits(mask):
            out |= self.point_closures[y]
        return out

    def interior(self, mask: int) -> int:
        return self.full ^ self.closure(self.full ^ mask)

    def is_closed(self, mask: int) -> bool:
        return mask in self.closed

    def is_open(self, mask: int) -> bool:
        return (self.full ^ mask) in self.closed

    def relabel(self, mapping) -> "FiniteTopSpace":
        return FiniteTopSpace([mapping[p] for p in self.points], self.closed, check=False)


def _down_sets(n: int, hulls: Sequence[int]) -> list[int]:
    """All masks ``m`` with ``hulls[y] ⊆ m`` for every ``y in m``."""
    if n == 0:
        return [0]
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for y, h in enumerate(hulls):
        inside = (masks >> y) & 1 == 1
        ok &= ~inside | ((masks & h) == h)
    return [int(m) for m in masks[ok]]


def _subbase_masks(points, subbase) -> tuple[list, list[int]]:
    pts = list(points)
    idx = {p: i for i, p in enumerate(pts)}
    if len(idx) != len(pts):
        raise ValueError("duplicate points")
    masks = []
    for s in subbase:
        m = 0
        for p in s:
            if p not in idx:
                raise OutOfCarrier(f"subbase member mentions {p!r}, not a point")
            m |= 1 << idx[p]
        masks.append(m)
    return pts, masks


def from_closed_subbase(points: Sequence[Hashable], subbase: Iterable[Iterable[Hashable]], *, cap: int | None = None) -> FiniteTopSpace:
    """Topology whose closed sets are generated by ``subbase``.

    The smallest closed set containing ``y`` is the intersection of the
    subbase members containing ``y``; the closed sets are the down-sets of the
    resulting preorder.
    """
    pts, masks = _subbase_masks(points, subbase)
    n = len(pts)
    require_cap("space_points", n, cap, "point count")
    full = (1 << n) - 1
    hulls = []
    for y in range(n):
        h = full
        for m in masks:
            if m >> y & 1:
                h &= m
        hulls.append(h)
    return FiniteTopSpace(pts, _down_sets(n, hulls), subbase=masks, check=False)


def from_open_subbase(points, subbase, *, cap=None) -> FiniteTopSpace:
    pts = list(points)
    comp = [[p for p in pts if p not in set(s)] for s in subbase]
    for s in subbase:
        for p in s:
            if p not in pts:
                raise OutOfCarrier(f"subbase member mentions {p!r}, not a point")
    return from_closed_subbase(pts, comp, cap=cap)


def closed_sets_literal(n: int, subbase_masks: Iterable[int]) -> frozenset:
    """All intersections of finite unions of subbase members, plus ∅ and X.

    Breadth-first closure; quadratic in the lattice size, meant as an oracle
    on small carriers.
    """
    full = (1 << n) - 1
    gens = set(subbase_masks)
    unions = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = s | g
                if t not in unions:
                    unions.add(t)
                    nxt.append(t)
        frontier = nxt
    result = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for g in unions:
                t = s & g
                if t not in result:
                    result.add(t)
                    nxt.append(t)
        frontier = nxt
    return frozenset(result | {0})


def discrete(points: Sequence[Hashable]) -> FiniteTopSpace:
    n = len(points)
    return FiniteTopSpace(points, range(1 << n), check=False)


def indiscrete(points: Sequence[Hashable]) -> FiniteTopSpace:
    n = len(points)
    return FiniteTopSpace(points, {0, (1 << n) - 1}, check=False)


def sierpinski(closed_point="1", open_point="2") -> FiniteTopSpace:
    """Two points; ``closed_point`` is closed, ``open_point`` is open."""
    return from_closed_subbase([closed_point, open_point], [[closed_point]])


def from_preorder(points: Sequence[Hashable], below: np.ndarray) -> FiniteTopSpace:
    """Space whose specialization preorder is ``below`` (``below[x, y]``: x ≤ y)."""
    n = len(points)
    b = np.asarray(below, dtype=bool)
    hulls = [sum(1 << int(x) for x in np.flatnonzero(b[:, y])) for y in range(n)]
    return FiniteTopSpace(points, _down_sets(n, hulls), check=False)


def specialization_preorder(space: FiniteTopSpace) -> np.ndarray:
    """``m[x, y]`` iff ``x ∈ cl{y}``."""
    n = space.n
    m = np.zeros((n, n), dtype=bool)
    for y, h in enumerate(space.point_closures):
        for x in bits(h):
            m[x, y] = True
    return m


def specialization(space: FiniteTopSpace) -> Poset:
    """Specialization order as a poset; only defined for T0 spaces."""
    if not is_T0(space):
        raise ValueError("space is not T0; use specialization_preorder")
    return Poset(space.points, specialization_preorder(space), check=False)


def saturated_sets(space: FiniteTopSpace) -> frozenset:
    """Intersections of open sets, i.e. up-sets of the specialization preorder."""
    m = specialization_preorder(space)
    ups = [sum(1 << int(y) for y in np.flatnonzero(m[x])) for x in range(space.n)]
    return frozenset(_down_sets(space.n, ups))


def is_compact_subset(space: FiniteTopSpace, mask: int) -> bool:
    # a finite set meets only finitely many opens: every cover is its own finite subcover
    return mask & ~space.full == 0


def degroot_dual(space: FiniteTopSpace) -> FiniteTopSpace:
    """Co-compact dual: closed sets generated by the compact saturated sets."""
    base = [s for s in saturated_sets(space) if is_compact_subset(space, s)]
    pts = space.points
    return from_closed_subbase(pts, [space.members(s) for s in base], cap=max(space.n, 1))


@dataclass(frozen=True)
class DualSequence:
    """``topologies[k]`` is the k-th iterated de Groot dual; the last entry
    repeats ``topologies[cycle_start]``."""

    topologies: tuple
    cycle_start: int

    @property
    def distinct(self) -> int:
        return len(self.topologies) - 1

    @property
    def period(self) -> int:
        return self.distinct - self.cycle_start


class DualSequenceError(AssertionError):
    pass


def dual_sequence(space: FiniteTopSpace, max_distinct: int = 4) -> DualSequence:
    seq = [space]
    while True:
        nxt = degroot_dual(seq[-1])
        for k, t in enumerate(seq):
            if t.closed == nxt.closed:
                seq.append(nxt)
                if len(seq) - 1 > max_distinct:
                    raise DualSequenceError(f"{len(seq) - 1} distinct topologies")
                return DualSequence(tuple(seq), k)
        seq.append(nxt)
        if len(seq) > max_distinct:
            raise DualSequenceError(f"more than {max_distinct} distinct topologies")


def is_T0(space: FiniteTopSpace) -> bool:
    return len(set(space.point_closures)) == space.n


def is_T1(space: FiniteTopSpace) -> bool:
    return all(h == 1 << y for y, h in enumerate(space.point_closures))


def is_compact(space: FiniteTopSpace, cover: Iterable[Iterable[Hashable]] | None = None) -> bool:
    """True iff the given open cover (or every open cover) has a finite subcover.

    Picks one member per point, so the subcover has at most ``n`` members.
    """
    if cover is None:
        return True
    fam = [space.mask(c) for c in cover]
    for m in fam:
        if not space.is_open(m):
            raise CoverNotOpen(f"{sorted(space.members(m))!r} is not open")
    covered = 0
    for m in fam:
        covered |= m
    if covered != space.full:
        raise ValueError("family does not cover the space")
    sub = []
    for y in range(space.n):
        sub.append(next(m for m in fam if m >> y & 1))
    acc = 0
    for m in set(sub):
        acc |= m
    return acc == space.full


def has_fip(family: Iterable[int], universe: int | None = None) -> bool:
    """Finite intersection property for a finite family of masks.

    For a finite family the family itself is one of its finite subfamilies
    and intersection is antitone, so FIP reduces to a non-empty total
    intersection.  The empty family has FIP iff ``universe`` is non-empty.
    """
    acc = -1 if universe is None else universe
    for m in family:
        acc &= m
    return acc != 0


def is_superconnected(space: FiniteTopSpace) -> bool:
    """No two disjoint non-empty opens.

    Every non-empty open contains some point hull, so pairs of hulls decide it.
    """
    h = space.open_hulls
    return all(h[x] & h[y] for x in range(space.n) for y in range(x + 1, space.n))


def is_homeomorphic(a: FiniteTopSpace, b: FiniteTopSpace, *, cap: int | None = None):
    """Return ``(verdict, witness)``; the witness maps points of ``a`` to ``b``."""
    require_cap("homeomorphism", max(a.n, b.n), cap, "point count", SizeCapExceeded)
    if a.n != b.n or len(a.closed) != len(b.closed):
        return False, None
    phi = _iso.find_isomorphism(a.n, a.opens, b.n, b.opens)
    if phi is None:
        return False, None
    return True, {a.points[i]: b.points[phi[i]] for i in range(a.n)}


def all_preorders(n: int):
    """Yield every preorder on ``range(n)`` as a boolean matrix."""

    def extend(k, rel):
        if k == n:
            yield rel
            return
        old = rel[:k, :k]
        for dmask in range(1 << k):
            d = [i for i in range(k) if dmask >> i & 1]
            if any(old[j, i] and not dmask >> j & 1 for i in d for j in range(k)):
                continue
            for umask in range(1 << k):
                u = [i for i in range(k) if umask >> i & 1]
                if any(old[i, j] and not umask >> j & 1 for i in u for j in range(k)):
                    continue
                if any(not old[a, b] for a in d for b in u):
                    continue
                new = np.zeros((n, n), dtype=bool)
                new[:k, :k] = old
                new[k, k] = True
                new[d, k] = True
                new[k, u] = True
                yield from extend(k + 1, new)

    yield from extend(0, np.zeros((n, n), dtype=bool))


def all_topologies(points: Sequence[Hashable]):
    """Every topology on the labelled carrier (one per preorder)."""
    for rel in all_preorders(len(points)):
        yield from_preorder(points, rel)


def all_topologies_bruteforce(n: int):
    """Definition-level enumeration: families containing ∅, X, closed under ∪ and ∩."""
    full = (1 << n) - 1
    inner = [m for m in range(1, full)] if n else []
    for pick in range(1 << len(inner)):
        fam = {0, full} | {inner[i] for i in bits(pick)}
        if all((a | b) in fam and (a & b) in fam for a in fam for b in fam):
            yield frozenset(fam)


def random_space(n: int, rng: random.Random, labels=None) -> FiniteTopSpace:
    labels = list(labels) if labels is not None else [f"x{i}" for i in range(n)]
    rel = np.zeros((n, n), dtype=bool)
    density = rng.random()
    for a in range(n):
        for b in range(n):
            if a != b and rng.random() < density * 0.5:
                rel[a, b] = True
    return from_preorder(labels, transitive_closure(rel))

