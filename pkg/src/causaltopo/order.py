"""Finite posets stored as dense boolean matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from ._util import bits, canonical_sorted, require_cap
from .errors import CycleError, NoBottom, UnknownElement


def bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix product (OR of ANDs)."""
    if a.shape[0] > 48:
        # BLAS path; float32 counts are exact far beyond our caps
        return (a.astype(np.float32) @ b.astype(np.float32)) > 0
    return a @ b


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by Warshall's algorithm."""
    r = np.array(rel, dtype=bool, copy=True)
    n = r.shape[0]
    np.fill_diagonal(r, True)
    for k in range(n):
        r |= r[:, k : k + 1] & r[k : k + 1, :]
    return r


class Poset:
    """Immutable finite partial order.

    ``elements`` fixes the index order used by every matrix; ``leq[i, j]``
    is true iff ``elements[i] <= elements[j]``.
    """

    def __init__(self, elements: Iterable[Hashable], leq, *, check: bool = True):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate element identifiers")
        n = len(self.elements)
        m = np.array(leq, dtype=bool).reshape(n, n)
        if check:
            if not m.diagonal().all():
                raise ValueError("relation is not reflexive")
            both = m & m.T
            np.fill_diagonal(both, False)
            if both.any():
                i, j = map(int, np.argwhere(both)[0])
                raise CycleError((self.elements[i], self.elements[j]))
            if (bool_matmul(m, m) & ~m).any():
                raise ValueError("relation is not transitive")
        m.setflags(write=False)
        self.leq = m

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.covers())} covers)"

    def __eq__(self, other):
        if not isinstance(other, Poset) or set(self.elements) != set(other.elements):
            return False
        perm = [other._index[e] for e in self.elements]
        return bool((other.leq[np.ix_(perm, perm)] == self.leq).all())

    def __hash__(self):
        return hash(frozenset(self.relation_pairs()))

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def lt(self, x, y) -> bool:
        return x != y and self.le(x, y)

    def up_set(self, x) -> frozenset:
        row = self.leq[self.index(x)]
        return frozenset(self.elements[j] for j in np.flatnonzero(row))

    def down_set(self, x) -> frozenset:
        col = self.leq[:, self.index(x)]
        return frozenset(self.elements[j] for j in np.flatnonzero(col))

    def relation_pairs(self):
        return [(self.elements[i], self.elements[j]) for i, j in np.argwhere(self.leq)]

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        return lt & ~bool_matmul(lt, lt)

    def covers(self) -> list[tuple]:
        return [(self.elements[i], self.elements[j]) for i, j in np.argwhere(self.cover_matrix)]

    @cached_property
    def bottom_index(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if len(hits) else None

    @property
    def bottom(self):
        i = self.bottom_index
        return None if i is None else self.elements[i]

    def minimal(self) -> list:
        strict_below = self.leq.sum(axis=0) - 1
        return [self.elements[i] for i in np.flatnonzero(strict_below == 0)]

    @cached_property
    def down_counts(self) -> np.ndarray:
        return self.leq.sum(axis=0)

    @cached_property
    def join_table(self) -> np.ndarray:
        """``join_table[i, j]`` is the index of the least upper bound, or -1."""
        n = len(self)
        out = np.full((n, n), -1, dtype=np.int64)
        if n == 0:
            return out
        leq, rank = self.leq, self.down_counts
        for i in range(n):
            ub = leq[i][None, :] & leq  # ub[j, k]: k above both i and j
            score = np.where(ub, rank[None, :], n + 1)
            cand = score.argmin(axis=1)
            has = ub.any(axis=1)
            least = ~(ub & ~leq[cand]).any(axis=1)
            ok = has & least
            out[i, ok] = cand[ok]
        out.setflags(write=False)
        return out

    def join(self, x, y):
        k = self.join_table[self.index(x), self.index(y)]
        return None if k < 0 else self.elements[k]

    def relabel(self, mapping) -> "Poset":
        return Poset([mapping[e] for e in self.elements], self.leq, check=False)

    @cached_property
    def _up_masks(self) -> list[int]:
        return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in self.leq]

    @cached_property
    def _directed_with_sup(self) -> list[tuple[int, int]]:
        """All directed subsets (as bitmasks) that have a supremum, with its index."""
        up = self._up_masks
        out = []
        for d in range(1, 1 << len(self)):
            members = list(bits(d))
            if not all(up[i] & up[j] & d for i, j in combinations(members, 2)):
                continue
            ub = -1
            for i in members:
                ub &= up[i]
            sup = next((k for k in bits(ub) if ub & ~up[k] == 0), None)
            if sup is not None:
                out.append((d, sup))
        return out


@dataclass(frozen=True)
class OrderReport:
    has_bottom: bool
    bottom: Hashable | None
    has_binary_joins: bool
    join_witness_failure: tuple | None

    def __post_init__(self):
        assert (self.join_witness_failure is None) == self.has_binary_joins


def poset_from_cover(elements: Sequence[Hashable], covers: Iterable[tuple]) -> Poset:
    """Build a poset from a Hasse diagram; elements are put in canonical order."""
    given = list(elements)
    els = canonical_sorted(set(given))
    if len(els) != len(given):
        raise ValueError("duplicate element identifiers")
    idx = {e: i for i, e in enumerate(els)}
    rel = np.zeros((len(els), len(els)), dtype=bool)
    for a, b in covers:
        for e in (a, b):
            if e not in idx:
                raise UnknownElement(e)
        rel[idx[a], idx[b]] = True
    closed = transitive_closure(rel)
    both = closed & closed.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise CycleError((els[i], els[j]))
    return Poset(els, closed, check=False)


def poset_from_pairs(elements, pairs) -> Poset:
    """Same as :func:`poset_from_cover` but keeps the given element order."""
    els = list(elements)
    idx = {e: i for i, e in enumerate(els)}
    rel = np.zeros((len(els), len(els)), dtype=bool)
    for a, b in pairs:
        if a not in idx:
            raise UnknownElement(a)
        if b not in idx:
            raise UnknownElement(b)
        rel[idx[a], idx[b]] = True
    return Poset(els, transitive_closure(rel))


def order_report(p: Poset) -> OrderReport:
    b = p.bottom
    failure = None
    jt = p.join_table
    missing = np.argwhere(jt < 0)
    if len(missing):
        i, j = map(int, missing[0])
        failure = (p.elements[i], p.elements[j])
    return OrderReport(b is not None, b, failure is None, failure)


def atoms(p: Poset) -> frozenset:
    """Minimal elements of the carrier minus the bottom."""
    b = p.bottom_index
    if b is None:
        raise NoBottom("poset has no least element")
    return frozenset(
        p.elements[i] for i in range(len(p)) if i != b and p.down_counts[i] == 2
    )


def up_set(p: Poset, x) -> frozenset:
    return p.up_set(x)


def down_set(p: Poset, x) -> frozenset:
    return p.down_set(x)


def way_below(p: Poset, x, y, *, cap: int | None = None) -> bool:
    """Definition-level test of ``x << y`` by enumerating directed subsets.

    Exponential in ``len(p)``; the carrier is capped (default 12).
    """
    require_cap("way_below", len(p), cap, "carrier size")
    i, j = p.index(x), p.index(y)
    up_x = p._up_masks[i]
    for d, sup in p._directed_with_sup:
        if p.leq[j, sup] and not (up_x & d):
            return False
    return True


def way_below_set(p: Poset, y, *, cap: int | None = None) -> frozenset:
    return frozenset(t for t in p.elements if way_below(p, t, y, cap=cap))


def is_continuous(p: Poset, *, cap: int | None = None) -> bool:
    """Every way-below set is directed with supremum equal to its element."""
    for x in p.elements:
        w = [p.index(t) for t in way_below_set(p, x, cap=cap)]
        if not w:
            return False
        for a, b in combinations(w, 2):
            if not any(p.leq[a, c] and p.leq[b, c] for c in w):
                return False
        ub = np.logical_and.reduce([p.leq[a] for a in w])
        lub = [k for k in np.flatnonzero(ub) if not (ub & ~p.leq[k]).any()]
        if lub != [p.index(x)]:
            return False
    return True


def disjoint_sum(ps: Sequence[Poset]) -> Poset:
    """Disjoint union; element ``e`` of summand ``i`` becomes ``(i, e)``."""
    elements = [(i, e) for i, p in enumerate(ps) for e in p.elements]
    n = len(elements)
    leq = np.zeros((n, n), dtype=bool)
    off = 0
    for p in ps:
        k = len(p)
        leq[off : off + k, off : off + k] = p.leq
        off += k
    return Poset(elements, leq, check=False)


def chain(labels: Sequence[Hashable]) -> Poset:
    n = len(labels)
    return Poset(labels, np.triu(np.ones((n, n), dtype=bool)), check=False)


def antichain(labels: Sequence[Hashable]) -> Poset:
    return Poset(labels, np.eye(len(labels), dtype=bool), check=False)


def with_bottom(p: Poset, bottom: Hashable = "⊥") -> Poset:
    """Adjoin a new least element."""
    n = len(p)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[0, :] = True
    leq[1:, 1:] = p.leq
    return Poset((bottom,) + p.elements, leq, check=False)


def random_poset(n: int, rng: random.Random, density: float | None = None, labels=None) -> Poset:
    """Random poset: a random DAG on a shuffled order, transitively closed."""
    labels = list(labels) if labels is not None else [f"p{i}" for i in range(n)]
    density = rng.random() if density is None else density
    order = list(range(n))
    rng.shuffle(order)
    rel = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                rel[order[a], order[b]] = True
    return Poset(labels, transitive_closure(rel), check=False)


def all_posets(labels: Sequence[Hashable]):
    """Yield every partial order on the given labelled carrier.

    Grows orders one element at a time: the new element gets a down-set ``D``
    and a disjoint up-set ``U`` with every member of ``D`` below every member
    of ``U``.
    """
    labels = list(labels)
    n = len(labels)

    def extend(k, leq):
        if k == n:
            yield Poset(labels, leq, check=False)
            return
        old = leq[:k, :k]
        for dmask in range(1 << k):
            d = [i for i in range(k) if dmask >> i & 1]
            if any(old[j, i] and not dmask >> j & 1 for i in d for j in range(k)):
                continue
            for umask in range(1 << k):
                if umask & dmask:
                    continue
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

