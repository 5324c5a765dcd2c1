"""Causal sites ``(S, ⊑, ≺)``: axiom checking, constructions, cuttings,
centered families and the weakly causal topology."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

import numpy as np

from ._util import bits, canonical_key, label, require_cap
from .errors import AxiomError, CapExceeded, MissingJoins, NoBottom
from .fintop import FiniteTopSpace, from_closed_subbase
from .order import Poset, bool_matmul, order_report

AXIOM_IDS = ("order", "joins", "strict-order", "i", "ii", "iii", "iv")


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def to_dict(self):
        return {"axiom": self.axiom, "witness": [label(w) for w in self.witness]}


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_dict(self):
        return {"passed": self.passed, "violations": [v.to_dict() for v in self.violations]}


def causal_matrix(inclusion: Poset, causal) -> np.ndarray:
    """Normalise ``causal`` (pairs of elements, or a matrix) to a bool matrix."""
    n = len(inclusion)
    if isinstance(causal, np.ndarray):
        m = np.array(causal, dtype=bool)
        if m.shape != (n, n):
            raise ValueError(f"causal matrix has shape {m.shape}, expected {(n, n)}")
        return m
    m = np.zeros((n, n), dtype=bool)
    for a, b in causal:
        m[inclusion.index(a), inclusion.index(b)] = True
    return m


def _cutting_column(leq: np.ndarray, prec: np.ndarray, rank: np.ndarray, a: int) -> np.ndarray:
    """For fixed ``a``: index of the greatest ``c`` with ``c ≺ a, c ⊑ b`` per ``b``, or -1."""
    cand = prec[:, a][None, :] & leq.T  # cand[b, c]
    score = np.where(cand, rank[None, :], -1)
    g = score.argmax(axis=1)
    ok = cand.any(axis=1) & ~(cand & ~leq[:, g].T).any(axis=1)
    return np.where(ok, g, -1)


def check_axioms(inclusion: Poset, causal) -> AxiomReport:
    """Check every causal-site axiom; report each failed one with the first
    witness in index order.

    Witness conventions: ``i``/``ii``/``iii`` report ``(a, b, c)`` named as in
    the axioms; ``iv`` reports ``(a, b)`` whose cutting does not exist;
    ``strict-order`` reports ``(x,)`` or ``(x, y, z)``; ``order`` reports two
    distinct minimal elements (no least element); ``joins`` reports a pair
    without a least upper bound.
    """
    els = inclusion.elements
    n = len(els)
    L = inclusion.leq
    P = causal_matrix(inclusion, causal)
    out: list[Violation] = []

    b = inclusion.bottom_index
    if b is None and n:
        out.append(Violation("order", tuple(inclusion.minimal()[:2])))
    jt = inclusion.join_table
    missing = np.argwhere(jt < 0)
    if len(missing):
        i, j = map(int, missing[0])
        out.append(Violation("joins", (els[i], els[j])))

    nb = [i for i in range(n) if i != b]
    Q = P[np.ix_(nb, nb)]
    refl = np.flatnonzero(Q.diagonal())
    if len(refl):
        out.append(Violation("strict-order", (els[nb[refl[0]]],)))
    elif (bool_matmul(Q, Q) & ~Q).any():
        for x in range(len(nb)):
            sub = Q[x][:, None] & Q & ~Q[x][None, :]  # sub[y, z]
            if sub.any():
                y, z = map(int, np.argwhere(sub)[0])
                out.append(Violation("strict-order", (els[nb[x]], els[nb[y]], els[nb[z]])))
                break

    # (i) b ⊑ a and a ≺ c  ⇒  b ≺ c
    if (bool_matmul(L, P) & ~P).any():
        for a in range(n):
            sub = L[:, a][:, None] & P[a][None, :] & ~P  # sub[b, c]
            if sub.any():
                bb, c = map(int, np.argwhere(sub)[0])
                out.append(Violation("i", (els[a], els[bb], els[c])))
                break

    # (ii) b ⊑ a and c ≺ a  ⇒  c ≺ b
    if (bool_matmul(P, L.T) & ~P).any():
        for a in range(n):
            sub = L[:, a][:, None] & P[:, a][None, :] & ~P.T  # sub[b, c]
            if sub.any():
                bb, c = map(int, np.argwhere(sub)[0])
                out.append(Violation("ii", (els[a], els[bb], els[c])))
                break

    # (iii) a ≺ c and b ≺ c  ⇒  a ⊔ b ≺ c
    for a in range(n):
        j = jt[a]
        has = j >= 0
        sub = P[a][None, :] & P & ~P[np.where(has, j, 0)] & has[:, None]  # sub[b, c]
        if sub.any():
            bb, c = map(int, np.argwhere(sub)[0])
            out.append(Violation("iii", (els[a], els[bb], els[c])))
            break

    # (iv) {c : c ≺ a, c ⊑ b} has a ⊑-greatest element
    rank = inclusion.down_counts
    for a in range(n):
        col = _cutting_column(L, P, rank, a)
        bad = np.flatnonzero(col < 0)
        if len(bad):
            out.append(Violation("iv", (els[a], els[int(bad[0])])))
            break

    return AxiomReport(tuple(out))


def recheck(inclusion: Poset, causal, v: Violation) -> bool:
    """True iff the witness of ``v`` really falsifies axiom ``v.axiom``."""
    P = causal_matrix(inclusion, causal)
    ix = [inclusion.index(w) for w in v.witness]
    L = inclusion.leq
    bot = inclusion.bottom_index
    if v.axiom == "order":
        x, y = ix
        return x != y and L.sum(axis=0)[x] == 1 and L.sum(axis=0)[y] == 1
    if v.axiom == "joins":
        x, y = ix
        ub = L[x] & L[y]
        return not any(ub[k] and not (ub & ~L[k]).any() for k in range(len(L)))
    if v.axiom == "strict-order":
        if len(ix) == 1:
            return ix[0] != bot and bool(P[ix[0], ix[0]])
        x, y, z = ix
        return bot not in ix and P[x, y] and P[y, z] and not P[x, z]
    if v.axiom == "i":
        a, b, c = ix
        return L[b, a] and P[a, c] and not P[b, c]
    if v.axiom == "ii":
        a, b, c = ix
        return L[b, a] and P[c, a] and not P[c, b]
    if v.axiom == "iii":
        a, b, c = ix
        j = inclusion.join_table[a, b]
        return j >= 0 and P[a, c] and P[b, c] and not P[j, c]
    if v.axiom == "iv":
        a, b = ix
        cand = [c for c in range(len(L)) if P[c, a] and L[c, b]]
        return not any(all(L[c, g] for c in cand) for g in cand)
    raise ValueError(v.axiom)


class CausalSite:
    """Regions with inclusion ``⊑`` (a poset with ⊥ and binary joins) and a
    causal relation ``≺`` stored as a matrix aligned with the poset.

    Pairs involving ⊥ are stored; the strict-order requirement applies to the
    non-bottom regions only.  Construction runs :func:`check_axioms` unless
    ``check=False`` (used by constructions that are valid by theorem and are
    verified in the test suite).
    """

    def __init__(self, inclusion: Poset, causal, *, check: bool = True):
        self.inclusion = inclusion
        prec = causal_matrix(inclusion, causal)
        prec.setflags(write=False)
        self.prec = prec
        if check:
            report = check_axioms(inclusion, prec)
            if not report.passed:
                raise AxiomError(report)

    def __len__(self):
        return len(self.inclusion)

    def __repr__(self):
        return f"CausalSite({len(self)} regions, {int(self.prec.sum())} causal pairs)"

    @property
    def regions(self) -> tuple:
        return self.inclusion.elements

    @property
    def bottom(self):
        return self.inclusion.bottom

    def index(self, x) -> int:
        return self.inclusion.index(x)

    def precedes(self, a, b) -> bool:
        return bool(self.prec[self.index(a), self.index(b)])

    def included(self, a, b) -> bool:
        return self.inclusion.le(a, b)

    def join(self, a, b):
        return self.inclusion.join(a, b)

    def causal_pairs(self) -> list[tuple]:
        r = self.regions
        return [(r[i], r[j]) for i, j in np.argwhere(self.prec)]

    def report(self) -> AxiomReport:
        return check_axioms(self.inclusion, self.prec)


def weakest_causal(inclusion: Poset) -> CausalSite:
    """⊥ precedes everything (itself included); nothing else is related."""
    rep = order_report(inclusion)
    if not rep.has_bottom:
        raise NoBottom("inclusion order has no least element")
    if not rep.has_binary_joins:
        raise MissingJoins(rep.join_witness_failure)
    n = len(inclusion)
    prec = np.zeros((n, n), dtype=bool)
    prec[inclusion.bottom_index, :] = True
    return CausalSite(inclusion, prec, check=False)


def _subset_order(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda m: (bin(m).count("1"), list(bits(m))))


def from_poset(p: Poset, *, cap: int | None = None) -> CausalSite:
    """Finite subsets of ``p`` under ⊆, with ``K ≺ L`` iff ``k < l`` for all
    ``(k, l) ∈ K × L``.

    Regions are frozensets of elements of ``p``; ⊥ is the empty set.
    """
    n = len(p)
    require_cap("from_poset", n, cap, "poset size")
    order = _subset_order(n)
    masks = np.array(order, dtype=np.int64)
    regions = [frozenset(p.elements[i] for i in bits(m)) for m in order]
    leq = (masks[:, None] & ~masks[None, :]) == 0
    strictly_below = []
    for j in range(n):
        col = p.leq[:, j].copy()
        col[j] = False
        strictly_below.append(sum(1 << int(i) for i in np.flatnonzero(col)))
    full = (1 << n) - 1
    below = np.empty(1 << n, dtype=np.int64)  # below[mask]: elements < every member
    below[0] = full
    for j in range(n):
        below[1 << j : 1 << (j + 1)] = below[: 1 << j] & strictly_below[j]
    below_of_region = below[masks]
    prec = (masks[:, None] & ~below_of_region[None, :]) == 0
    return CausalSite(Poset(regions, leq, check=False), prec, check=False)


def from_poset_cutting(b: frozenset, a: frozenset, p: Poset) -> frozenset:
    """Closed-form cutting in :func:`from_poset` sites: members of ``b``
    strictly below every member of ``a``."""
    return frozenset(x for x in b if all(p.lt(x, y) for y in a))


def cutting(site: CausalSite, b, a):
    """The cutting of ``a`` by ``b``: ⊑-greatest ``c`` with ``c ≺ a`` and ``c ⊑ b``."""
    ia, ib = site.index(a), site.index(b)
    col = _cutting_column(site.inclusion.leq, site.prec, site.inclusion.down_counts, ia)
    k = int(col[ib])
    if k < 0:
        raise ValueError(f"no cutting of {a!r} by {b!r}: not a valid causal site")
    return site.regions[k]


def cutting_bruteforce(site: CausalSite, b, a):
    """Scan every region against axiom (iv)(a) and (b) directly."""
    regions = site.regions
    cands = [c for c in regions if site.precedes(c, a) and site.included(c, b)]
    for g in cands:
        if all(site.included(c, g) for c in cands):
            return g
    return None


def n_set(site: CausalSite, x) -> frozenset:
    """Regions ≺-incomparable with ``x``."""
    i = site.index(x)
    mask = ~site.prec[:, i] & ~site.prec[i, :]
    return frozenset(site.regions[j] for j in np.flatnonzero(mask))


def _inclusion(obj) -> Poset:
    return obj.inclusion if isinstance(obj, CausalSite) else obj


def is_centered(site_or_poset, members: Iterable[Hashable]) -> bool:
    """One common non-bottom lower bound for all members.

    On a finite family this is equivalent to the bound-per-finite-subfamily
    condition; the empty family is centered iff a non-bottom region exists.
    """
    p = _inclusion(site_or_poset)
    b = p.bottom_index
    if b is None:
        raise NoBottom("centered families need a least element")
    common = np.ones(len(p), dtype=bool)
    for x in members:
        common &= p.leq[:, p.index(x)]
    common[b] = False
    return bool(common.any())


def is_centered_literal(site_or_poset, members: Iterable[Hashable]) -> bool:
    """Every sub-collection (the empty one included) has a common
    non-bottom lower bound.  Exponential; an oracle for small families."""
    p = _inclusion(site_or_poset)
    b = p.bottom_index
    if b is None:
        raise NoBottom("centered families need a least element")
    ms = [p.index(x) for x in members]
    for pick in range(1 << len(ms)):
        common = np.ones(len(p), dtype=bool)
        for k in bits(pick):
            common &= p.leq[:, ms[k]]
        common[b] = False
        if not common.any():
            return False
    return True


def maximal_centered(site_or_poset) -> list[frozenset]:
    """All maximal centered families: the up-sets of the atoms.

    Any centered family has a non-bottom common lower bound, which lies above
    some atom; the family therefore sits inside that atom's up-set, which is
    itself centered.
    """
    p = _inclusion(site_or_poset)
    b = p.bottom_index
    if b is None:
        raise NoBottom("centered families need a least element")
    atom_ix = [i for i in range(len(p)) if i != b and p.down_counts[i] == 2]
    return [p.up_set(p.elements[i]) for i in atom_ix]


def maximal_centered_bruteforce(site_or_poset, *, cap: int = 16) -> list[frozenset]:
    """Enumerate all subsets of the carrier with the literal definition.

    A subset is centered when it and every sub-collection has a non-bottom
    common lower bound (dynamic programming over subsets by size), and
    maximal when no single added region keeps it centered.
    """
    p = _inclusion(site_or_poset)
    n = len(p)
    if n > cap:
        raise CapExceeded(f"brute-force centered search over {n} regions exceeds cap {cap}")
    b = p.bottom_index
    if b is None:
        raise NoBottom("centered families need a least element")
    full = (1 << n) - 1
    nonbottom = full & ~(1 << b)
    down = [sum(1 << int(i) for i in np.flatnonzero(p.leq[:, j])) for j in range(n)]
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    clb = np.empty(size, dtype=np.int64)
    clb[0] = full
    for i in range(n):
        clb[1 << i : 1 << (i + 1)] = clb[: 1 << i] & down[i]
    lit = (clb & nonbottom) != 0
    pop = np.zeros(size, dtype=np.int64)
    for i in range(n):
        pop += (masks >> i) & 1
    for k in range(1, n + 1):
        layer = masks[pop == k]
        for i in range(n):
            sel = layer[((layer >> i) & 1) == 1]
            lit[sel] &= lit[sel ^ (1 << i)]
    maximal = lit.copy()
    for i in range(n):
        sel = masks[((masks >> i) & 1) == 0]
        maximal[sel] &= ~lit[sel | (1 << i)]
    out = [frozenset(p.elements[i] for i in bits(int(m))) for m in masks[maximal]]
    return sorted(out, key=canonical_key)


def weakly_causal_topology(site: CausalSite) -> FiniteTopSpace:
    """Points: maximal centered families.  Closed subbase: for each region
    ``x`` the set of points containing ``x``."""
    points = maximal_centered(site)
    subbase = [[U for U in points if x in U] for x in site.regions]
    return from_closed_subbase(points, subbase, cap=max(len(points), 1))


def compactness_argument_failures(site: CausalSite, index_sets: Iterable[Iterable[Hashable]]) -> list:
    """Run the compactness argument on the given families of regions.

    For each ``F``: if the subbasic closed sets ``{π(x) : x ∈ F}`` have the
    finite intersection property then ``F`` must be centered, lie inside some
    maximal centered family ``M``, and ``M`` is a common point.  Returns the
    families for which any step fails.
    """
    points = maximal_centered(site)
    failures = []
    for F in index_sets:
        F = list(F)
        traces = [frozenset(U for U in points if x in U) for x in F]
        common = frozenset(points)
        for t in traces:
            common &= t
        fip = all(
            _nonempty_meet(traces, pick) for pick in range(1, 1 << len(traces))
        ) if len(traces) <= 10 else bool(common)
        if not fip:
            continue
        if not is_centered(site, F):
            failures.append(("not-centered", tuple(F)))
            continue
        if not any(set(F) <= U for U in points):
            failures.append(("no-maximal-extension", tuple(F)))
            continue
        if not common:
            failures.append(("no-common-point", tuple(F)))
    return failures


def _nonempty_meet(traces, pick) -> bool:
    it = iter(bits(pick))
    acc = set(traces[next(it)])
    for k in it:
        acc &= traces[k]
    return bool(acc)


def lemma_linear_failures(site: CausalSite) -> list[tuple]:
    """⊑-comparable distinct non-bottom pairs that are ≺-related.

    Any ⊑-chain of size ≥ 2 is a ≺-antichain iff no such pair exists.
    """
    b = site.inclusion.bottom_index
    L, P = site.inclusion.leq, site.prec
    bad = L & (P | P.T)
    np.fill_diagonal(bad, False)
    if b is not None:
        bad[b, :] = False
        bad[:, b] = False
    r = site.regions
    return [(r[i], r[j]) for i, j in np.argwhere(bad)]


def lemma_weakest_holds(site: CausalSite) -> bool:
    """⊥ ≺ a for every region a, including ⊥ ≺ ⊥."""
    b = site.inclusion.bottom_index
    return b is not None and bool(site.prec[b, :].all())


def n_set_masks(site: CausalSite) -> np.ndarray:
    """Row ``x`` is the membership vector of N(x)."""
    return ~site.prec.T & ~site.prec
