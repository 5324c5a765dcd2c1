"""Definition-level oracles, written without the package's numpy kernels.

Everything here quantifies literally over elements and subsets; it is slow
and only meant for small inputs.
"""
from __future__ import annotations

from itertools import chain as ichain, combinations, permutations


def subsets(xs):
    xs = list(xs)
    return ichain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


# ---- orders ---------------------------------------------------------------

def closure_pairs(elements, pairs):
    rel = {(x, x) for x in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def least_upper_bound(elements, le, x, y):
    ubs = [z for z in elements if le(x, z) and le(y, z)]
    least = [z for z in ubs if all(le(z, w) for w in ubs)]
    return least[0] if least else None


def way_below_literal(elements, le, x, y):
    """Enumerate every subset, keep the directed ones with a supremum."""
    for D in subsets(elements):
        if not D:
            continue
        if not all(any(le(a, c) and le(b, c) for c in D) for a in D for b in D):
            continue
        ubs = [z for z in elements if all(le(d, z) for d in D)]
        sup = [z for z in ubs if all(le(z, w) for w in ubs)]
        if not sup:
            continue
        if le(y, sup[0]) and not any(le(x, d) for d in D):
            return False
    return True


# ---- causal sites ---------------------------------------------------------

def failed_axioms(elements, le, prec):
    """Set of failed axiom ids, by direct quantification."""
    S = list(elements)
    failed = set()
    bottoms = [b for b in S if all(le(b, x) for x in S)]
    if S and not bottoms:
        failed.add("order")
    bot = bottoms[0] if bottoms else None
    if any(least_upper_bound(S, le, a, b) is None for a in S for b in S):
        failed.add("joins")
    nb = [x for x in S if x != bot]
    if any(prec(x, x) for x in nb) or any(
        prec(x, y) and prec(y, z) and not prec(x, z) for x in nb for y in nb for z in nb
    ):
        failed.add("strict-order")
    for a in S:
        for b in S:
            for c in S:
                if le(b, a) and prec(a, c) and not prec(b, c):
                    failed.add("i")
                if le(b, a) and prec(c, a) and not prec(c, b):
                    failed.add("ii")
                j = least_upper_bound(S, le, a, b)
                if j is not None and prec(a, c) and prec(b, c) and not prec(j, c):
                    failed.add("iii")
    for a in S:
        for b in S:
            C = [c for c in S if prec(c, a) and le(c, b)]
            if not any(all(le(c, g) for c in C) for g in C):
                failed.add("iv")
    return failed


def subset_site(elements, lt):
    """Subsets of a poset with ``K ≺ L`` iff ``k < l`` for all pairs."""
    regions = [frozenset(s) for s in subsets(elements)]

    def prec(K, L):
        return all(lt(k, l) for k in K for l in L)

    return regions, (lambda A, B: A <= B), prec


def centered_literal(elements, le, bottom, family):
    fam = list(family)
    for sub in subsets(fam):
        if not any(y != bottom and all(le(y, x) for x in sub) for y in elements):
            return False
    return True


def maximal_centered_literal(elements, le, bottom):
    S = list(elements)
    cen = [frozenset(F) for F in subsets(S) if centered_literal(S, le, bottom, F)]
    cen_set = set(cen)
    return {F for F in cen if not any((F | {x}) in cen_set for x in S if x not in F)}


# ---- topology -------------------------------------------------------------

def closed_sets_from_subbase(points, subbase):
    pts = frozenset(points)
    gens = [frozenset(s) for s in subbase]
    unions = {frozenset()}
    for combo in subsets(gens):
        unions.add(frozenset().union(*combo) if combo else frozenset())
    closed = {pts, frozenset()} | unions
    grew = True
    while grew:
        new = {a & b for a in closed for b in closed} - closed
        closed |= new
        grew = bool(new)
    return closed


def opens_of(points, closed):
    pts = frozenset(points)
    return {pts - c for c in closed}


def saturated_literal(points, opens):
    """Intersections of arbitrary (here: all finite) families of opens."""
    pts = frozenset(points)
    out = {pts}
    frontier = [pts]
    while frontier:
        nxt = []
        for s in frontier:
            for o in opens:
                t = s & o
                if t not in out:
                    out.add(t)
                    nxt.append(t)
        frontier = nxt
    return out


def compact_literal(opens, K):
    """Every open cover of K has a finite subcover.

    Over a finite carrier there are finitely many opens, so any cover is
    already finite; what remains is that some subfamily covers K at all,
    which the whole space does."""
    return K <= frozenset().union(*opens) if opens else not K


def degroot_literal(points, closed):
    opens = opens_of(points, closed)
    base = [s for s in saturated_literal(points, opens) if compact_literal(opens, s)]
    return closed_sets_from_subbase(points, base)


def is_T1_literal(points, closed):
    return all(frozenset([x]) in closed for x in points)


def homeomorphic_literal(pa, ca, pb, cb):
    if len(pa) != len(pb):
        return False
    for perm in permutations(pb):
        m = dict(zip(pa, perm))
        if {frozenset(m[x] for x in c) for c in ca} == set(cb):
            return True
    return False


# ---- frameworks -----------------------------------------------------------

def frameworks_isomorphic_literal(places_a, fam_a, places_b, fam_b):
    if len(places_a) != len(places_b):
        return False
    fb = {frozenset(u) for u in fam_b}
    for perm in permutations(places_b):
        m = dict(zip(places_a, perm))
        if {frozenset(m[x] for x in u) for u in fam_a} == fb:
            return True
    return False


def sigma_literal(places, fam):
    P = list(places)
    fam = [frozenset(u) for u in fam]
    out = set()
    for W in subsets(P):
        W = frozenset(W)
        if all(W & frozenset(K) in {U & frozenset(K) for U in fam} for K in subsets(P)):
            out.add(W)
    return out


# ---- Minkowski ------------------------------------------------------------

def leq_event(p, q):
    dt = q[0] - p[0]
    return dt >= 0 and dt * dt >= sum((b - a) ** 2 for a, b in zip(p[1:], q[1:]))


def diamond_literal(events, F, G):
    return frozenset(
        x for x in events if all(leq_event(p, x) for p in F) and all(leq_event(x, q) for q in G)
    )
