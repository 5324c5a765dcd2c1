"""The ten acceptance criteria, each at its stated scale and time bound.

Run under pytest (one PASS/FAIL line per criterion is printed in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from causaltopo._iso import check_isomorphism  # noqa: E402
from causaltopo.approximation import (  # noqa: E402
    closed_framework,
    mu,
    sigma,
    ultra_closed_filters,
    ultra_closed_filters_bruteforce,
    wallman_space,
)
from causaltopo.causal_site import (  # noqa: E402
    _cutting_column,
    check_axioms,
    compactness_argument_failures,
    from_poset,
    lemma_linear_failures,
    lemma_weakest_holds,
    maximal_centered,
    maximal_centered_bruteforce,
    n_set_masks,
    recheck,
    weakest_causal,
    weakly_causal_topology,
)
from causaltopo.fintop import (  # noqa: E402
    all_topologies,
    all_topologies_bruteforce,
    degroot_dual,
    discrete,
    dual_sequence,
    from_closed_subbase,
    is_homeomorphic,
    is_T1,
)
from causaltopo.framework import (  # noqa: E402
    Framework,
    all_frameworks,
    are_isomorphic,
    chain_framework,
    check_model_witness,
    dual,
    is_T0,
    is_topological_model,
    random_framework,
    t0_quotient,
)
from causaltopo.minkowski import (  # noqa: E402
    build_causal_site,
    build_region_family,
    cone_construction,
    point_correspondence,
    random_events,
)
from causaltopo.order import Poset, all_posets, order_report, random_poset  # noqa: E402
from causaltopo.reference_suite import khalimsky_segment  # noqa: E402

from oracles import degroot_literal, diamond_literal, failed_axioms, maximal_centered_literal  # noqa: E402

ISO_CAP = 1024


class Tally:
    """Counts checks and keeps the first few failures."""

    def __init__(self):
        self.checks = 0
        self.failures: list[str] = []

    def expect(self, ok, what):
        self.checks += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(str(what))
        return ok

    @property
    def ok(self):
        return not self.failures

    def detail(self, extra=""):
        s = f"{self.checks} checks"
        if extra:
            s += f", {extra}"
        if self.failures:
            s += "; first failures: " + " | ".join(self.failures)
        return s


# ---- 1 ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def axiom_suite_sites():
    rng = random.Random(20240601)
    out = []
    for k in range(500):
        n = rng.randint(0, 6)
        p = random_poset(n, rng, labels=[f"e{i}" for i in range(n)])
        out.append((p, from_poset(p)))
    return tuple(out)


def criterion_1():
    t = Tally()
    rng = random.Random(1)
    exhaustive = 0
    for p, s in axiom_suite_sites():
        rep = check_axioms(s.inclusion, s.prec)
        t.expect(rep.passed, ("axioms", p.elements, rep.failed_axioms))
        t.expect(not lemma_linear_failures(s), ("linear", p.elements))
        t.expect(lemma_weakest_holds(s), ("weakest", p.elements))
        t.expect(s.precedes(frozenset(), frozenset()), ("⊥≺⊥", p.elements))
        # the join of any tuple containing x lies above x, so ↑x ⊆ N(x)
        # covers every tuple at once
        N = n_set_masks(s)
        L = s.inclusion.leq
        b = s.inclusion.bottom_index
        for x in range(len(s)):
            if x != b:
                t.expect(not (L[x] & ~N[x]).any(), ("↑x ⊆ N(x)", s.regions[x]))
        # and the tuples themselves: all of them on small sites, a sample otherwise
        nonbottom = [r for r in s.regions if r]
        if len(nonbottom) <= 7:
            tuples = [c for k in range(2, len(nonbottom) + 1) for c in combinations(nonbottom, k)]
            exhaustive += 1
        else:
            tuples = [tuple(rng.sample(nonbottom, rng.randint(2, 6))) for _ in range(30)]
        for xs in tuples:
            j = frozenset().union(*xs)
            jx = s.index(j)
            t.expect(all(N[s.index(x), jx] for x in xs), ("N-theorem", xs))
    return t.ok, t.detail(f"500 sites, {exhaustive} with every tuple enumerated")


# ---- 2 ---------------------------------------------------------------------

def criterion_2():
    t = Tally()
    labels = ["w", "x", "y", "z"]
    bottomed = lattices = 0
    for p in all_posets(labels):
        b = p.bottom_index
        if b is not None:
            bottomed += 1
            nb = [i for i in range(4) if i != b]
            for order in permutations(nb):
                for extra in range(1 << 7):
                    prec = np.zeros((4, 4), dtype=bool)
                    for u, v in combinations(order, 2):
                        prec[u, v] = True
                    cells = [(b, b)] + [(b, i) for i in nb] + [(i, b) for i in nb]
                    for k, (u, v) in enumerate(cells):
                        prec[u, v] = bool(extra >> k & 1)
                    rep = check_axioms(p, prec)
                    t.expect(not rep.passed, ("site exists", p.relation_pairs(), order, extra))
                    t.expect(all(recheck(p, prec, v) for v in rep.violations), ("witness", order))
            # a control: the weakest relation on the same order is a site iff joins exist
            if order_report(p).has_binary_joins:
                lattices += 1
                t.expect(weakest_causal(p).report().passed, ("control", p.relation_pairs()))
        else:
            for triple in combinations(range(4), 3):
                for order in permutations(triple):
                    prec = np.zeros((4, 4), dtype=bool)
                    for u, v in combinations(order, 2):
                        prec[u, v] = True
                    rep = check_axioms(p, prec)
                    t.expect(not rep.passed, ("site exists", p.relation_pairs(), order))
                    t.expect(all(recheck(p, prec, v) for v in rep.violations), ("witness", order))
    # the corollary read literally: ≺ strictly linear on the whole carrier
    literal = 0
    for n in (3, 4):
        for p in all_posets(labels[:n]):
            for order in permutations(range(n)):
                prec = np.zeros((n, n), dtype=bool)
                for u, v in combinations(order, 2):
                    prec[u, v] = True
                rep = check_axioms(p, prec)
                want = failed_axioms(p.elements, p.le, lambda a, c: bool(prec[p.index(a), p.index(c)]))
                t.expect(not rep.passed and rep.failed_axioms == want, ("literal", n, order))
                literal += 1
    return t.ok, t.detail(f"{bottomed} bottomed orders, {lattices} lattice controls, {literal} literal cases")


# ---- 3 ---------------------------------------------------------------------

def criterion_3():
    t = Tally()
    rng = random.Random(3)
    families = 0
    for p, s in axiom_suite_sites():
        X = weakly_causal_topology(s)
        t.expect(is_T1(X), ("T1", p.elements))
        regions = list(s.regions)
        if len(regions) <= 16:
            fams = [c for k in (1, 2, 3) for c in combinations(regions, k)]
        else:
            fams = [c for c in combinations(regions, 1)]
            fams += [tuple(rng.sample(regions, rng.randint(2, 10))) for _ in range(150)]
        families += len(fams)
        bad = compactness_argument_failures(s, fams)
        t.expect(not bad, ("compactness", p.elements, bad[:2]))
        # the subbasic closed sets themselves: FIP (every sub-collection
        # meets) ⇒ a common point
        traces = [frozenset(U for U in X.points if x in U) for x in regions]
        for fam in fams:
            sets = [traces[s.index(x)] for x in fam]
            fip = all(frozenset(X.points).intersection(*sub)
                      for k in range(1, len(sets) + 1) for sub in combinations(sets, k))
            if fip:
                t.expect(bool(frozenset(X.points).intersection(*sets)), ("common point", fam))
    return t.ok, t.detail(f"{len(axiom_suite_sites())} sites, {families} subbasic families")


# ---- 4 ---------------------------------------------------------------------

def _iso(t, f, g, what):
    ok, phi = are_isomorphic(f, g, cap=ISO_CAP)
    if t.expect(ok, what):
        idx = {p: i for i, p in enumerate(g.places)}
        t.expect(check_isomorphism([idx[phi[p]] for p in f.places], f.masks, g.masks), ("witness",) + what)


def _duality_checks(t, f):
    d = dual(f)
    t.expect(is_T0(d), ("dual T0", f.masks))
    dd = dual(d)
    q, _ = t0_quotient(f)
    _iso(t, dd, q, ("dd ≅ quotient", len(f), f.masks))
    if is_T0(f):
        _iso(t, dd, f, ("dd ≅ f", len(f), f.masks))
    _iso(t, d, dual(dd), ("d ≅ ddd", len(f), f.masks))


def criterion_4():
    t = Tally()
    exhaustive = 0
    for n in range(5):
        for f in all_frameworks([f"p{i}" for i in range(n)]):
            _duality_checks(t, f)
            exhaustive += 1
    rng = random.Random(4)
    for _ in range(200):
        _duality_checks(t, random_framework(rng.randint(5, 8), rng))
    return t.ok, t.detail(f"{exhaustive} exhaustive + 200 random frameworks")


# ---- 5 ---------------------------------------------------------------------

def criterion_5():
    t = Tally()
    total = 0
    for n, want in enumerate([1, 1, 4, 29, 355]):
        spaces = list(all_topologies(list(range(n))))
        brute = {frozenset(f) for f in all_topologies_bruteforce(n)}
        t.expect(len(spaces) == want == len(brute), ("count", n, len(spaces), len(brute)))
        t.expect({frozenset(X.opens) for X in spaces} == brute, ("same topologies", n))
        for X in spaces:
            total += 1
            g = degroot_dual(X)
            gg, ggg = degroot_dual(g), None
            ggg = degroot_dual(gg)
            t.expect(set(gg.closed) == set(X.closed), ("τ^GG = τ", n, sorted(X.closed)))
            t.expect(set(ggg.closed) == set(g.closed), ("τ^G = τ^GGG", n, sorted(X.closed)))
            pts = list(range(n))
            closed = {frozenset(X.members(c)) for c in X.closed}
            lit = degroot_literal(pts, closed)
            t.expect({frozenset(g.members(c)) for c in g.closed} == lit, ("dual vs oracle", sorted(X.closed)))
            seq = dual_sequence(X)
            t.expect(seq.distinct <= 4, ("distinct", seq.distinct))
    return t.ok, t.detail(f"{total} topologies")


# ---- 6 / 7 -----------------------------------------------------------------

@lru_cache(maxsize=None)
def minkowski_suite():
    rng = random.Random(6)
    out = []
    for k in range(200):
        dim = 2 if k % 2 == 0 else 4
        es = random_events(rng.randint(1, 8), rng, dim=dim)
        maxF, maxG = rng.choice([1, 2, None]), rng.choice([1, 2, None])
        fam = build_region_family(es, maxF, maxG, None)
        out.append((es, fam, build_causal_site(es, family=fam)))
    return tuple(out)


def criterion_6():
    t = Tally()
    rng = random.Random(66)
    for es, fam, s in minkowski_suite():
        t.expect(check_axioms(s.inclusion, s.prec).passed, ("axioms", es.events))
        arr = np.array(fam.regions, dtype=np.int64)
        L, P, rank = s.inclusion.leq, s.prec, s.inclusion.down_counts
        for a_ix, a in enumerate(fam.regions):
            _, _, abot = cone_construction(fam, a)
            col = _cutting_column(L, P, rank, a_ix)
            generic = np.where(col >= 0, arr[col], -1)
            t.expect((generic == (arr & abot)).all(), ("cutting", es.events, es.members(a)))
        # (F◇G) ∩ (F'◇G') = (F∪F')◇(G∪G'), against the literal diamond
        gens = list(fam.generators.values())
        evs = list(es.events)
        for _ in range(40):
            (F1, G1), (F2, G2) = rng.choice(gens), rng.choice(gens)
            lhs = diamond_literal(evs, F1, G1) & diamond_literal(evs, F2, G2)
            t.expect(lhs == diamond_literal(evs, F1 | F2, G1 | G2), ("identity", F1, G1, F2, G2))
        if fam.caps[0] is None and fam.caps[1] is None:
            D = np.array(fam.diamonds, dtype=np.int64)
            meets = np.bitwise_and.outer(D, D)
            t.expect(np.isin(meets, np.append(D, 0)).all(), ("D ∪ {∅} closed", es.events))
    dims = sum(1 for es, *_ in minkowski_suite() if es.dim == 4)
    return t.ok, t.detail(f"200 event sets ({dims} in 3+1)")


def criterion_7():
    t = Tally()
    for es, fam, s in minkowski_suite():
        pc = point_correspondence(es, s)
        t.expect(set(pc.f) == set(es.events), ("domain", es.events))
        t.expect(all(pc.g[pc.f[p]] == p for p in pc.f), ("g∘f", es.events))
        t.expect(all(pc.f[pc.g[Q]] == Q for Q in pc.g), ("f∘g", es.events))
        X = weakly_causal_topology(s)
        ok, phi = is_homeomorphic(X, discrete(list(es.events)), cap=8)
        t.expect(ok, ("homeomorphic", es.events))
    return t.ok, t.detail("200 event sets")


# ---- 8 ---------------------------------------------------------------------

def _wallman_checks(t, X):
    f = closed_framework(X)
    eta = set(ultra_closed_filters(X))
    t.expect(mu(f) == eta, ("μ = η", X.n))
    w = wallman_space(X)
    t.expect(is_homeomorphic(w.space, X, cap=max(X.n, 1))[0], ("ωX ≅ X", X.n))
    return eta


def criterion_8():
    t = Tally()
    exhaustive = 0
    for n in range(1, 6):
        for X in all_topologies(list(range(n))):
            if not is_T1(X):
                continue
            exhaustive += 1
            eta = _wallman_checks(t, X)
            if n <= 4:
                t.expect(eta == set(ultra_closed_filters_bruteforce(X)), ("η brute force", n))
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 8)
        pts = list(range(n))
        sub = [[p] for p in pts] + [rng.sample(pts, rng.randint(0, n)) for _ in range(rng.randint(0, 4))]
        X = from_closed_subbase(pts, sub)
        t.expect(is_T1(X), ("T1", sub))
        _wallman_checks(t, X)
    for n in range(1, 5):
        places = list(range(n))
        f = Framework.from_masks(places, range(1 << n))
        t.expect(sigma(f) == {f.member(m) for m in range(1 << n)}, ("σ = 2^P", n))
        t.expect(mu(f) == {frozenset(places)}, ("μ = {P}", n))
    return t.ok, t.detail(f"{exhaustive} exhaustive + 100 random T1 spaces")


# ---- 9 ---------------------------------------------------------------------

def euclidean_sample():
    """Half-integer sample of [0, 4] with every closed interval closed."""
    pts = [k / 2 for k in range(9)]
    intervals = [[x for x in pts if a <= x <= b] for a in pts for b in pts if a <= b]
    return from_closed_subbase(pts, intervals)


def criterion_9():
    t = Tally()
    f = chain_framework(4)
    cases = [
        ("Khalimsky segment, open", khalimsky_segment(), "open", True),
        ("Euclidean interval sample, closed", euclidean_sample(), "closed", True),
        ("2-point discrete, open", discrete(["u", "v"]), "open", False),
        ("2-point discrete, closed", discrete(["u", "v"]), "closed", False),
    ]
    for name, X, mode, want in cases:
        ok, w = is_topological_model(f, X, mode)
        t.expect(ok is want, (name, ok))
        if ok:
            t.expect(check_model_witness(f, X, mode, w), (name, "witness"))
    return t.ok, t.detail("; ".join(f"{n}: {w}" for n, _, _, w in cases))


# ---- 10 --------------------------------------------------------------------

def _union_closed_family(rng):
    while True:
        ground = rng.randint(2, 6)
        fam = {0}
        for _ in range(rng.randint(1, 5)):
            fam.add(rng.randrange(1, 1 << ground))
        grown = True
        while grown and len(fam) <= 14:
            new = {a | b for a in fam for b in fam} - fam
            fam |= new
            grown = bool(new)
        if len(fam) <= 14:
            masks = sorted(fam)
            leq = [[a & ~b == 0 for b in masks] for a in masks]
            return Poset([f"r{m}" for m in masks], np.array(leq), check=False)


def criterion_10():
    t = Tally()
    rng = random.Random(10)
    sizes = []
    for k in range(200):
        if k % 2 == 0:
            n = rng.randint(0, 3)
            site = from_poset(random_poset(n, rng))
        else:
            site = weakest_causal(_union_closed_family(rng))
        sizes.append(len(site))
        fast = set(maximal_centered(site))
        brute = set(maximal_centered_bruteforce(site))
        t.expect(fast == brute, ("fast vs brute", len(site)))
        if len(site) <= 8:
            lit = maximal_centered_literal(site.regions, site.included, site.bottom)
            t.expect(fast == lit, ("fast vs literal", len(site)))
    return t.ok, t.detail(f"200 sites, carriers {min(sizes)}..{max(sizes)}")


CRITERIA = [
    (1, "causal-site axiom suite on 500 random posets", 30, criterion_1),
    (2, "strictly linear ≺ admits no inclusion order (exhaustive, 4 elements)", 60, criterion_2),
    (3, "weakly causal topology is T1 and passes the compactness argument", None, criterion_3),
    (4, "framework duality laws (exhaustive ≤ 4 places + 200 random)", 60, criterion_4),
    (5, "de Groot dual: τ^GG = τ, τ^G = τ^GGG, ≤ 4 distinct (all ≤ 4 points)", 120, criterion_5),
    (6, "Minkowski region sites: axioms, cone cutting, diamond intersections", 120, criterion_6),
    (7, "point correspondence and homeomorphism to the discrete events", None, criterion_7),
    (8, "μ = η, Wallman space ≅ X, all-subsets framework", 120, criterion_8),
    (9, "topological model verdicts (Khalimsky, Euclidean sample, 2-point)", None, criterion_9),
    (10, "maximal centered fast path equals brute force on 200 sites", None, criterion_10),
]


def run_criterion(number):
    _, title, bound, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # report, then let the caller decide
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    in_time = bound is None or elapsed < bound
    limit = f" (< {bound} s)" if bound else ""
    line = (f"{'PASS' if ok and in_time else 'FAIL'}  criterion {number:>2}: {title}"
            f"  [{elapsed:.1f} s{limit}; {detail}]")
    return ok, in_time, line


@pytest.mark.acceptance
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, acceptance_log):
    ok, in_time, line = run_criterion(number)
    acceptance_log.append(line)
    print(line)
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    failed = 0
    for number, *_ in CRITERIA:
        ok, in_time, line = run_criterion(number)
        print(line, flush=True)
        failed += not (ok and in_time)
    sys.exit(1 if failed else 0)
