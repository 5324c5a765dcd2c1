"""Worked reference examples, each reduced to a yes/no check.

Used by the ``reference-suite`` command and by the test suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .approximation import closed_framework, mu, sigma, ultra_closed_filters, wallman_space
from .causal_site import (
    check_axioms,
    cutting,
    from_poset,
    from_poset_cutting,
    n_set,
    weakest_causal,
    weakly_causal_topology,
)
from .fintop import discrete, from_open_subbase, is_T1
from .framework import (
    Framework,
    are_isomorphic,
    chain_framework,
    dual,
    is_T0,
    is_topological_model,
    random_framework,
    t0_quotient,
)
from .minkowski import (
    EventSet,
    build_causal_site,
    build_region_family,
    formula_cutting,
    multi_diamond,
)
from .order import all_posets, atoms, chain, poset_from_cover


@dataclass(frozen=True)
class Example:
    name: str
    what: str
    run: Callable[[], bool]


def _two_chains():
    els = ["⊥", "1", "2", "3", "4", "5", "6"]
    covers = [("⊥", "1"), ("⊥", "2"), ("1", "3"), ("3", "5"), ("2", "4"), ("4", "6")]
    return poset_from_cover(els, covers)


def _atoms_two_chains():
    return atoms(_two_chains()) == {"1", "2"}


def _from_poset_all_four():
    return all(check_axioms(s.inclusion, s.prec).passed
               for s in (from_poset(p) for p in all_posets(["a", "b", "c", "d"])))


def _weakest_linear():
    s = weakest_causal(chain(["⊥", "a", "b"]))
    return set(s.causal_pairs()) == {("⊥", "⊥"), ("⊥", "a"), ("⊥", "b")}


def _cutting_from_poset():
    p = poset_from_cover(["a1", "a2", "b"], [("a1", "a2")])
    s = from_poset(p)
    A, B = frozenset({"a2"}), frozenset({"a1", "b"})
    want = frozenset({"a1"})
    return cutting(s, B, A) == want == from_poset_cutting(B, A, p)


def _join_in_n_sets():
    rng = random.Random(7)
    for _ in range(20):
        els = rng.sample(["a", "b", "c", "d"], 4)
        p = poset_from_cover(els, [(els[0], els[1]), (els[2], els[3])][: rng.randint(0, 2)])
        s = from_poset(p)
        nonbottom = [r for r in s.regions if r]
        for k in (2, 3):
            for xs in combinations(nonbottom, k):
                j = frozenset().union(*xs)
                if not all(j in n_set(s, x) for x in xs):
                    return False
    return True


def _weakly_causal_T1():
    rng = random.Random(11)
    for _ in range(20):
        els = ["a", "b", "c", "d"]
        covers = [(x, y) for x, y in combinations(els, 2) if rng.random() < 0.3]
        if not is_T1(weakly_causal_topology(from_poset(poset_from_cover(els, covers)))):
            return False
    return True


def _triple_dual():
    rng = random.Random(3)
    for _ in range(30):
        f = random_framework(rng.randint(0, 5), rng)
        d = dual(f)
        if not are_isomorphic(d, dual(dual(d)), cap=64)[0]:
            return False
    return True


def _dual_T0():
    rng = random.Random(5)
    return all(is_T0(dual(random_framework(rng.randint(0, 6), rng))) for _ in range(50))


def _double_dual_quotient():
    rng = random.Random(9)
    for _ in range(30):
        f = random_framework(rng.randint(0, 6), rng)
        q, to_class = t0_quotient(f)
        if not are_isomorphic(dual(dual(f)), q, cap=64)[0]:
            return False
        if is_T0(f) and len(set(to_class.values())) != len(f.places):
            return False
    return True


def khalimsky_segment():
    return from_open_subbase(
        list(range(1, 8)), [[1], [1, 2, 3], [3], [3, 4, 5], [5], [5, 6, 7], [7]]
    )


def _khalimsky_model():
    return is_topological_model(chain_framework(4), khalimsky_segment(), "open")[0]


def _all_subsets_sigma():
    places = list(range(1, 6))
    f = Framework.from_masks(places, range(1 << len(places)))
    everything = frozenset(f.member(m) for m in range(1 << len(places)))
    return sigma(f) == everything and mu(f) == {frozenset(places)}


def _mu_is_eta():
    for n in range(1, 5):
        X = discrete(list(range(n)))
        m = mu(closed_framework(X))
        if m != set(ultra_closed_filters(X)):
            return False
    return True


def _wallman_closed_embedding():
    X = discrete(["x", "y", "z"])
    w = wallman_space(X)
    f = w.embedding
    image = set(f.values())
    for c in X.closed:
        D = X.members(c)
        mu_D = {U for U in w.mu if D in U}
        if {f[x] for x in D} != image & mu_D:
            return False
    return True


def four_events():
    return EventSet([(0, 0), (1, 0), (2, 0), (1, 1)])


def _diamond_intersection():
    es = EventSet([(0, 0), (1, 0), (2, 0), (1, 1), (3, 0), (2, 1)])
    fam = build_region_family(es, 2, 2, None)
    A = multi_diamond(es, [(0, 0)], [(2, 0)])
    B = multi_diamond(es, [(1, 0)], [(3, 0)])
    regions = set(fam.region_sets())
    return bool(A & B) and (A & B) in regions and frozenset() in regions


def _minkowski_site():
    s = build_causal_site(four_events(), 1, 1, 2)
    return check_axioms(s.inclusion, s.prec).passed


def _minkowski_cutting():
    es = four_events()
    fam = build_region_family(es, 1, 1, 2)
    s = build_causal_site(es, family=fam)
    for A in s.regions:
        for B in s.regions:
            if formula_cutting(fam, B, A).B_A != cutting(s, B, A):
                return False
    return True


def _minkowski_maximize():
    es = four_events()
    fam = build_region_family(es, 1, 1, 2)
    for dm in fam.diamonds:
        c = formula_cutting(fam, [], fam.region(dm))
        for x in c.O_A:
            if not any(es.leq[es.index(x), es.index(m)] for m in c.M_A):
                return False
    return True


EXAMPLES = [
    Example("atoms-two-chains", "atoms of ⊥ below two chains of depth 3 are {1,2}", _atoms_two_chains),
    Example("subset-site-axioms", "subset sites of all 4-element posets pass the axiom check", _from_poset_all_four),
    Example("weakest-linear", "weakest causal relation on ⊥<a<b", _weakest_linear),
    Example("subset-site-cutting", "cutting of {a2} by {a1,b} is {a1}", _cutting_from_poset),
    Example("join-in-n-sets", "joins of distinct regions lie in every N(x_i)", _join_in_n_sets),
    Example("weakly-causal-T1", "weakly causal topologies are T1", _weakly_causal_T1),
    Example("dual-triple-dual", "dual is isomorphic to triple dual", _triple_dual),
    Example("dual-is-T0", "duals are T0", _dual_T0),
    Example("double-dual-quotient", "double dual is isomorphic to the T0 quotient", _double_dual_quotient),
    Example("khalimsky-open-model", "Khalimsky segment is an open model of the 4-place chain", _khalimsky_model),
    Example("all-subsets-sigma", "π = 2^P gives σ = 2^P and μ = {P}", _all_subsets_sigma),
    Example("mu-equals-eta", "μ = η for discrete spaces", _mu_is_eta),
    Example("wallman-closed-embedding", "f(D) = f(X) ∩ μ(D) for closed D", _wallman_closed_embedding),
    Example("diamond-intersection", "overlapping diamonds intersect inside P, ∅ ∈ P", _diamond_intersection),
    Example("minkowski-site", "4-event region family is a causal site", _minkowski_site),
    Example("minkowski-cutting", "cone-construction cutting equals the generic cutting", _minkowski_cutting),
    Example("minkowski-maximize", "every event of O_A lies below some member of M_A", _minkowski_maximize),
]


def run_all() -> list[tuple[str, str, bool]]:
    out = []
    for ex in EXAMPLES:
        try:
            ok = bool(ex.run())
        except Exception:  # a crash counts as a failure in the table
            ok = False
        out.append((ex.name, ex.what, ok))
    return out
