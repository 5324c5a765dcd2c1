"""Backtracking isomorphism search for set systems over small carriers.

A set system is a carrier ``range(n)`` with a family of bitmasks.  Two
systems are isomorphic when a bijection of carriers maps the family onto the
family.  Frameworks and topological spaces (carrier plus open sets) are both
set systems, so this is the engine behind ``are_isomorphic`` and
``is_homeomorphic``.
"""
from __future__ import annotations

from collections import Counter

from ._util import bits, popcount


def _refine(n: int, fa: list[int], fb: list[int]):
    """Joint colour refinement of both incidence structures.

    Colours are drawn from a shared palette, so equal colours across the two
    systems are meaningful.
    """
    la = [list(bits(u)) for u in fa]
    lb = [list(bits(v)) for v in fb]
    pa, pb = [0] * n, [0] * n
    classes = 1

    def place_sigs(pc, lists, mc):
        inc = [[] for _ in range(n)]
        for idx, c in zip(lists, mc):
            for i in idx:
                inc[i].append(c)
        return [(pc[i], tuple(sorted(inc[i]))) for i in range(n)]

    while True:
        ma = [tuple(sorted(pa[i] for i in idx)) for idx in la]
        mb = [tuple(sorted(pb[i] for i in idx)) for idx in lb]
        palette = {s: k for k, s in enumerate(sorted(set(ma) | set(mb)))}
        ma = [palette[s] for s in ma]
        mb = [palette[s] for s in mb]
        sa = place_sigs(pa, la, ma)
        sb = place_sigs(pb, lb, mb)
        palette = {s: k for k, s in enumerate(sorted(set(sa) | set(sb)))}
        pa = [palette[s] for s in sa]
        pb = [palette[s] for s in sb]
        if Counter(pa) != Counter(pb):
            return None
        if len(palette) == classes:
            return pa, pb
        classes = len(palette)


def find_isomorphism(n: int, fam_a, m: int, fam_b) -> list[int] | None:
    """Return ``phi`` with ``phi[i]`` the image of carrier point ``i``, or None."""
    fa, fb = sorted(set(fam_a)), sorted(set(fam_b))
    if n != m or len(fa) != len(fb):
        return None
    if fa == fb:
        return list(range(n))
    if sorted(map(popcount, fa)) != sorted(map(popcount, fb)):
        return None
    deg_a = sorted(sum(1 for u in fa if u >> i & 1) for i in range(n))
    deg_b = sorted(sum(1 for v in fb if v >> i & 1) for i in range(n))
    if deg_a != deg_b:
        return None
    colours = _refine(n, fa, fb)
    if colours is None:
        return None
    ca, cb = colours
    size = Counter(ca)
    order = sorted(range(n), key=lambda i: (size[ca[i]], ca[i], i))
    target_set = set(fb)
    phi = [-1] * n
    img = [0] * len(fa)  # image of (member ∩ assigned places)
    touching = [[t for t, u in enumerate(fa) if u >> i & 1] for i in range(n)]

    def consistent(bmask):
        return sorted(img) == sorted([v & bmask for v in fb])

    def search(k, bmask):
        if k == n:
            return all(x in target_set for x in img)
        i = order[k]
        for j in range(n):
            if bmask >> j & 1 or cb[j] != ca[i]:
                continue
            phi[i] = j
            touched = touching[i]
            for t in touched:
                img[t] |= 1 << j
            if consistent(bmask | 1 << j) and search(k + 1, bmask | 1 << j):
                return True
            for t in touched:
                img[t] &= ~(1 << j)
            phi[i] = -1
        return False

    return list(phi) if search(0, 0) else None


def check_isomorphism(phi, fam_a, fam_b) -> bool:
    """Independent verification of a witness produced by the search."""
    n = len(phi)
    if sorted(phi) != list(range(n)):
        return False
    mapped = set()
    for u in set(fam_a):
        v = 0
        for i in bits(u):
            v |= 1 << phi[i]
        mapped.add(v)
    return mapped == set(fam_b)
