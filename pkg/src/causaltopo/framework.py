"""Frameworks ``(P, π)``: a place set with a family of place subsets.

Members of the framology are kept as bitmasks over the place order; the
public surface speaks in frozensets of place identifiers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from . import _iso
from ._util import bits, canonical_sorted, require_cap
from .errors import OutOfCarrier, SizeCapExceeded


class Framework:
    def __init__(self, places: Iterable[Hashable], framology: Iterable[Iterable[Hashable]]):
        self.places = tuple(places)
        self._index = {p: i for i, p in enumerate(self.places)}
        if len(self._index) != len(self.places):
            raise ValueError("duplicate place identifiers")
        masks = set()
        for u in framology:
            m = 0
            for p in u:
                if p not in self._index:
                    raise OutOfCarrier(p)
                m |= 1 << self._index[p]
            masks.add(m)
        self.masks = tuple(sorted(masks))

    @classmethod
    def from_masks(cls, places, masks) -> "Framework":
        f = cls.__new__(cls)
        f.places = tuple(places)
        f._index = {p: i for i, p in enumerate(f.places)}
        f.masks = tuple(sorted(set(masks)))
        return f

    def __len__(self):
        return len(self.places)

    def __repr__(self):
        return f"Framework({len(self.places)} places, {len(self.masks)} members)"

    def member(self, mask: int) -> frozenset:
        return frozenset(self.places[i] for i in bits(mask))

    @property
    def framology(self) -> frozenset:
        return frozenset(self.member(m) for m in self.masks)

    def mask(self, subset) -> int:
        m = 0
        for p in subset:
            if p not in self._index:
                raise OutOfCarrier(p)
            m |= 1 << self._index[p]
        return m

    def __eq__(self, other):
        return (
            isinstance(other, Framework)
            and set(self.places) == set(other.places)
            and self.framology == other.framology
        )

    def __hash__(self):
        return hash((frozenset(self.places), self.framology))

    def traces(self) -> list[int]:
        """``traces()[i]`` is π(places[i]) as a mask over member positions."""
        out = [0] * len(self.places)
        for j, u in enumerate(self.masks):
            for i in bits(u):
                out[i] |= 1 << j
        return out

    def abstract_point(self, place) -> frozenset:
        """π(x): the framology members containing ``x``."""
        i = self._index.get(place)
        if i is None:
            raise OutOfCarrier(place)
        return frozenset(self.member(u) for u in self.masks if u >> i & 1)

    def relabel(self, mapping) -> "Framework":
        return Framework.from_masks([mapping[p] for p in self.places], self.masks)


@dataclass(frozen=True)
class FrameworkMap:
    source: Framework
    target: Framework
    assignment: dict

    def __post_init__(self):
        if not self.is_morphism():
            raise ValueError("assignment does not map the framology into the target framology")

    def image(self, subset) -> frozenset:
        return frozenset(self.assignment[p] for p in subset)

    def is_morphism(self) -> bool:
        if set(self.assignment) != set(self.source.places):
            return False
        if not set(self.assignment.values()) <= set(self.target.places):
            return False
        tgt = self.target.framology
        return all(self.image(u) in tgt for u in self.source.framology)


def compose(first: FrameworkMap, second: FrameworkMap) -> FrameworkMap:
    """``second ∘ first``."""
    if first.target != second.source:
        raise ValueError("maps are not composable")
    return FrameworkMap(
        first.source,
        second.target,
        {p: second.assignment[q] for p, q in first.assignment.items()},
    )


def dual(f: Framework) -> Framework:
    """Places become framology members; each old place ``x`` contributes π(x)."""
    new_places = [f.member(u) for u in f.masks]
    return Framework.from_masks(new_places, f.traces())


def is_T0(f: Framework) -> bool:
    tr = f.traces()
    return len(set(tr)) == len(tr)


def t0_quotient(f: Framework) -> tuple[Framework, dict]:
    """Identify places with equal π(x).  Classes are frozensets of places."""
    groups: dict[int, list] = {}
    for p, t in zip(f.places, f.traces()):
        groups.setdefault(t, []).append(p)
    classes = [frozenset(g) for g in groups.values()]
    to_class = {p: c for c in classes for p in c}
    cls_index = {c: i for i, c in enumerate(classes)}
    masks = []
    for u in f.masks:
        m = 0
        for i in bits(u):
            m |= 1 << cls_index[to_class[f.places[i]]]
        masks.append(m)
    return Framework.from_masks(classes, masks), to_class


def are_isomorphic(f: Framework, g: Framework, *, cap: int | None = None):
    """Search for a place bijection carrying framology onto framology.

    Returns ``(verdict, witness)`` where the witness maps places of ``f`` to
    places of ``g``, or is None.
    """
    n = max(len(f), len(g))
    require_cap("isomorphism", n, cap, "place count", SizeCapExceeded)
    phi = _iso.find_isomorphism(len(f), f.masks, len(g), g.masks)
    if phi is None:
        return False, None
    return True, {f.places[i]: g.places[j] for i, j in enumerate(phi)}


def _trace_mask(point: int, sets: list[int]) -> int:
    return sum(1 << k for k, s in enumerate(sets) if s >> point & 1)


def is_topological_model(f: Framework, space, mode: str = "open", *,
                         cap_places: int | None = None, cap_points: int | None = None):
    """Decide whether ``space`` is an open (closed) topological model of ``f``.

    A model is an injective assignment ``h`` of places to open (closed)
    sets together with points ``X'`` such that the traces
    ``{p : x ∈ h(p)}`` for ``x ∈ X'`` are exactly the framology members.
    The search first fixes a distinct witness point for each member, then
    looks for pairwise distinct sets per place containing the witnesses of
    its members and avoiding the others.  Returns ``(verdict, witness)``.
    """
    if mode not in ("open", "closed"):
        raise ValueError(f"mode must be 'open' or 'closed', not {mode!r}")
    require_cap("model_places", len(f), cap_places, "place count", SizeCapExceeded)
    require_cap("model_points", len(space.points), cap_points, "point count", SizeCapExceeded)
    lattice = sorted(space.opens if mode == "open" else space.closed)
    n_pts = len(space.points)
    members = list(f.masks)
    k, n_pl = len(members), len(f.places)
    if k > n_pts:
        return False, None

    witness_pts = [-1] * k
    result = {}

    def place_options(limit: int):
        """Sets allowed for every place given witnesses of members[:limit]."""
        opts = []
        for i in range(n_pl):
            need = avoid = 0
            for j in range(limit):
                if members[j] >> i & 1:
                    need |= 1 << witness_pts[j]
                else:
                    avoid |= 1 << witness_pts[j]
            opts.append([s for s in lattice if s & need == need and not s & avoid])
        return opts

    def pick_sets(opts, order, t, used, chosen):
        if t == len(order):
            return True
        i = order[t]
        for s in opts[i]:
            if s in used:
                continue
            chosen[i] = s
            used.add(s)
            if pick_sets(opts, order, t + 1, used, chosen):
                return True
            used.discard(s)
        return False

    def assign(j, taken):
        if j == k:
            opts = place_options(k)
            order = sorted(range(n_pl), key=lambda i: (len(opts[i]), i))
            chosen = [0] * n_pl
            if not pick_sets(opts, order, 0, set(), chosen):
                return False
            result["sets"] = chosen
            return True
        for x in range(n_pts):
            if taken >> x & 1:
                continue
            witness_pts[j] = x
            opts = place_options(j + 1)
            if all(opts) and assign(j + 1, taken | 1 << x):
                return True
        witness_pts[j] = -1
        return False

    if n_pl > len(lattice) or not assign(0, 0):
        return False, None
    chosen = result["sets"]
    pts = space.points
    traces = {x: _trace_mask(x, chosen) for x in range(n_pts)}
    x_prime = [pts[x] for x in range(n_pts) if traces[x] in set(members)]
    witness = {
        "sets": {f.places[i]: canonical_sorted(pts[x] for x in bits(chosen[i])) for i in range(n_pl)},
        "points": canonical_sorted(x_prime),
    }
    return True, witness


def check_model_witness(f: Framework, space, mode: str, witness) -> bool:
    """Verify a witness returned by :func:`is_topological_model` from scratch."""
    fam = space.open_point_sets() if mode == "open" else space.closed_point_sets()
    sets = {p: frozenset(s) for p, s in witness["sets"].items()}
    if set(sets) != set(f.places) or len(set(sets.values())) != len(sets):
        return False
    if not all(s in fam for s in sets.values()):
        return False
    traces = {frozenset(p for p, s in sets.items() if x in s) for x in witness["points"]}
    return traces == f.framology


def all_frameworks(places):
    """Every framework on the given places (2^(2^n) of them)."""
    places = list(places)
    n_sub = 1 << len(places)
    for fam in range(1 << n_sub):
        yield Framework.from_masks(places, list(bits(fam)))


def random_framework(n: int, rng, density: float | None = None, labels=None) -> Framework:
    labels = list(labels) if labels is not None else [f"p{i}" for i in range(n)]
    density = rng.random() if density is None else density
    masks = [m for m in range(1 << n) if rng.random() < density / max(1, n)]
    return Framework.from_masks(labels, masks)


def chain_framework(n: int, prefix: str = "p") -> Framework:
    """Places ``p1..pn`` with members ``{p_i, p_{i+1}}``."""
    places = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Framework(places, [[places[i], places[i + 1]] for i in range(n - 1)])
