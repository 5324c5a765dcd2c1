"""JSON file formats.  Every emitter is byte-deterministic: keys sorted,
collections in canonical order, identifiers rendered as strings."""
from __future__ import annotations

import json
import sys

import numpy as np

from ._util import canonical_sorted, label
from .causal_site import CausalSite
from .errors import SchemaError
from .fintop import FiniteTopSpace, from_closed_subbase
from .framework import Framework
from .minkowski import EventSet
from .order import Poset, poset_from_cover


def read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError("<file>", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("<json>", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(obj, name, kind, where=""):
    path = f"{where}.{name}" if where else name
    if not isinstance(obj, dict):
        raise SchemaError(where or "<root>", "expected a JSON object")
    if name not in obj:
        raise SchemaError(path, "missing field")
    val = obj[name]
    if not isinstance(val, kind):
        raise SchemaError(path, f"expected {kind.__name__}")
    return val


def _ident(x, path):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(path, "identifiers must be strings or integers")
    return str(x)


def _pairs(items, path):
    out = []
    for k, pair in enumerate(items):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{path}[{k}]", "expected a two-element list")
        out.append((_ident(pair[0], f"{path}[{k}][0]"), _ident(pair[1], f"{path}[{k}][1]")))
    return out


def _id_list(items, path):
    out = [_ident(x, f"{path}[{k}]") for k, x in enumerate(items)]
    if len(set(out)) != len(out):
        raise SchemaError(path, "duplicate identifiers")
    return out


def _check_known(pairs_or_sets, known, path):
    for k, item in enumerate(pairs_or_sets):
        for x in item:
            if x not in known:
                raise SchemaError(f"{path}[{k}]", f"unknown identifier {x!r}")


def poset_from_obj(obj, where: str = "") -> Poset:
    els = _id_list(_field(obj, "elements", list, where), f"{where}.elements" if where else "elements")
    cpath = f"{where}.covers" if where else "covers"
    covers = _pairs(_field(obj, "covers", list, where), cpath)
    _check_known(covers, set(els), cpath)
    return poset_from_cover(els, covers)


def poset_to_obj(p: Poset) -> dict:
    return {
        "elements": [label(e) for e in canonical_sorted(p.elements)],
        "covers": sorted([label(a), label(b)] for a, b in p.covers()),
    }


def site_from_obj(obj) -> tuple[Poset, np.ndarray]:
    """Inclusion order and raw causal matrix; axioms are not checked here."""
    inc = poset_from_obj(_field(obj, "inclusion", dict), "inclusion")
    pairs = _pairs(_field(obj, "causal", list), "causal")
    _check_known(pairs, set(inc.elements), "causal")
    prec = np.zeros((len(inc), len(inc)), dtype=bool)
    for a, b in pairs:
        prec[inc.index(a), inc.index(b)] = True
    return inc, prec


def site_to_obj(site: CausalSite) -> dict:
    return {
        "inclusion": poset_to_obj(site.inclusion),
        "causal": sorted([label(a), label(b)] for a, b in site.causal_pairs()),
    }


def framework_from_obj(obj) -> Framework:
    places = _id_list(_field(obj, "places", list), "places")
    fam = _field(obj, "framology", list)
    members = []
    for k, u in enumerate(fam):
        if not isinstance(u, list):
            raise SchemaError(f"framology[{k}]", "expected a list of places")
        members.append([_ident(x, f"framology[{k}]") for x in u])
    _check_known(members, set(places), "framology")
    return Framework(places, members)


def framework_to_obj(f: Framework) -> dict:
    return {
        "places": [label(p) for p in canonical_sorted(f.places)],
        "framology": sorted(
            (sorted((label(p) for p in u), key=str) for u in f.framology),
            key=lambda u: (len(u), u),
        ),
    }


def space_from_obj(obj) -> FiniteTopSpace:
    pts = _id_list(_field(obj, "points", list), "points")
    sub = _field(obj, "closed_subbase", list)
    members = []
    for k, s in enumerate(sub):
        if not isinstance(s, list):
            raise SchemaError(f"closed_subbase[{k}]", "expected a list of points")
        members.append([_ident(x, f"closed_subbase[{k}]") for x in s])
    _check_known(members, set(pts), "closed_subbase")
    return from_closed_subbase(pts, members)


def space_to_obj(space: FiniteTopSpace) -> dict:
    pts = [label(x) for x in canonical_sorted(space.points)]
    closed = [sorted((label(x) for x in space.members(c)), key=str) for c in space.closed]
    return {"points": pts, "closed_subbase": sorted(closed, key=lambda c: (len(c), c))}


def events_from_obj(obj) -> EventSet:
    dim = _field(obj, "dim", int)
    if dim not in (2, 4):
        raise SchemaError("dim", "must be 2 (1+1) or 4 (3+1)")
    evs = _field(obj, "events", list)
    out = []
    for k, e in enumerate(evs):
        if not isinstance(e, list) or len(e) != dim or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in e
        ):
            raise SchemaError(f"events[{k}]", f"expected {dim} integer coordinates")
        out.append(tuple(e))
    if len(set(out)) != len(out):
        raise SchemaError("events", "events must be pairwise distinct")
    return EventSet(out, dim)


def events_to_obj(es: EventSet) -> dict:
    return {"dim": es.dim, "events": [list(e) for e in sorted(es.events)]}
