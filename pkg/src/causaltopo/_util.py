from __future__ import annotations

import os

from .errors import CapExceeded

DEFAULT_CAPS = {
    "from_poset": 12,
    "way_below": 12,
    "isomorphism": 8,
    "homeomorphism": 8,
    "model_places": 8,
    "model_points": 10,
    "space_points": 16,
    "sigma": 16,
    "filters": 12,
    "wallman": 12,
    "regions": 4096,
}

CAP_ENV = "CAUSALTOPO_CAP"

# set by the command line (--cap); sits between explicit overrides and the env
session_cap: int | None = None


def cap(name: str, override: int | None = None) -> int:
    """Resolve a size cap.

    Precedence: explicit override, then the command-line ``--cap``, then
    ``$CAUSALTOPO_CAP`` (a bare integer applied to every cap, or
    comma-separated ``name=value`` pairs), then the built-in default.
    """
    if override is not None:
        return int(override)
    if session_cap is not None:
        return int(session_cap)
    env = os.environ.get(CAP_ENV, "").strip()
    if env:
        if "=" not in env:
            return int(env)
        for item in env.split(","):
            key, _, value = item.partition("=")
            if key.strip() == name:
                return int(value)
    return DEFAULT_CAPS[name]


def require_cap(name: str, size: int, override: int | None = None, what: str = "size", exc=CapExceeded):
    limit = cap(name, override)
    if size > limit:
        raise exc(f"{what} {size} exceeds cap {name}={limit}")
    return limit


def canonical_key(x):
    """Total order over the identifiers used in this package.

    Strings sort lexicographically, integers numerically, tuples and sets
    by size and then by their (sorted) members.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, len(x), tuple(canonical_key(y) for y in x))
    if isinstance(x, (frozenset, set)):
        return (3, len(x), tuple(sorted(canonical_key(y) for y in x)))
    return (9, repr(x))


def canonical_sorted(items):
    return sorted(items, key=canonical_key)


def label(x) -> str:
    """String form used in files: sets as ``{a,b}``, tuples as ``(1,2)``."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(label(y) for y in canonical_sorted(x)) + "}"
    return str(x)


def bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()
