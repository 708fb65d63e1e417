"""Shuffle combinatorics on index words.

A word is a tuple of indices.  ``sha`` is the plain shuffle (interleavings),
``she`` the contracting shuffle: interleavings plus all order-compatible
pairwise contractions, where a letter of u and a letter of v may merge via
``combine`` (addition for integer indices, disjoint union for slot blocks).

Both return lists with multiplicity (repeated tuples count).
"""

from __future__ import annotations

import operator
from functools import lru_cache


def sha(u: tuple, v: tuple) -> list[tuple]:
    """All plain shuffles of u and v; |sha(u,v)| = C(|u|+|v|, |u|)."""
    if not u:
        return [tuple(v)]
    if not v:
        return [tuple(u)]
    out = [(u[0],) + w for w in sha(u[1:], v)]
    out += [(v[0],) + w for w in sha(u, v[1:])]
    return out


def she(u: tuple, v: tuple, combine=operator.add) -> list[tuple]:
    """All contracting shuffles of u and v (quasi-shuffle)."""
    if not u:
        return [tuple(v)]
    if not v:
        return [tuple(u)]
    out = [(u[0],) + w for w in she(u[1:], v, combine)]
    out += [(v[0],) + w for w in she(u, v[1:], combine)]
    out += [(combine(u[0], v[0]),) + w for w in she(u[1:], v[1:], combine)]
    return out


@lru_cache(maxsize=65536)
def she_counts(u: tuple, v: tuple) -> dict:
    """Contracting shuffles of integer words as {word: multiplicity}."""
    counts: dict[tuple, int] = {}
    for w in she(u, v):
        counts[w] = counts.get(w, 0) + 1
    return counts


@lru_cache(maxsize=65536)
def sha_counts(u: tuple, v: tuple) -> dict:
    """Plain shuffles as {word: multiplicity}."""
    counts: dict[tuple, int] = {}
    for w in sha(u, v):
        counts[w] = counts.get(w, 0) + 1
    return counts
