"""Brute-force reference implementations.

Everything here works on ``'0'/'1'`` strings and linear scans and imports
nothing from the fast paths except the trace record, so that agreement
between the two is evidence rather than tautology.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from .trace import QueryTrace

__all__ = [
    "QueryTrace", "DistancePair", "bits", "naive_pred", "sorted_pred", "naive_succ", "pref_set",
    "naive_lcp", "naive_trie", "naive_internal_extents", "naive_exit", "lemma_chain",
    "naive_distances", "naive_two_fattest", "naive_msb", "naive_cut_point", "log2c",
    "neighbor_prefix_holds", "one_side_holds", "short_loop_bound", "short_window_bound",
    "long_loop_bound", "fbs_bound", "finger_loop_bound",
]


def bits(v: int, w: int) -> str:
    return format(v, "b").zfill(w) if w else ""


def naive_pred(keys: Sequence[int], x: int) -> int:
    r = -1
    for i, k in enumerate(keys):
        if k < x:
            r = i
    return r


def sorted_pred(keys: Sequence[int], x: int) -> int:
    """Same answer as :func:`naive_pred` by bisection, for large sets."""
    return bisect.bisect_left(keys, x) - 1


def naive_succ(keys: Sequence[int], x: int) -> int:
    for i, k in enumerate(keys):
        if k >= x:
            return i
    return len(keys)


def pref_set(keys: Sequence[int], w: int) -> Set[str]:
    out = set()
    for k in keys:
        s = bits(k, w)
        for i in range(w + 1):
            out.add(s[:i])
    return out


def naive_lcp(u: str, v: str) -> str:
    i = 0
    while i < len(u) and i < len(v) and u[i] == v[i]:
        i += 1
    return u[:i]


@dataclass
class NaiveNode:
    name: str
    extent: str
    lo: int
    hi: int
    children: Tuple["NaiveNode", ...] = ()


def naive_trie(keys: Sequence[int], w: int) -> NaiveNode:
    strs = [bits(k, w) for k in keys]

    def make(lo: int, hi: int, name: str) -> NaiveNode:
        e = strs[lo]
        for s in strs[lo:hi + 1]:
            e = naive_lcp(e, s)
        if lo == hi:
            return NaiveNode(name, e, lo, hi)
        mid = lo
        while strs[mid + 1][len(e)] == "0":
            mid += 1
        return NaiveNode(name, e, lo, hi,
                         (make(lo, mid, e + "0"), make(mid + 1, hi, e + "1")))

    return make(0, len(strs) - 1, "")


def _walk(node: NaiveNode):
    yield node
    for c in node.children:
        yield from _walk(c)


def naive_internal_extents(keys: Sequence[int], w: int) -> List[str]:
    return sorted(n.extent for n in _walk(naive_trie(keys, w)) if n.children)


def naive_exit(keys: Sequence[int], w: int, x: str) -> NaiveNode:
    """Node whose name prefixes ``x`` and whose extent is ``x`` or not a prefix of it."""
    hits = [n for n in _walk(naive_trie(keys, w))
            if x.startswith(n.name) and (n.extent == x or not x.startswith(n.extent))]
    assert len(hits) == 1, hits
    return hits[0]


def lemma_chain(keys: Sequence[int], w: int, x: str) -> List[str]:
    """Internal extents that are proper prefixes of ``x``, shortest first."""
    ext = [n.extent for n in _walk(naive_trie(keys, w)) if n.children]
    return sorted((e for e in ext if x.startswith(e) and e != x), key=len)


@dataclass(frozen=True)
class DistancePair:
    d: int
    D: int


def naive_distances(keys: Sequence[int], x: int) -> DistancePair:
    below = [k for k in keys if k < x]
    above = [k for k in keys if k >= x]
    gaps = []
    if above:
        gaps.append(min(above) - x)
    if below:
        gaps.append(x - max(below))
    return DistancePair(min(gaps), max(gaps))


def naive_two_fattest(a: int, b: int) -> int:
    best, best_tz = None, -1
    for v in range(a + 1, b + 1):
        tz = 0
        while v % 2 ** (tz + 1) == 0:
            tz += 1
        if tz > best_tz:
            best, best_tz = v, tz
    return best


def naive_msb(z: int) -> int:
    i = -1
    while z:
        z //= 2
        i += 1
    return i


def naive_cut_point(x: int, y: int, w: int) -> int:
    xs, ys = bits(x, w), bits(y, w)
    best = 0
    for s in range(1, w + 1):
        v = int(ys[:s], 2) + 1
        if v < 2 ** s and xs.startswith(bits(v, s)):
            best = s
    return best


def log2c(x: float) -> float:
    """log base 2, with every value below 2 mapped to 1."""
    return math.log2(x) if x >= 2 else 1.0


def _plus(p: str, k: int) -> Optional[str]:
    v = int(p, 2) + k if p else None
    if v is None or not 0 <= v < 2 ** len(p):
        return None
    return bits(v, len(p))


def neighbor_prefix_holds(keys: Sequence[int], w: int, x: int,
                          pref: Optional[Set[str]] = None) -> bool:
    """Every prefix of ``x`` no longer than ``w - log d``, or its +1 or -1,
    prefixes some key."""
    pref = pref if pref is not None else pref_set(keys, w)
    d = naive_distances(keys, x).d
    xs = bits(x, w)
    j = 0
    while j <= w - log2c(d):
        p = xs[:j]
        if not (p in pref or _plus(p, 1) in pref or _plus(p, -1) in pref):
            return False
        j += 1
    return True


def one_side_holds(keys: Sequence[int], w: int, x: int) -> bool:
    """Keys under a prefix of ``x`` longer than ``w - log D`` all lie on one
    side of ``x``."""
    D = naive_distances(keys, x).D
    xs = bits(x, w)
    strs = [bits(k, w) for k in keys]
    for j in range(w + 1):
        if j <= w - log2c(D):
            continue
        under = [int(s, 2) for s in strs if s.startswith(xs[:j])]
        if under and not (all(k < x for k in under) or all(k >= x for k in under)):
            return False
    return True


def fbs_bound(a: int, b: int) -> int:
    return math.ceil(math.log2(b - a)) if b - a > 1 else 0


def short_loop_bound(d: int) -> int:
    return max(1, math.ceil(log2c(log2c(log2c(d)))) + 1)


def short_window_bound(d: int) -> float:
    return log2c(d) ** 2


def long_loop_bound(w: int, D: int) -> int:
    return math.ceil(log2c(w - log2c(D))) + 1


def finger_loop_bound(w: int, e_len: int, D: int) -> int:
    return math.ceil(log2c(w - e_len - log2c(D))) + 1

