"""Finger search: start from a known key ``y < x`` and search only the part of
the trie that separates ``y`` from ``x``.

Needs left/right/extent for *every* prefix of a key, not only node names,
which is what :class:`WeakPrefixIndex` provides.
"""
from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .bitkey import ContractError, lcp_len, pack
from .distsearch import least_power_above
from .statfn import FnFactory, StaticFn
from .trace import QueryTrace
from .zfast import Steps, ZFast, drain


class WeakPrefixIndex:
    """Prefix -> block of keys it prefixes.

    Exact for prefixes of keys; any other string gets some pair of ranks, and
    :meth:`in_pref` tells the two cases apart with a single key access.
    """

    def __init__(self, keys: Sequence[int], w: int, fn: StaticFn):
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self.fn = fn

    @classmethod
    def build(cls, keys: Sequence[int], w: int, make: FnFactory) -> "WeakPrefixIndex":
        n = len(keys)
        blocks = {}
        for length in range(w + 1):
            shift = w - length
            start = 0
            for i in range(1, n + 1):
                if i == n or keys[i] >> shift != keys[start] >> shift:
                    blocks[pack(keys[start] >> shift, length)] = start * n + i - 1
                    start = i
        return cls(keys, w, make(blocks, max_payload=n * n - 1))

    def weak_range(self, value: int, length: int) -> Tuple[int, int]:
        code = self.fn(pack(value, length))
        if code is None:
            return 0, self.n - 1
        lo, hi = divmod(code, self.n)
        return min(lo, self.n - 1), hi

    def in_pref(self, value: int, length: int) -> bool:
        lo = self.weak_range(value, length)[0]
        return self.keys[lo] >> (self.w - length) == value

    def extent_any(self, value: int, length: int) -> Tuple[int, int, int]:
        lo, hi = self.weak_range(value, length)
        return lcp_len(self.keys[lo], self.keys[hi], self.w), lo, hi

    def space_bits(self) -> int:
        return self.fn.space_bits()

    @property
    def entries(self) -> int:
        return self.fn.entries


def cut_point(x: int, y: int, w: int) -> int:
    """Largest ``s`` with ``y[0..s) + 1`` a prefix of ``x``; needs ``y < x``."""
    if not y < x:
        raise ContractError("cut_point needs y < x")
    lcp = lcp_len(x, y, w)
    k = w - lcp - 1
    low = (1 << k) - 1
    run = (y & ~x) & low
    # leading ones of run inside its k-bit window
    j = k - (~run & low).bit_length()
    return lcp + 1 + j


class FingerSearch:
    def __init__(self, zf: ZFast, weak: WeakPrefixIndex):
        self.zf = zf
        self.weak = weak

    def pred_any(self, x: int, t: int, trace: QueryTrace) -> int:
        """``pred(x, t)`` for any ``t`` with ``x[0..t)`` prefixing a key."""
        w = self.zf.w
        elen, lo, hi = self.weak.extent_any(x >> (w - t), t)
        trace.static_fn_probes += 1
        diff = self.zf.keys[lo] ^ x
        if diff >> (w - elen) == 0 or (x >> (diff.bit_length() - 1)) & 1 == 0:
            return lo - 1
        return hi

    def steps(self, x: int, y: int, trace: QueryTrace) -> Steps:
        zf, weak = self.zf, self.weak
        w, keys = zf.w, zf.keys
        if not y < x:
            raise ContractError("finger must be smaller than the query")
        if not weak.in_pref(y, w):
            raise ContractError("finger is not a key of the set")
        t = cut_point(x, y, w)
        q = x >> (w - t)  # y[0..t) + 1
        elen, lo, _ = weak.extent_any(q, t)
        trace.static_fn_probes += 1
        trace.notes["t"] = t
        if elen < t or keys[lo] >> (w - t) != q:
            trace.static_fn_probes += 1
            trace.notes["exit"] = "outside"
            return weak.weak_range(y >> (w - t), t)[1]
        if not (elen < w and (keys[lo] ^ x) >> (w - elen) == 0):
            trace.notes["exit"] = "pred"
            return self.pred_any(x, t, trace)
        e = elen
        trace.notes.update(exit="loop", e_len=e)
        span = w - e
        a = 0
        while 2 * a < span:
            m = least_power_above(a)
            if m >= span:
                break
            yield
            trace.loop_iterations += 1
            plen = m + e
            p = x >> (w - plen)
            lo, hi = weak.weak_range(p, plen)
            trace.static_fn_probes += 1
            if keys[lo] >> (w - plen) != p:
                trace.notes.update(exit="fbs", a=a, m=m)
                return (yield from zf.fbs_pred_steps(x, a + e, plen, trace))
            if keys[lo] >= x:
                return lo - 1
            if keys[hi] < x:
                return hi
            a = lcp_len(keys[lo], keys[hi], w) - e
        trace.notes.update(exit="full", a=a)
        return (yield from zf.fbs_pred_steps(x, a + e, w, trace))

    def pred_finger(self, x: int, y: int, trace: Optional[QueryTrace] = None) -> int:
        return drain(self.steps(x, y, trace or QueryTrace()))
