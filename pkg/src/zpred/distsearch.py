"""Distance-sensitive predecessor search.

``ShortIndex`` answers fast when the query is close to the set (cost grows
with log log of the short distance), ``LongIndex`` when it is far from one of
its neighbours (cost grows with log of ``w - log D``). ``pred_combined`` runs
both a step at a time and keeps whichever finishes first.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from .bitkey import lcp_len, pack
from .locator import fhat
from .statfn import FnFactory, StaticFn
from .trace import QueryTrace
from .trie import CompactedTrie
from .zfast import Steps, ZFast, drain


def ladder(w: int) -> List[int]:
    """Cut lengths ``w - 2**(2**i)`` for every level with ``2**(2**i) <= w/2``."""
    cuts = []
    i = 0
    while 2 * (1 << (1 << i)) <= w:
        cuts.append(w - (1 << (1 << i)))
        i += 1
    return cuts


class ShortIndex:
    """Prefixes of every key at the ladder lengths, with a two-level encoding
    of "length of the exit node's name"."""

    def __init__(self, zf: ZFast, f_level: StaticFn, f_name: StaticFn):
        self.zf = zf
        self.cuts = ladder(zf.w)
        self.f_level = f_level
        self.f_name = f_name

    @classmethod
    def build(cls, t: CompactedTrie, zf: ZFast, make: FnFactory) -> "ShortIndex":
        cuts = ladder(t.w)
        level_of: dict = {}
        name_of: dict = {}
        for node in t.nodes():
            lo, hi = node.name_len, node.extent_len
            hits = [(i, c) for i, c in enumerate(cuts) if lo <= c <= hi]
            if not hits:
                continue
            # shortest ladder prefix between name and extent (largest level)
            top_level, top_cut = hits[-1]
            e = node.extent.value
            name_of[pack(e >> (hi - top_cut), top_cut)] = node.name_len
            for _, c in hits:
                level_of[pack(e >> (hi - c), c)] = top_level
        return cls(zf,
                   make(level_of, max_payload=max(0, len(cuts) - 1)),
                   make(name_of, max_payload=t.w))

    def f(self, value: int, length: int) -> Optional[int]:
        i = self.f_level(pack(value, length))
        if i is None or i >= len(self.cuts):
            return None
        c = self.cuts[i]
        if c > length:
            return None
        return self.f_name(pack(value >> (length - c), c))

    def fhat(self, value: int, length: int, trace: QueryTrace) -> Optional[int]:
        trace.static_fn_probes += 4
        return fhat(self.zf.locator, self.f, value, length)

    def steps(self, x: int, trace: QueryTrace) -> Steps:
        zf = self.zf
        w, keys, locator = zf.w, zf.keys, zf.locator
        if zf.n == 1:
            return 0 if keys[0] < x else -1
        for i, cut in enumerate(self.cuts):
            yield
            trace.loop_iterations += 1
            p = x >> (w - cut)
            t = self.fhat(p, cut, trace)
            if t is not None:
                elen, lo, _ = locator.extent(x >> (w - t), t)
                trace.static_fn_probes += 2
                if elen < w and (keys[lo] ^ x) >> (w - elen) == 0:
                    trace.notes.update(exit="fbs", level=i)
                    return (yield from zf.fbs_pred_steps(x, elen, w, trace))
                trace.notes.update(exit="pred", level=i)
                return zf.pred_at(x, t, trace)
            if p + 1 < 1 << cut:
                t = self.fhat(p + 1, cut, trace)
                if t is not None:
                    trace.static_fn_probes += 1
                    trace.notes.update(exit="p+1", level=i)
                    return locator.left((p + 1) >> (cut - t), t) - 1
            if p > 0:
                t = self.fhat(p - 1, cut, trace)
                if t is not None:
                    trace.static_fn_probes += 1
                    trace.notes.update(exit="p-1", level=i)
                    return locator.right((p - 1) >> (cut - t), t)
        trace.notes.update(exit="full")
        return (yield from zf.fbs_pred_steps(x, 0, w, trace))

    def space_bits(self) -> dict:
        return {"short_level": self.f_level.space_bits(), "short_name": self.f_name.space_bits()}

    def tables(self):
        return {"level": self.f_level, "name": self.f_name}


def least_power_above(a: int) -> int:
    """Least power of two strictly greater than ``a >= 0``."""
    return 1 << a.bit_length()


class LongIndex:
    """Every node's extent cut at the smallest power of two in its skip interval."""

    def __init__(self, zf: ZFast, f_name: StaticFn):
        self.zf = zf
        self.f_name = f_name

    @classmethod
    def build(cls, t: CompactedTrie, zf: ZFast, make: FnFactory) -> "LongIndex":
        cut_of = {}
        for node in t.nodes():
            lo, hi = node.skip_interval
            m = 1 << max(0, lo - 1).bit_length()
            if lo <= m <= hi:
                cut_of[pack(node.extent.value >> (hi - m), m)] = node.name_len
        return cls(zf, make(cut_of, max_payload=t.w))

    def f(self, value: int, length: int) -> Optional[int]:
        return self.f_name(pack(value, length))

    def steps(self, x: int, trace: QueryTrace) -> Steps:
        zf = self.zf
        w, keys, locator = zf.w, zf.keys, zf.locator
        if zf.n == 1:
            return 0 if keys[0] < x else -1
        a = 0
        while 2 * a < w:
            m = least_power_above(a)
            if m >= w:
                break
            yield
            trace.loop_iterations += 1
            trace.static_fn_probes += 3
            t = fhat(locator, self.f, x >> (w - m), m)
            if t is None:
                trace.notes.update(exit="fbs", a=a, m=m)
                return (yield from zf.fbs_pred_steps(x, a, m, trace))
            p = x >> (w - t)
            lo, hi = locator.range(p, t)
            trace.static_fn_probes += 2
            if keys[lo] >= x:
                trace.notes.update(exit="left", a=a, m=m)
                return lo - 1
            if keys[hi] < x:
                trace.notes.update(exit="right", a=a, m=m)
                return hi
            a = lcp_len(keys[lo], keys[hi], w)
        trace.notes.update(exit="full", a=a)
        return (yield from zf.fbs_pred_steps(x, a, w, trace))

    def space_bits(self) -> dict:
        return {"long": self.f_name.space_bits()}

    def tables(self):
        return {"name": self.f_name}


def pred_short(index: ShortIndex, x: int, trace: Optional[QueryTrace] = None) -> int:
    return drain(index.steps(x, trace or QueryTrace()))


def pred_long(index: LongIndex, x: int, trace: Optional[QueryTrace] = None) -> int:
    return drain(index.steps(x, trace or QueryTrace()))


def combined_steps(short: ShortIndex, long: LongIndex, x: int, trace: QueryTrace) -> Steps:
    """Round-robin one step of each search; the first to finish wins."""
    subs: List[Tuple[str, QueryTrace, Steps]] = []
    for name, index in (("short", short), ("long", long)):
        sub = QueryTrace(debug=trace.debug)
        subs.append((name, sub, index.steps(x, sub)))
    while True:
        for name, sub, gen in subs:
            try:
                next(gen)
            except StopIteration as stop:
                for _, other, _ in subs:
                    trace.absorb(other)
                trace.notes.update(sub.notes)
                trace.notes["winner"] = name
                return stop.value
            yield


def pred_combined(short: ShortIndex, long: LongIndex, x: int,
                  trace: Optional[QueryTrace] = None) -> int:
    return drain(combined_steps(short, long, x, trace or QueryTrace()))
