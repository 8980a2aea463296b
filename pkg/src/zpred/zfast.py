"""Fat binary search over the z-fast map and the predecessor built on it.

Search routines are written as generators that yield once per unit of work
(one iteration of the fat binary search loop). Plain calls drain them; the
combined distance-sensitive search interleaves two of them step by step.
"""
from __future__ import annotations

from typing import Generator, Optional, Sequence

from .bitkey import BitString, two_fattest
from .locator import RangeLocator, ZFastMap, build_locator
from .statfn import FnFactory
from .trace import QueryTrace
from .trie import CompactedTrie

Steps = Generator[None, None, int]


def drain(gen: Steps) -> int:
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value


class ZFast:
    """Sorted keys + range locator + ``T``: the O(log w) baseline."""

    def __init__(self, keys: Sequence[int], w: int, locator: RangeLocator,
                 tmap: ZFastMap, root_extent_len: int):
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self.locator = locator
        self.tmap = tmap
        self.root_extent_len = root_extent_len

    @classmethod
    def build(cls, t: CompactedTrie, make: FnFactory) -> "ZFast":
        locator = build_locator(t, make)
        tmap = ZFastMap.build(t, locator, make)
        return cls(t.keys, t.w, locator, tmap, t.root.extent_len if t.n > 1 else t.w)

    def space_bits(self) -> dict:
        return {"locator": self.locator.space_bits(), "zfast_map": self.tmap.space_bits()}

    def exit_name_steps(self, x: int, a: int, b: int, trace: QueryTrace) -> Steps:
        """Length of the name of the exit node of ``x``.

        Requires ``a == 0`` or ``x[0..a)`` an internal extent, and ``b`` larger
        than every internal extent that is a proper prefix of ``x``.
        """
        w, keys, tmap = self.w, self.keys, self.tmap
        a0, b0 = a, b
        iters = 0
        while b - a > 1:
            yield
            iters += 1
            trace.fbs_iterations += 1
            if trace.debug:
                trace.history.append((a, b))
            f = two_fattest(a, b - 1)
            elen, lo, _ = tmap(x >> (w - f), f)
            trace.static_fn_probes += 3
            if f <= elen < w and (keys[lo] ^ x) >> (w - elen) == 0:
                a = elen
            else:
                b = f
        trace.fbs_calls.append((a0, b0, iters))
        trace.window = (a0, b0)
        if a == 0 and self.root_extent_len != 0:
            return 0
        return a + 1

    def fat_binary_search(self, x: int, a: int, b: int,
                          trace: Optional[QueryTrace] = None) -> BitString:
        t = drain(self.exit_name_steps(x, a, b, trace or QueryTrace()))
        return BitString(x >> (self.w - t), t)

    def pred_at(self, x: int, t: int, trace: Optional[QueryTrace] = None) -> int:
        """Rank of the predecessor of ``x`` given ``t = |name of exit(x)|``."""
        w, keys = self.w, self.keys
        elen, lo, hi = self.locator.extent(x >> (w - t), t)
        if trace is not None:
            trace.static_fn_probes += 2
        diff = keys[lo] ^ x
        if diff >> (w - elen) == 0:
            # the extent prefixes x, which at an exit node means x is that key
            return lo - 1
        # first differing bit, read from x
        if (x >> (diff.bit_length() - 1)) & 1 == 0:
            return lo - 1
        return hi

    def fbs_pred_steps(self, x: int, a: int, b: int, trace: QueryTrace) -> Steps:
        t = yield from self.exit_name_steps(x, a, b, trace)
        return self.pred_at(x, t, trace)

    def fbs_pred(self, x: int, a: int, b: int, trace: Optional[QueryTrace] = None) -> int:
        return drain(self.fbs_pred_steps(x, a, b, trace or QueryTrace()))

    def predecessor(self, x: int, trace: Optional[QueryTrace] = None) -> int:
        if self.n == 1:
            return 0 if self.keys[0] < x else -1
        return self.fbs_pred(x, 0, self.w, trace)

    def successor(self, x: int, trace: Optional[QueryTrace] = None) -> int:
        """Rank of the least key >= x (``n`` if none)."""
        return self.predecessor(x, trace) + 1
