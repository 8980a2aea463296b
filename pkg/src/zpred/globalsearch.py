"""Predecessor search sensitive to the ratio of the largest and smallest gap.

The universe is split on the top ``ceil(log n)`` bits. Each nonempty class is
searched with its own long-distance index over the remaining low bits, and a
prefix-sum array turns bucket-local ranks into global ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .distsearch import LongIndex
from .statfn import FnFactory
from .trace import QueryTrace
from .trie import BuildError, CompactedTrie
from .zfast import ZFast, drain


@dataclass(frozen=True)
class GlobalStats:
    delta_max: int
    delta_min: int


def stats(keys: Sequence[int]) -> GlobalStats:
    if len(keys) < 2:
        raise BuildError("gap statistics need at least two keys")
    gaps = [b - a for a, b in zip(keys, keys[1:])]
    return GlobalStats(max(gaps), min(gaps))


class GlobalIndex:
    def __init__(self, keys: Sequence[int], w: int, bucket_bits: int,
                 offsets: List[int], buckets: Dict[int, LongIndex]):
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self.bucket_bits = bucket_bits
        self.inner_w = w - bucket_bits
        self.offsets = offsets
        self.buckets = buckets

    @classmethod
    def build(cls, keys: Sequence[int], w: int, make: FnFactory) -> "GlobalIndex":
        n = len(keys)
        if n < 2:
            raise BuildError("global index needs at least two keys")
        bucket_bits = (n - 1).bit_length()
        inner_w = w - bucket_bits
        mask = (1 << inner_w) - 1
        offsets = [0] * ((1 << bucket_bits) + 1)
        for k in keys:
            offsets[(k >> inner_w) + 1] += 1
        for i in range(1, len(offsets)):
            offsets[i] += offsets[i - 1]
        buckets = {}
        for i in range(1 << bucket_bits):
            lo, hi = offsets[i], offsets[i + 1]
            if hi - lo >= 2:
                low = [k & mask for k in keys[lo:hi]]
                t = CompactedTrie(low, inner_w)
                buckets[i] = LongIndex.build(t, ZFast.build(t, make), make)
        return cls(keys, w, bucket_bits, offsets, buckets)

    def bucket_of(self, x: int) -> int:
        return x >> self.inner_w

    def steps(self, x: int, trace: QueryTrace):
        keys = self.keys
        i = x >> self.inner_w
        lo, hi = self.offsets[i], self.offsets[i + 1]
        if lo == hi or x <= keys[lo]:
            trace.notes.update(exit="below", bucket=i)
            return lo - 1
        if x > keys[hi - 1]:
            trace.notes.update(exit="above", bucket=i)
            return hi - 1
        trace.notes.update(exit="inner", bucket=i)
        inner = yield from self.buckets[i].steps(x & ((1 << self.inner_w) - 1), trace)
        return lo + inner

    def pred_global(self, x: int, trace: Optional[QueryTrace] = None) -> int:
        return drain(self.steps(x, trace or QueryTrace()))

    def space_bits(self) -> dict:
        total: Dict[str, int] = {"offsets": len(self.offsets) * max(1, self.n.bit_length())}
        for index in self.buckets.values():
            for name, bits in {**index.zf.space_bits(), **index.space_bits()}.items():
                total[name] = total.get(name, 0) + bits
        return total
