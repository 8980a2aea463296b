"""Range locator, extent computation, the z-fast map and the prefix patch.

All three answer from the sorted key array plus static functions; none of
them needs the trie at query time.

The range locator ranks strings among a set ``X`` that holds every key,
every node name ``p`` and every ``p + 1``. Strings are compared in
prefix-first lexicographic order, so the number of keys before ``p`` in
``X`` is ``left(p)`` and the number of keys before ``p + 1`` is
``right(p) + 1``. Ranks inside ``X`` come from a monotone hash; keys are
counted with a rank bit vector.
"""
from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence, Tuple

from .bitkey import lcp_len, pack
from .statfn import FnFactory, MonotoneHash, RankBits, StaticFn
from .trie import CompactedTrie


class RangeLocator:
    """``left``/``right``/``extent`` for node names.

    Exact on genuine node names. Any other input yields some pair of valid
    ranks, which is all the callers rely on.
    """

    def __init__(self, keys: Sequence[int], w: int,
                 names: Iterable[Tuple[int, int]], make: FnFactory):
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self._lb = w.bit_length()
        enc = self._enc
        is_key = {enc(k, w): 1 for k in keys}
        domain = set(is_key)
        for value, length in names:
            domain.add(enc(value, length))
            if value + 1 < 1 << length:
                domain.add(enc(value + 1, length))
        ordered = sorted(domain)
        self.domain_size = len(ordered)
        self._pos = MonotoneHash(ordered, w + self._lb, make)
        self._rank = RankBits([is_key.get(x, 0) for x in ordered])

    def _enc(self, value: int, length: int) -> int:
        return ((value << (self.w - length)) << self._lb) | length

    def _keys_before(self, value: int, length: int) -> int:
        return self._rank.rank(self._pos(((value << (self.w - length)) << self._lb) | length))

    def left(self, value: int, length: int) -> int:
        r = self._keys_before(value, length)
        return r if r < self.n else self.n - 1

    def right(self, value: int, length: int) -> int:
        if value + 1 == 1 << length:
            return self.n - 1
        r = self._keys_before(value + 1, length) - 1
        return r if r >= 0 else 0

    def range(self, value: int, length: int) -> Tuple[int, int]:
        return self.left(value, length), self.right(value, length)

    def extent(self, value: int, length: int) -> Tuple[int, int, int]:
        """``(|extent|, left, right)``; the extent itself is ``keys[left][0..|extent|)``."""
        lo = self.left(value, length)
        hi = self.right(value, length)
        return lcp_len(self.keys[lo], self.keys[hi], self.w), lo, hi

    def space_bits(self) -> int:
        return self._pos.space_bits() + self._rank.space_bits()

    def tables(self):
        return self._pos.tables()

    def to_dict(self) -> dict:
        return {"domain_size": self.domain_size, "pos": self._pos.to_dict(),
                "rank": self._rank.to_dict()}

    @classmethod
    def from_dict(cls, d: dict, keys: Sequence[int], w: int) -> "RangeLocator":
        self = cls.__new__(cls)
        self.keys, self.w, self.n = keys, w, len(keys)
        self._lb = w.bit_length()
        self.domain_size = d["domain_size"]
        self._pos = MonotoneHash.from_dict(d["pos"])
        self._rank = RankBits.from_dict(d["rank"])
        return self


def node_names(t: CompactedTrie):
    for v in t.nodes():
        yield v.name.value, v.name_len


def build_locator(t: CompactedTrie, make: FnFactory) -> RangeLocator:
    return RangeLocator(t.keys, t.w, node_names(t), make)


class ZFastMap:
    """The map ``T``: handle -> extent, via ``g: handle -> |name|``.

    ``T`` always answers with an extent (possibly a full key). Returns
    ``(|extent|, left, right)`` like :meth:`RangeLocator.extent`.
    """

    def __init__(self, locator: RangeLocator, g: StaticFn):
        self.locator = locator
        self.g = g

    @classmethod
    def build(cls, t: CompactedTrie, locator: RangeLocator, make: FnFactory) -> "ZFastMap":
        g = {pack(v.handle.value, v.handle_len): v.name_len for v in t.internal_nodes()}
        return cls(locator, make(g, max_payload=t.w))

    def __call__(self, value: int, length: int) -> Tuple[int, int, int]:
        t = self.g(pack(value, length))
        if t is None or t > length:
            t = 0
        return self.locator.extent(value >> (length - t), t)

    def space_bits(self) -> int:
        return self.g.space_bits()


def fhat(locator: RangeLocator, f: Callable[[int, int], Optional[int]],
         value: int, length: int) -> Optional[int]:
    """Patched prefix function: ``f`` where it is trustworthy, ``None`` (⊥)
    for every string that prefixes no key."""
    t = f(value, length)
    if t is None or t > length:
        return None
    elen, lo, _ = locator.extent(value >> (length - t), t)
    if elen < length:
        return None
    w = locator.w
    if locator.keys[lo] >> (w - length) != value:
        return None
    return t


class PrefixPatch:
    """``fhat`` bound to one prefix function."""

    def __init__(self, locator: RangeLocator, f: Callable[[int, int], Optional[int]]):
        self.locator = locator
        self.f = f

    def __call__(self, value: int, length: int) -> Optional[int]:
        return fhat(self.locator, self.f, value, length)


def single_fn(fn: StaticFn) -> Callable[[int, int], Optional[int]]:
    """Adapt a static function keyed by packed strings to ``f(value, length)``."""
    def f(value: int, length: int) -> Optional[int]:
        return fn(pack(value, length))
    return f
