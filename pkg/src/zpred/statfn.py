"""Static functions: a fixed map from int keys to small int payloads.

Two backends share one interface:

* ``exact`` keeps the map verbatim and answers ``None`` off its domain.
* ``lossy`` is a hash-and-displace table that stores payloads only, with no
  trace of the keys. Off-domain lookups land on some slot and return whatever
  payload lives there (empty slots are filled by a seeded RNG, or with all
  zeros or all maximal payloads for adversarial runs), which is the
  behaviour the query algorithms must tolerate.

Space is reported with one formula for both backends, the size of the lossy
layout: ``ceil(N / LOAD)`` slots of ``payload_bits`` plus one ``DISP_BITS``
displacement per bucket of ``BUCKET`` keys.
"""
from __future__ import annotations

import math
import random
from typing import Callable, Dict, List, Mapping, Optional, Sequence

EXACT = "exact"
LOSSY = "lossy"
MODES = (EXACT, LOSSY)
# how a lossy table fills slots no key landed in
FILLS = ("random", "zero", "max")

LOAD = 0.75
BUCKET = 2
DISP_BITS = 10

_LOW60 = (1 << 60) - 1


def hash_key(k: int, seed: int) -> int:
    """Seeded hash of an arbitrary-size non-negative int.

    CPython hashes tuples of ints deterministically (no per-process salt),
    so tables built from this survive a save/load cycle.
    """
    return hash((k & _LOW60, k >> 60, seed))


class StaticFnError(RuntimeError):
    pass


def layout_bits(entries: int, payload_bits: int) -> int:
    if entries == 0:
        return 0
    slots = math.ceil(entries / LOAD)
    buckets = math.ceil(entries / BUCKET)
    return slots * payload_bits + buckets * DISP_BITS


class StaticFn:
    """Map ``key -> payload`` built once from a mapping.

    ``fn(key)`` returns the stored payload for domain keys. Off the domain an
    exact function returns ``None`` and a lossy one returns an arbitrary
    payload in ``[0, max_payload]``.
    """

    mode = ""

    def __new__(cls, mapping=None, mode: str = EXACT, seed: int = 0,
                max_payload: Optional[int] = None, fill: str = "random"):
        if cls is StaticFn:
            if mode not in MODES:
                raise ValueError(f"unknown static function mode {mode!r}")
            cls = ExactFn if mode == EXACT else LossyFn
        return super().__new__(cls)

    def __init__(self, mapping: Mapping[int, int], mode: str = EXACT, seed: int = 0,
                 max_payload: Optional[int] = None, fill: str = "random"):
        self.seed = seed
        self.entries = len(mapping)
        self.max_payload = max(mapping.values(), default=0) if max_payload is None else max_payload
        self.payload_bits = max(1, self.max_payload.bit_length())

    def __call__(self, key: int) -> Optional[int]:
        raise NotImplementedError

    def space_bits(self) -> int:
        return layout_bits(self.entries, self.payload_bits)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "seed": self.seed, "entries": self.entries,
                "max_payload": self.max_payload}

    @staticmethod
    def from_dict(d: dict) -> "StaticFn":
        cls = {EXACT: ExactFn, LOSSY: LossyFn}.get(d["mode"])
        if cls is None:
            raise ValueError(f"unknown static function mode {d['mode']!r}")
        self = object.__new__(cls)
        self.seed = d["seed"]
        self.entries = d["entries"]
        self.max_payload = d["max_payload"]
        self.payload_bits = max(1, self.max_payload.bit_length())
        self._load(d)
        return self


class ExactFn(StaticFn):
    mode = EXACT

    def __init__(self, mapping, mode=EXACT, seed=0, max_payload=None, fill="random"):
        super().__init__(mapping, mode, seed, max_payload)
        self._map = dict(mapping)
        self.get = self._map.get

    def __call__(self, key: int) -> Optional[int]:
        return self._map.get(key)

    def to_dict(self) -> dict:
        return {**super().to_dict(), "items": [[k, v] for k, v in self._map.items()]}

    def _load(self, d: dict) -> None:
        self._map = {k: v for k, v in d["items"]}
        self.get = self._map.get


class LossyFn(StaticFn):
    mode = LOSSY

    def __init__(self, mapping, mode=LOSSY, seed=0, max_payload=None, fill="random"):
        super().__init__(mapping, mode, seed, max_payload)
        if fill not in FILLS:
            raise ValueError(f"unknown fill {fill!r}")
        n = len(mapping)
        self._slots_n = max(1, math.ceil(n / LOAD))
        self._buckets_n = max(1, math.ceil(n / BUCKET))
        rng = random.Random(seed)
        for _ in range(64):
            hseed = rng.getrandbits(62)
            disp = self._place(mapping, hseed)
            if disp is not None:
                break
        else:  # pragma: no cover - astronomically unlikely
            raise StaticFnError("could not place keys after 64 attempts")
        self._hseed = hseed
        self._disp = disp
        slots: List[Optional[int]] = [None] * self._slots_n
        for k, v in mapping.items():
            slots[self._slot(k)] = v
        rng = random.Random(seed ^ 0x5EED)
        top = self.max_payload
        pick = {"random": lambda: rng.randint(0, top), "zero": lambda: 0,
                "max": lambda: top}[fill]
        self._table = [pick() if v is None else v for v in slots]

    def _place(self, mapping: Mapping[int, int], hseed: int) -> Optional[List[int]]:
        m, nb = self._slots_n, self._buckets_n
        buckets: List[List[int]] = [[] for _ in range(nb)]
        hashes: Dict[int, int] = {}
        for k in mapping:
            h = hash_key(k, hseed)
            hashes[k] = h
            buckets[h % nb].append(k)
        taken = bytearray(m)
        disp = [0] * nb
        limit = 1 << DISP_BITS
        for b in sorted(range(nb), key=lambda i: -len(buckets[i])):
            keys = buckets[b]
            if not keys:
                continue
            for d in range(limit):
                slots = [hash((hashes[k], d)) % m for k in keys]
                if len(set(slots)) == len(slots) and not any(taken[s] for s in slots):
                    for s in slots:
                        taken[s] = 1
                    disp[b] = d
                    break
            else:
                return None
        return disp

    def _slot(self, key: int) -> int:
        h = hash((key & _LOW60, key >> 60, self._hseed))
        return hash((h, self._disp[h % self._buckets_n])) % self._slots_n

    def __call__(self, key: int) -> int:
        h = hash((key & _LOW60, key >> 60, self._hseed))
        return self._table[hash((h, self._disp[h % self._buckets_n])) % self._slots_n]

    get = __call__

    def to_dict(self) -> dict:
        return {**super().to_dict(), "hseed": self._hseed, "disp": self._disp,
                "table": self._table}

    def _load(self, d: dict) -> None:
        self._hseed = d["hseed"]
        self._disp = d["disp"]
        self._table = d["table"]
        self._slots_n = len(self._table)
        self._buckets_n = len(self._disp)


FnFactory = Callable[..., StaticFn]


def factory(mode: str, seed: int = 0, fill: str = "random") -> FnFactory:
    """Return a builder ``make(mapping, max_payload=None)`` with derived seeds."""
    counter = [0]

    def make(mapping: Mapping[int, int], max_payload: Optional[int] = None) -> StaticFn:
        counter[0] += 1
        return StaticFn(mapping, mode, seed=hash_key(counter[0], seed) & _LOW60,
                        max_payload=max_payload, fill=fill)

    make.mode = mode
    return make


class RankBits:
    """Bit vector with rank support: one cumulative count per 64-bit word."""

    def __init__(self, bits: Sequence[int]):
        self.size = len(bits)
        words = [0] * ((self.size + 63) // 64)
        for i, b in enumerate(bits):
            if b:
                words[i >> 6] |= 1 << (i & 63)
        self._words = words
        counts = [0]
        for word in words:
            counts.append(counts[-1] + word.bit_count())
        self._counts = counts

    def rank(self, pos: int) -> int:
        """Number of set bits in ``[0, pos)``."""
        q, r = pos >> 6, pos & 63
        if q >= len(self._words):
            return self._counts[-1]
        return self._counts[q] + (self._words[q] & ((1 << r) - 1)).bit_count()

    def space_bits(self) -> int:
        return self.size + len(self._counts) * max(1, self._counts[-1].bit_length())

    def to_dict(self) -> dict:
        return {"size": self.size, "words": self._words}

    @classmethod
    def from_dict(cls, d: dict) -> "RankBits":
        self = cls.__new__(cls)
        self.size = d["size"]
        self._words = d["words"]
        counts = [0]
        for word in self._words:
            counts.append(counts[-1] + word.bit_count())
        self._counts = counts
        return self


class MonotoneHash:
    """Rank of a key inside a sorted set of fixed-width ints (LCP bucketing).

    Keys are cut into buckets of ``b`` consecutive elements. Three static
    functions give, for a key, the length of its bucket's longest common
    prefix, the bucket index from that prefix, and the offset inside the
    bucket. Off-domain keys get an arbitrary rank in ``[0, N)``.
    """

    def __init__(self, sorted_keys: Sequence[int], width: int, make: FnFactory):
        n = len(sorted_keys)
        self.n = n
        self.width = width
        self.bucket = b = max(1, n.bit_length())
        lcp_of, bucket_of, offset_of = {}, {}, {}
        for j in range(0, n, b):
            chunk = sorted_keys[j:j + b]
            lam = width - (chunk[0] ^ chunk[-1]).bit_length()
            bucket_of[((1 << lam) | (chunk[0] >> (width - lam)))] = j // b
            for off, k in enumerate(chunk):
                lcp_of[k] = lam
                offset_of[k] = off
        self._lcp = make(lcp_of, max_payload=width)
        self._bucket = make(bucket_of, max_payload=max(0, (n - 1) // b))
        self._offset = make(offset_of, max_payload=b - 1)

    def __call__(self, key: int) -> int:
        width = self.width
        lam = self._lcp(key)
        if lam is None or lam > width:
            lam = width
        j = self._bucket((1 << lam) | (key >> (width - lam)))
        off = self._offset(key)
        pos = (j or 0) * self.bucket + (off or 0)
        return pos if pos < self.n else self.n - 1

    def space_bits(self) -> int:
        return self._lcp.space_bits() + self._bucket.space_bits() + self._offset.space_bits()

    def tables(self) -> Dict[str, StaticFn]:
        return {"lcp": self._lcp, "bucket": self._bucket, "offset": self._offset}

    def to_dict(self) -> dict:
        return {"n": self.n, "width": self.width, "bucket_size": self.bucket,
                **{k: fn.to_dict() for k, fn in self.tables().items()}}

    @classmethod
    def from_dict(cls, d: dict) -> "MonotoneHash":
        self = cls.__new__(cls)
        self.n, self.width, self.bucket = d["n"], d["width"], d["bucket_size"]
        self._lcp = StaticFn.from_dict(d["lcp"])
        self._bucket = StaticFn.from_dict(d["bucket"])
        self._offset = StaticFn.from_dict(d["offset"])
        return self
