"""The queryable bundle: sorted keys plus every search structure built on them."""
from __future__ import annotations

import math
from typing import Dict, Iterable, Optional, Union

from .bitkey import ContractError
from .distsearch import LongIndex, ShortIndex, combined_steps
from .finger import FingerSearch, WeakPrefixIndex
from .globalsearch import GlobalIndex
from .statfn import EXACT, FnFactory, factory
from .trace import QueryTrace
from .trie import BuildError, CompactedTrie
from .zfast import Steps, ZFast, drain

ALGOS = ("baseline", "short", "long", "combined", "global", "finger")


class PredIndex:
    """Static predecessor index over ``n`` distinct ``w``-bit keys.

    Ranks are 0-based positions in the sorted key array; ``-1`` means "no
    predecessor". ``global`` needs two or more keys and is absent otherwise.
    """

    def __init__(self, keys, w, zf: ZFast, short: ShortIndex, long: LongIndex,
                 glob: Optional[GlobalIndex], finger: Optional[FingerSearch],
                 backend: str = EXACT, seed: int = 0, fill: str = "random"):
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self.zf = zf
        self.short = short
        self.long = long
        self.glob = glob
        self.finger = finger
        self.backend = backend
        self.seed = seed
        self.fill = fill

    @classmethod
    def build(cls, keys: Iterable[int], w: int, backend: Union[str, FnFactory] = EXACT,
              seed: int = 0, fill: str = "random", with_global: bool = True,
              with_finger: bool = True) -> "PredIndex":
        if not 1 <= w <= 64:
            raise BuildError("width must be between 1 and 64")
        keys = list(keys)
        if any(b <= a for a, b in zip(keys, keys[1:])):
            keys = sorted(keys)
        t = CompactedTrie(keys, w)
        if callable(backend):
            make, name = backend, getattr(backend, "mode", "custom")
        else:
            make, name = factory(backend, seed, fill), backend
        zf = ZFast.build(t, make)
        short = ShortIndex.build(t, zf, make)
        long = LongIndex.build(t, zf, make)
        glob = GlobalIndex.build(keys, w, make) if with_global and len(keys) >= 2 else None
        finger = FingerSearch(zf, WeakPrefixIndex.build(keys, w, make)) if with_finger else None
        return cls(keys, w, zf, short, long, glob, finger, name, seed, fill)

    @property
    def algos(self):
        return tuple(a for a in ALGOS
                     if not (a == "global" and self.glob is None)
                     and not (a == "finger" and self.finger is None))

    def _check(self, x: int) -> None:
        if not 0 <= x < 1 << self.w:
            raise ContractError(f"query {x} does not fit in {self.w} bits")

    def default_finger(self, x: int) -> Optional[int]:
        """Smallest key, when it is below ``x``."""
        return self.keys[0] if self.keys[0] < x else None

    def steps(self, algo: str, x: int, trace: QueryTrace, finger: Optional[int] = None) -> Steps:
        self._check(x)
        if algo == "baseline":
            if self.n == 1:
                return 0 if self.keys[0] < x else -1
            return (yield from self.zf.fbs_pred_steps(x, 0, self.w, trace))
        if algo == "short":
            return (yield from self.short.steps(x, trace))
        if algo == "long":
            return (yield from self.long.steps(x, trace))
        if algo == "combined":
            return (yield from combined_steps(self.short, self.long, x, trace))
        if algo == "global":
            if self.glob is None:
                raise ContractError("global search needs an index over two or more keys")
            return (yield from self.glob.steps(x, trace))
        if algo == "finger":
            if self.finger is None:
                raise ContractError("index was built without finger search")
            y = self.default_finger(x) if finger is None else finger
            if y is None:
                # nothing below x, so no finger and nothing to find
                trace.notes["exit"] = "no-finger"
                return -1
            return (yield from self.finger.steps(x, y, trace))
        raise ContractError(f"unknown algorithm {algo!r}")

    def query(self, x: int, algo: str = "baseline", trace: Optional[QueryTrace] = None,
              finger: Optional[int] = None) -> int:
        """Rank of the largest key strictly below ``x`` (``-1`` if none)."""
        return drain(self.steps(algo, x, trace or QueryTrace(), finger))

    def predecessor(self, x: int, algo: str = "baseline") -> Optional[int]:
        r = self.query(x, algo)
        return self.keys[r] if r >= 0 else None

    def successor(self, x: int, algo: str = "baseline") -> Optional[int]:
        """Least key ``>= x``."""
        r = self.query(x, algo) + 1
        return self.keys[r] if r < self.n else None

    def space_report(self) -> Dict[str, object]:
        parts: Dict[str, int] = {}
        parts.update(self.zf.space_bits())
        parts.update(self.short.space_bits())
        parts.update(self.long.space_bits())
        core = sum(parts.values())
        unit = self.n * math.log2(self.w) if self.w > 1 else self.n
        report: Dict[str, object] = {"n": self.n, "w": self.w, "backend": self.backend,
                                     "parts": parts, "core_bits": core,
                                     "bits_per_n_log_w": core / unit}
        if self.glob is not None:
            report["global_bits"] = sum(self.glob.space_bits().values())
        if self.finger is not None:
            report["weak_prefix_entries"] = self.finger.weak.entries
            report["weak_prefix_bits"] = self.finger.weak.space_bits()
        return report


