"""Versioned on-disk form of a :class:`PredIndex` (JSON, optionally gzipped).

Every static function is stored as built, lossy tables included, so a loaded
index gives the same answers and the same traces as the original, off-domain
lookups and all.
"""
from __future__ import annotations

import gzip
import json
from typing import Any, Dict

from .distsearch import LongIndex, ShortIndex
from .finger import FingerSearch, WeakPrefixIndex
from .globalsearch import GlobalIndex
from .index import PredIndex
from .locator import RangeLocator, ZFastMap
from .statfn import StaticFn
from .zfast import ZFast

MAGIC = "zpred-index"
VERSION = 1


class ImageError(ValueError):
    pass


def _zf_dict(zf: ZFast) -> Dict[str, Any]:
    return {"locator": zf.locator.to_dict(), "g": zf.tmap.g.to_dict(),
            "root_extent_len": zf.root_extent_len}


def _zf_load(d: Dict[str, Any], keys, w: int) -> ZFast:
    locator = RangeLocator.from_dict(d["locator"], keys, w)
    tmap = ZFastMap(locator, StaticFn.from_dict(d["g"]))
    return ZFast(keys, w, locator, tmap, d["root_extent_len"])


def to_dict(idx: PredIndex) -> Dict[str, Any]:
    d: Dict[str, Any] = {
        "magic": MAGIC, "version": VERSION, "w": idx.w, "n": idx.n, "keys": idx.keys,
        "backend": idx.backend, "seed": idx.seed, "fill": idx.fill,
        "zfast": _zf_dict(idx.zf),
        "short": {"level": idx.short.f_level.to_dict(), "name": idx.short.f_name.to_dict()},
        "long": idx.long.f_name.to_dict(),
        "global": None, "finger": None,
    }
    if idx.glob is not None:
        g = idx.glob
        d["global"] = {"bucket_bits": g.bucket_bits, "offsets": g.offsets,
                       "buckets": [[i, _zf_dict(b.zf), b.f_name.to_dict()]
                                   for i, b in sorted(g.buckets.items())]}
    if idx.finger is not None:
        d["finger"] = idx.finger.weak.fn.to_dict()
    return d


def from_dict(d: Dict[str, Any]) -> PredIndex:
    if d.get("magic") != MAGIC:
        raise ImageError("not an index image")
    if d.get("version") != VERSION:
        raise ImageError(f"unsupported image version {d.get('version')!r}")
    w, keys = d["w"], d["keys"]
    if len(keys) != d["n"]:
        raise ImageError("key count does not match header")
    zf = _zf_load(d["zfast"], keys, w)
    short = ShortIndex(zf, StaticFn.from_dict(d["short"]["level"]),
                       StaticFn.from_dict(d["short"]["name"]))
    long = LongIndex(zf, StaticFn.from_dict(d["long"]))
    glob = None
    if d["global"] is not None:
        gd = d["global"]
        bits = gd["bucket_bits"]
        offsets = gd["offsets"]
        inner_w = w - bits
        mask = (1 << inner_w) - 1
        buckets = {}
        for i, zd, fd in gd["buckets"]:
            low = [k & mask for k in keys[offsets[i]:offsets[i + 1]]]
            buckets[i] = LongIndex(_zf_load(zd, low, inner_w), StaticFn.from_dict(fd))
        glob = GlobalIndex(keys, w, bits, offsets, buckets)
    finger = None
    if d["finger"] is not None:
        finger = FingerSearch(zf, WeakPrefixIndex(keys, w, StaticFn.from_dict(d["finger"])))
    return PredIndex(keys, w, zf, short, long, glob, finger, d["backend"], d["seed"], d["fill"])


def _opener(path: str):
    return gzip.open if str(path).endswith(".gz") else open


def save(idx: PredIndex, path: str) -> None:
    with _opener(path)(path, "wt") as fh:
        json.dump(to_dict(idx), fh, separators=(",", ":"))


def load(path: str) -> PredIndex:
    try:
        with _opener(path)(path, "rt") as fh:
            d = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError, gzip.BadGzipFile) as exc:
        raise ImageError(f"{path}: not a readable index image ({exc})") from None
    if not isinstance(d, dict):
        raise ImageError(f"{path}: not an index image")
    return from_dict(d)
