"""Per-query bound checks, read off a :class:`QueryTrace`.

Each checker returns a list of violation strings (empty when the query is
within bounds). ``strict`` selects the bounds exactly as usually stated; the
default adds the small-argument slack that the arguments behind them
actually support (an FBS window of 2 when ``d < 4``, a window of 1 when the
doubling loop stops at ``a = 0``).
"""
from __future__ import annotations

import bisect
from typing import List, Optional, Sequence

from .oracle import (DistancePair, fbs_bound, finger_loop_bound, log2c, long_loop_bound,
                     short_loop_bound, short_window_bound)
from .trace import QueryTrace


def distances(keys: Sequence[int], x: int) -> DistancePair:
    """``d`` and ``D`` by binary search; the oracle's linear scan is too slow at scale."""
    i = bisect.bisect_left(keys, x)
    gaps = []
    if i < len(keys):
        gaps.append(keys[i] - x)
    if i > 0:
        gaps.append(x - keys[i - 1])
    return DistancePair(min(gaps), max(gaps))


def check_fbs(trace: QueryTrace) -> List[str]:
    return [f"fbs ({a}..{b}) took {it} > {fbs_bound(a, b)}"
            for a, b, it in trace.fbs_calls if it > fbs_bound(a, b)]


def _doubling_window(trace: QueryTrace, strict: bool) -> List[str]:
    if trace.notes.get("exit") != "fbs" or not trace.fbs_calls:
        return []
    a, b, _ = trace.fbs_calls[-1]
    a0 = trace.notes["a"]
    limit = a0 if strict else max(a0, 1)
    if b - a > limit:
        return [f"window {b - a} > {limit}"]
    return []


def check_short(trace: QueryTrace, dist: DistancePair, strict: bool = False) -> List[str]:
    out = check_fbs(trace)
    loops = short_loop_bound(dist.d)
    if trace.loop_iterations > loops:
        out.append(f"short loop {trace.loop_iterations} > {loops} (d={dist.d})")
    if trace.notes.get("exit") in ("fbs", "full") and trace.fbs_calls:
        a, b, _ = trace.fbs_calls[-1]
        limit = short_window_bound(dist.d)
        if not strict:
            limit = max(2, limit)
        if b - a > limit:
            out.append(f"short window {b - a} > {limit:g} (d={dist.d})")
    return out


def check_long(trace: QueryTrace, dist: DistancePair, w: int, strict: bool = False) -> List[str]:
    out = check_fbs(trace)
    loops = long_loop_bound(w, dist.D)
    if trace.loop_iterations > loops:
        out.append(f"long loop {trace.loop_iterations} > {loops} (D={dist.D})")
    return out + _doubling_window(trace, strict)


def check_combined(trace: QueryTrace, short: QueryTrace, long: QueryTrace) -> List[str]:
    limit = 2 * min(short.steps, long.steps) + 2
    if trace.steps > limit:
        return [f"combined {trace.steps} steps > {limit}"]
    return []


def check_finger(trace: QueryTrace, dist: DistancePair, x: int, y: int, w: int,
                 strict: bool = False) -> List[str]:
    out = check_fbs(trace)
    e = trace.notes.get("e_len")
    if e is None:
        return out
    if w - e > log2c(x - y) + 1:
        out.append(f"finger reduction w-|e|={w - e} > log|x-y|+1")
    loops = finger_loop_bound(w, e, dist.D)
    if trace.loop_iterations > loops:
        out.append(f"finger loop {trace.loop_iterations} > {loops}")
    return out + _doubling_window(trace, strict)


def check_global(trace: QueryTrace, keys: Sequence[int], x: int, w: int, bucket_bits: int,
                 lo: int, hi: int, delta_min: Optional[int] = None) -> List[str]:
    """Inner long search against its own universe, plus the gap chain
    ``delta_min <= x+ - x- <= 2 D(x, S) <= 2 D(x, S_i)`` inside a bucket."""
    out = check_fbs(trace)
    if trace.notes.get("exit") != "inner":
        return out
    inner_w = w - bucket_bits
    mask = (1 << inner_w) - 1
    inner = distances([k & mask for k in keys[lo:hi]], x & mask)
    loops = long_loop_bound(inner_w, inner.D)
    if trace.loop_iterations > loops:
        out.append(f"global inner loop {trace.loop_iterations} > {loops}")
    outer = distances(keys, x)
    i = bisect.bisect_left(keys, x)
    if i < len(keys) and i > 0:
        gap = keys[i] - keys[i - 1]
        if delta_min is not None and gap < delta_min:
            out.append("gap below delta_min")
        if not gap <= 2 * outer.D <= 2 * inner.D:
            out.append("gap chain broken")
    return out
