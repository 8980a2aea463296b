"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in the pytest terminal summary.
Run alone with ``pytest tests/test_acceptance.py -s`` to see them inline.
"""
import bisect
import math
import random
import time

import pytest

from zpred import checks
from zpred.distsearch import LongIndex, ShortIndex, pred_combined, pred_long, pred_short
from zpred.globalsearch import GlobalIndex, stats
from zpred.image import from_dict, to_dict
from zpred.index import PredIndex
from zpred.oracle import (fbs_bound, finger_loop_bound, neighbor_prefix_holds, one_side_holds, log2c,
                          long_loop_bound, naive_pred, pref_set, short_loop_bound,
                          short_window_bound)
from zpred.statfn import factory
from zpred.trace import QueryTrace
from zpred.trie import CompactedTrie
from zpred.zfast import ZFast

RESULTS = {}

W8 = 8
SWEEP_SETS = 50
SWEEP_SIZES = (1, 2, 3, 5, 17, 64, 200)


def report(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def sweep_sets():
    rng = random.Random(2024)
    return [sorted(rng.sample(range(1 << W8), SWEEP_SIZES[i % len(SWEEP_SIZES)]))
            for i in range(SWEEP_SETS)]


def run_sweep(backend, fill="random"):
    """Every x in [0, 256) through every algorithm (and every finger) on 50 sets."""
    res = {"queries": 0, "mismatches": 0, "fbs_calls": 0, "fbs_violations": 0,
           "finger_loops": 0, "finger_violations": 0, "worst_margin": None, "examples": []}
    start = time.perf_counter()
    for i, keys in enumerate(sweep_sets()):
        idx = PredIndex.build(keys, W8, backend=backend, seed=i, fill=fill)
        for x in range(1 << W8):
            exp = naive_pred(keys, x)
            dist = checks.distances(keys, x)
            runs = [(algo, None) for algo in idx.algos if algo != "finger"]
            runs += [("finger", y) for y in keys if y < x]
            for algo, y in runs:
                t = QueryTrace()
                r = idx.query(x, algo, t, finger=y)
                res["queries"] += 1
                if r != exp:
                    res["mismatches"] += 1
                    res["examples"].append((keys, x, algo, y, r, exp))
                for a, b, iters in t.fbs_calls:
                    res["fbs_calls"] += 1
                    if iters > fbs_bound(a, b):
                        res["fbs_violations"] += 1
                if algo == "finger" and "e_len" in t.notes:
                    e = t.notes["e_len"]
                    res["finger_loops"] += 1
                    margin = math.log2(x - y) + 1 - (W8 - e)
                    worst = res["worst_margin"]
                    res["worst_margin"] = margin if worst is None else min(worst, margin)
                    if margin < 0 or t.loop_iterations > finger_loop_bound(W8, e, dist.D):
                        res["finger_violations"] += 1
    res["seconds"] = time.perf_counter() - start
    return res


@pytest.fixture(scope="module")
def exact_sweep():
    return run_sweep("exact")


def test_criterion_01_oracle_equivalence(exact_sweep):
    r = exact_sweep
    report(1, r["mismatches"] == 0 and r["seconds"] < 60,
           f"{r['queries']} queries over {SWEEP_SETS} sets, {r['mismatches']} mismatches, "
           f"{r['seconds']:.1f}s (limit 60s)")


def test_criterion_02_fbs_iterations(exact_sweep):
    r = exact_sweep
    report(2, r["fbs_violations"] == 0,
           f"{r['fbs_calls']} fat binary searches, {r['fbs_violations']} over ceil(log(b-a))")


# -- w = 32, n = 10^4 ---------------------------------------------------------

W32 = 32
N32 = 10 ** 4
D_TARGETS = (1, 2 ** 4, 2 ** 8, 2 ** 16, 2 ** 24)
BIG_D_TARGETS = (2 ** 2, 2 ** 6, 2 ** 10, 2 ** 14, 2 ** 18, 2 ** 21)
PER_TARGET = 1000


@pytest.fixture(scope="module")
def big():
    rng = random.Random(32)
    keys = sorted(rng.sample(range(1 << W32), N32))
    t = CompactedTrie(keys, W32)
    make = factory("exact")
    zf = ZFast.build(t, make)
    return keys, ShortIndex.build(t, zf, make), LongIndex.build(t, zf, make), rng


def _gaps(keys):
    return [(b - a, a) for a, b in zip(keys, keys[1:])]


def short_queries(keys, rng, target):
    """Queries at short distance exactly ``target``: ``target`` above a key
    followed by a gap of at least ``2 target``. Uniform keys leave no such gap
    for the largest targets; those queries go to the middle of the widest gaps
    and the count is reported (bounds are always checked on the true d)."""
    gaps = _gaps(keys)
    room = [a for g, a in gaps if g >= 2 * target]
    wide = sorted(gaps)[-20:]
    out, clamped = [], 0
    for _ in range(PER_TARGET):
        if room:
            out.append(rng.choice(room) + target)
        else:
            g, a = rng.choice(wide)
            out.append(a + g // 2)
            clamped += 1
    return out, clamped


def long_queries(keys, rng, target):
    """Queries whose long distance is ``target``: ``target`` above a key whose
    gap lies in [target, 2 target]; else the nearest feasible gap."""
    gaps = _gaps(keys)
    fit = [(g, a) for g, a in gaps if target <= g <= 2 * target]
    if not fit:
        fit = sorted(gaps, key=lambda ga: abs(ga[0] - 1.5 * target))[:20]
    out = []
    for _ in range(PER_TARGET):
        g, a = rng.choice(fit)
        out.append(a + min(target, g - 1))
    return out


@pytest.fixture(scope="module")
def big_runs(big):
    keys, short, long, rng = big
    runs = {"short": [], "long": []}
    for target in D_TARGETS:
        qs, clamped = short_queries(keys, rng, target)
        runs["short"].append((target, qs, clamped))
    for target in BIG_D_TARGETS:
        runs["long"].append((target, long_queries(keys, rng, target), 0))
    traced = {}
    for kind, groups in runs.items():
        for target, qs, clamped in groups:
            rows = []
            for x in qs:
                ts, tl, tc = QueryTrace(), QueryTrace(), QueryTrace()
                exp = bisect.bisect_left(keys, x) - 1
                ok = (pred_short(short, x, ts) == exp and pred_long(long, x, tl) == exp
                      and pred_combined(short, long, x, tc) == exp)
                rows.append((x, checks.distances(keys, x), ts, tl, tc, ok))
            traced[(kind, target)] = (rows, clamped)
    return traced


def test_criterion_03_short_distance(big_runs):
    violations, wrong, means, parts = 0, 0, [], []
    for target in D_TARGETS:
        rows, clamped = big_runs[("short", target)]
        for x, dist, ts, _, _, ok in rows:
            wrong += not ok
            window = max((b - a for a, b, _ in ts.fbs_calls), default=0)
            if ts.loop_iterations > short_loop_bound(dist.d):
                violations += 1
            elif ts.fbs_calls and ts.notes.get("exit") in ("fbs", "full") \
                    and window > short_window_bound(dist.d):
                violations += 1
        mean = sum(r[2].static_fn_probes for r in rows) / len(rows)
        mean_log = sum(log2c(r[1].d) for r in rows) / len(rows)
        means.append(mean)
        parts.append(f"d=2^{int(math.log2(target))}: probes {mean:.1f}"
                     + (f" ({clamped} at widest gaps, mean log d {mean_log:.1f})" if clamped else ""))
    monotone = all(a <= b for a, b in zip(means, means[1:]))
    report(3, violations == 0 and wrong == 0 and monotone,
           f"{violations} bound violations, {wrong} wrong answers, mean probes "
           f"{'nondecreasing' if monotone else 'NOT monotone'}; " + "; ".join(parts))


def test_criterion_04_long_distance(big_runs):
    violations, wrong, parts = 0, 0, []
    for target in BIG_D_TARGETS:
        rows, _ = big_runs[("long", target)]
        worst = 0
        for x, dist, _, tl, _, ok in rows:
            wrong += not ok
            bad = tl.loop_iterations > long_loop_bound(W32, dist.D)
            if tl.notes.get("exit") == "fbs":
                a, b, _ = tl.fbs_calls[-1]
                bad = bad or (b - a) > tl.notes["a"]
            violations += bad
            worst = max(worst, tl.loop_iterations)
        mean_log = sum(log2c(r[1].D) for r in rows) / len(rows)
        parts.append(f"log D~{mean_log:.1f}: max loops {worst}")
    report(4, violations == 0 and wrong == 0,
           f"{violations} bound violations, {wrong} wrong answers; " + "; ".join(parts))


def test_criterion_05_combined(big_runs):
    violations, total, ratio = 0, 0, 0.0
    for rows, _ in big_runs.values():
        for _, _, ts, tl, tc, _ in rows:
            total += 1
            best = min(ts.steps, tl.steps)
            violations += tc.steps > 2 * best + 2
            ratio = max(ratio, tc.steps / max(1, best))
    report(5, violations == 0,
           f"{total} queries, {violations} with combined > 2*min+2 (worst ratio {ratio:.2f})")


# -- global ------------------------------------------------------------------

C_GLOBAL = 4  # declared constant for equally spaced sets


def test_criterion_06_global():
    rng = random.Random(6)
    w, n = 32, 1 << 10
    worst = 0
    for spacing in (1 << 22, 4194301, 3000017, 2500000, 1 << 20):
        for offset in (0, 777777):
            keys = [offset + i * spacing for i in range(n)]
            g = GlobalIndex.build(keys, w, factory("exact"))
            for _ in range(2000):
                x = rng.randrange(1 << w)
                t = QueryTrace()
                assert g.pred_global(x, t) == bisect.bisect_left(keys, x) - 1
                worst = max(worst, t.steps)
    means, parts = [], []
    step = 1 << 23
    for ratio in (2, 2 ** 8, 2 ** 16):
        delta = step // (ratio + 1)
        keys = sorted([j * step for j in range(n // 2)] + [j * step + delta for j in range(n // 2)])
        s = stats(keys)
        g = GlobalIndex.build(keys, w, factory("exact"))
        its = []
        for _ in range(3000):
            x = rng.randrange(n // 2) * step + rng.randrange(1, delta)
            t = QueryTrace()
            assert g.pred_global(x, t) == bisect.bisect_left(keys, x) - 1
            its.append(t.steps)
        means.append(sum(its) / len(its))
        parts.append(f"ratio {s.delta_max / s.delta_min:.0f}: mean {means[-1]:.2f} max {max(its)}")
    grows = all(a <= b for a, b in zip(means, means[1:])) and means[-1] > means[0]
    report(6, worst <= C_GLOBAL and grows,
           f"equal spacing: max {worst} iterations (C={C_GLOBAL}); two-scale "
           f"{'monotone' if grows else 'NOT monotone'}: " + "; ".join(parts))


def test_criterion_07_finger(exact_sweep):
    r = exact_sweep
    report(7, r["finger_violations"] == 0,
           f"{r['finger_loops']} loop-entering finger queries, {r['finger_violations']} "
           f"violations, smallest slack in w-|e| <= log|x-y|+1 is {r['worst_margin']:.2f}")


def test_criterion_08_lemmas():
    bad2 = bad3 = total = 0
    for keys in sweep_sets()[:21]:
        pref = pref_set(keys, W8)
        for x in range(1 << W8):
            total += 1
            bad2 += not neighbor_prefix_holds(keys, W8, x, pref)
            bad3 += not one_side_holds(keys, W8, x)
    report(8, bad2 == 0 and bad3 == 0,
           f"{total} (set, x) pairs: {bad2} counterexamples to the +-1 prefix lemma, "
           f"{bad3} to the one-side lemma")


def test_criterion_09_lossy():
    lines, bad = [], 0
    for fill in ("random", "zero", "max"):
        r = run_sweep("lossy", fill)
        bad += r["mismatches"]
        lines.append(f"{fill} fill: {r['mismatches']}/{r['queries']}")
    report(9, bad == 0, "lossy backend mismatches: " + ", ".join(lines))


def test_criterion_10_space():
    w = 64
    cs, parts = [], []
    for e in (10, 14, 18):
        rng = random.Random(e)
        keys = sorted(set(rng.getrandbits(w) for _ in range(1 << e)))
        t = CompactedTrie(keys, w)
        make = factory("exact")
        zf = ZFast.build(t, make)
        bits = {**zf.space_bits(), **ShortIndex.build(t, zf, make).space_bits(),
                **LongIndex.build(t, zf, make).space_bits()}
        del t, zf
        n = len(keys)
        c = sum(bits.values()) / (n * math.log2(w))
        cs.append(c)
        # distinct prefixes = what a weak prefix index over every prefix must hold
        prefixes = 1 + w + sum((a ^ b).bit_length() for a, b in zip(keys, keys[1:]))
        parts.append(f"n=2^{e}: c={c:.2f}, weak prefix entries {prefixes} = "
                     f"{prefixes / n:.1f} n")
    mean = sum(cs) / len(cs)
    stable = all(abs(c - mean) <= 0.2 * mean for c in cs)
    report(10, stable, f"core bits = c * n log w with c within +-20% of {mean:.2f}: "
           + "; ".join(parts))


def test_criterion_11_roundtrip():
    diffs, total = 0, 0
    for backend in ("exact", "lossy"):
        for i, keys in enumerate(sweep_sets()):
            idx = PredIndex.build(keys, W8, backend=backend, seed=i)
            again = from_dict(to_dict(idx))
            for x in range(1 << W8):
                runs = [(a, None) for a in idx.algos if a != "finger"]
                runs += [("finger", y) for y in keys if y < x]
                for algo, y in runs:
                    t1, t2 = QueryTrace(), QueryTrace()
                    r1 = idx.query(x, algo, t1, finger=y)
                    r2 = again.query(x, algo, t2, finger=y)
                    total += 1
                    diffs += (r1, t1) != (r2, t2)
    report(11, diffs == 0, f"{total} queries compared after save/load, {diffs} differ "
           "in answer or trace")
