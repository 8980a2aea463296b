"""``zpred`` command line.

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

from . import checks
from .bitkey import ContractError
from .image import ImageError, load, save
from .index import ALGOS, PredIndex
from .oracle import naive_pred, sorted_pred
from .statfn import FILLS, MODES
from .trace import QueryTrace
from .trie import BuildError, CompactedTrie

BENCH_COLUMNS = ("algo", "query", "d", "D", "loop_iters", "fbs_iters", "probes", "nanos")
DISTRIBUTIONS = ("uniform", "clustered", "near-member", "far")


class InputError(Exception):
    pass


# -- key files ---------------------------------------------------------------

def parse_keys(lines: Iterable[str], hex_mode: bool = False) -> Tuple[int, List[int]]:
    """Parse a key file: ``w=<int>`` header, then one key per line.

    Blank lines and ``#`` comments are skipped. Keys are ``w`` characters of
    0/1, or hex digits with ``hex_mode``. Returns ``(w, sorted keys)``.
    """
    w = None
    keys: List[int] = []
    seen = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if w is None:
            if not line.startswith("w="):
                raise InputError(f"line {lineno}: expected header 'w=<int>'")
            try:
                w = int(line[2:])
            except ValueError:
                raise InputError(f"line {lineno}: bad width {line[2:]!r}") from None
            if not 1 <= w <= 64:
                raise InputError(f"line {lineno}: width must be in 1..64")
            continue
        k = parse_key(line, w, hex_mode, lineno)
        if k in seen:
            raise InputError(f"line {lineno}: duplicate key (first on line {seen[k]})")
        seen[k] = lineno
        keys.append(k)
    if w is None:
        raise InputError("missing header 'w=<int>'")
    if not keys:
        raise InputError("key file holds no keys")
    return w, sorted(keys)


def parse_key(text: str, w: int, hex_mode: bool = False, lineno: Optional[int] = None) -> int:
    where = f"line {lineno}: " if lineno is not None else ""
    text = text.strip()
    try:
        if hex_mode:
            v = int(text, 16)
            if v >> w:
                raise ValueError
            return v
        if len(text) != w or set(text) - {"0", "1"}:
            raise ValueError
        return int(text, 2)
    except ValueError:
        form = "hex" if hex_mode else f"{w} binary digits"
        raise InputError(f"{where}expected {form}, got {text!r}") from None


def fmt_key(v: int, w: int, hex_mode: bool = False) -> str:
    if hex_mode:
        return format(v, "x").zfill((w + 3) // 4)
    return format(v, "b").zfill(w)


def _read_keyfile(path: str, hex_mode: bool) -> Tuple[int, List[int]]:
    try:
        with open(path) as fh:
            return parse_keys(fh, hex_mode)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_any(path: str, args) -> PredIndex:
    """An index image, or a key file to build from on the fly."""
    try:
        with open(path, "rb") as fh:
            head = fh.read(2)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    if head.startswith(b"{") or head == b"\x1f\x8b":
        return load(path)
    w, keys = _read_keyfile(path, getattr(args, "hex", False))
    return PredIndex.build(keys, w, backend=getattr(args, "backend", "exact"),
                           seed=getattr(args, "seed", 0))


def _algos(idx: PredIndex, choice: str) -> Sequence[str]:
    if choice == "all":
        return idx.algos
    if choice not in idx.algos:
        raise InputError(f"index has no {choice!r} search")
    return (choice,)


# -- commands ----------------------------------------------------------------

def cmd_build(args, out: TextIO) -> int:
    w, keys = _read_keyfile(args.keyfile, args.hex)
    want = set(ALGOS) if args.index == "all" else {args.index}
    idx = PredIndex.build(keys, w, backend=args.backend, seed=args.seed, fill=args.fill,
                          with_global="global" in want and len(keys) >= 2,
                          with_finger="finger" in want)
    save(idx, args.out)
    report = idx.space_report()
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(f"built {args.out}: n={idx.n} w={idx.w} backend={idx.backend} "
                  f"algos={','.join(idx.algos)} core_bits={report['core_bits']}\n")
    return 0


def cmd_query(args, out: TextIO) -> int:
    idx = _load_any(args.image, args)
    texts = args.queries or [line for line in sys.stdin.read().split() if line]
    algos = _algos(idx, args.index)
    finger = parse_key(args.finger, idx.w, args.hex) if args.finger else None
    for text in texts:
        x = parse_key(text, idx.w, args.hex)
        for algo in algos:
            r = idx.query(x, algo, finger=finger if algo == "finger" else None)
            pred = fmt_key(idx.keys[r], idx.w, args.hex) if r >= 0 else "-"
            if args.format == "json":
                row = {"algo": algo, "query": fmt_key(x, idx.w, args.hex), "rank": r,
                       "pred_key": None if r < 0 else pred}
                out.write(json.dumps(row) + "\n")
                continue
            prefix = f"{algo}," if len(algos) > 1 else ""
            out.write(f"{prefix}{fmt_key(x, idx.w, args.hex)},{r},{pred}\n")
    return 0


def verify_index(idx: PredIndex, queries: Iterable[int], algos: Sequence[str],
                 strict: bool = False, max_fingers: Optional[int] = None) -> dict:
    """Run every query through every algorithm; count wrong answers and bound breaks."""
    keys, w = idx.keys, idx.w
    mismatches = violations = total = 0
    samples: List[str] = []
    for x in queries:
        expected = naive_pred(keys, x) if idx.n <= 256 else sorted_pred(keys, x)
        dist = checks.distances(keys, x)
        traces = {}
        for algo in algos:
            if algo == "finger":
                continue
            t = QueryTrace()
            r = idx.query(x, algo, t)
            traces[algo] = t
            total += 1
            bad = []
            if r != expected:
                mismatches += 1
                samples.append(f"{algo} x={x}: got {r}, expected {expected}")
            if algo == "baseline":
                bad = checks.check_fbs(t)
            elif algo == "short":
                bad = checks.check_short(t, dist, strict)
            elif algo == "long":
                bad = checks.check_long(t, dist, w, strict)
            elif algo == "global":
                i = t.notes["bucket"]
                g = idx.glob
                bad = checks.check_global(t, keys, x, w, g.bucket_bits,
                                          g.offsets[i], g.offsets[i + 1])
            else:
                bad = checks.check_fbs(t)
            violations += len(bad)
            samples.extend(f"{algo} x={x}: {b}" for b in bad)
        if "combined" in traces and "short" in traces and "long" in traces:
            bad = checks.check_combined(traces["combined"], traces["short"], traces["long"])
            violations += len(bad)
            samples.extend(f"combined x={x}: {b}" for b in bad)
        if "finger" in algos:
            below = keys[:max(0, expected + 1)]
            if max_fingers is not None and len(below) > max_fingers:
                below = below[-max_fingers:]
            for y in below:
                t = QueryTrace()
                r = idx.query(x, "finger", t, finger=y)
                total += 1
                if r != expected:
                    mismatches += 1
                    samples.append(f"finger x={x} y={y}: got {r}, expected {expected}")
                bad = checks.check_finger(t, dist, x, y, w, strict)
                violations += len(bad)
                samples.extend(f"finger x={x} y={y}: {b}" for b in bad)
    return {"queries": total, "mismatches": mismatches, "violations": violations,
            "examples": samples[:20]}


def cmd_verify(args, out: TextIO) -> int:
    idx = _load_any(args.image, args)
    algos = _algos(idx, args.index)
    if args.mode == "exhaustive":
        if idx.w > 20:
            raise InputError("exhaustive verification needs w <= 20; use --mode sampled")
        queries: Iterable[int] = range(1 << idx.w)
    else:
        rng = random.Random(args.seed)
        queries = [rng.randrange(1 << idx.w) for _ in range(args.samples)]
    report = verify_index(idx, queries, algos, strict=args.strict, max_fingers=args.max_fingers)
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(f"queries={report['queries']} mismatches={report['mismatches']} "
                  f"violations={report['violations']}\n")
        for line in report["examples"]:
            out.write(f"  {line}\n")
    return 0 if report["mismatches"] == 0 and report["violations"] == 0 else 1


def bench_queries(keys: Sequence[int], w: int, dist: str, trials: int,
                  rng: random.Random) -> List[int]:
    top = (1 << w) - 1
    out = []
    for _ in range(trials):
        if dist == "uniform":
            x = rng.randrange(top + 1)
        elif dist == "near-member":
            x = min(top, rng.choice(keys) + rng.randrange(1, 4))
        elif dist == "clustered":
            centre = rng.choice(keys)
            spread = 1 << rng.randrange(max(1, w // 2))
            x = min(top, max(0, centre + rng.randrange(-spread, spread + 1)))
        else:  # far: middle of one of the widest gaps, or outside the key range
            gaps = sorted(((b - a, a) for a, b in zip(keys, keys[1:])), reverse=True)
            choices = [(a + g // 2) for g, a in gaps[:8]]
            if keys[0] > 0:
                choices.append(keys[0] // 2)
            if keys[-1] < top:
                choices.append(keys[-1] + (top - keys[-1] + 1) // 2)
            x = rng.choice(choices or [0])
        out.append(x)
    return out


def cmd_bench(args, out: TextIO) -> int:
    idx = _load_any(args.image, args)
    algos = _algos(idx, args.index)
    rng = random.Random(args.seed)
    queries = bench_queries(idx.keys, idx.w, args.distribution, args.trials, rng)
    rows = []
    for x in queries:
        dist = checks.distances(idx.keys, x)
        for algo in algos:
            t = QueryTrace()
            start = time.perf_counter_ns()
            idx.query(x, algo, t)
            nanos = 0 if args.no_timing else time.perf_counter_ns() - start
            rows.append((algo, fmt_key(x, idx.w, args.hex), dist.d, dist.D,
                         t.loop_iterations, t.fbs_iterations, t.static_fn_probes, nanos))
    if args.format == "json":
        out.write(json.dumps([dict(zip(BENCH_COLUMNS, r)) for r in rows]) + "\n")
    else:
        out.write(",".join(BENCH_COLUMNS) + "\n")
        for r in rows:
            out.write(",".join(map(str, r)) + "\n")
    return 0


def cmd_trie(args, out: TextIO) -> int:
    w, keys = _read_keyfile(args.keyfile, args.hex)
    out.write(CompactedTrie(keys, w).dump() + "\n")
    return 0


def cmd_space(args, out: TextIO) -> int:
    idx = _load_any(args.image, args)
    out.write(json.dumps(idx.space_report(), sort_keys=True, indent=2) + "\n")
    return 0


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zpred", description="Static predecessor search indices.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, index_default="all"):
        sp.add_argument("--index", choices=ALGOS + ("all",), default=index_default)
        sp.add_argument("--backend", choices=MODES, default="exact")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--hex", action="store_true", help="keys are hex, not binary")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("build", help="build an index image from a key file")
    sp.add_argument("keyfile")
    sp.add_argument("--out", required=True)
    sp.add_argument("--fill", choices=FILLS, default="random",
                    help="payloads for unused lossy slots")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("query", help="predecessor queries; prints query,rank,pred_key")
    sp.add_argument("image", help="index image or key file")
    sp.add_argument("queries", nargs="*", help="query keys (default: read stdin)")
    sp.add_argument("--finger", help="finger key for --index finger")
    common(sp, "baseline")
    sp.set_defaults(func=cmd_query)

    sp = sub.add_parser("verify", help="compare against the brute-force oracle")
    sp.add_argument("image", help="index image or key file")
    sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--strict", action="store_true", help="bounds without small-argument slack")
    sp.add_argument("--max-fingers", type=int, default=None,
                    help="try at most this many fingers per query (nearest first)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="per-query cost CSV: " + ",".join(BENCH_COLUMNS))
    sp.add_argument("image", help="index image or key file")
    sp.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--no-timing", action="store_true", help="write 0 for nanos")
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("trie", help="dump the compacted trie of a key file")
    sp.add_argument("keyfile")
    sp.add_argument("--hex", action="store_true")
    sp.set_defaults(func=cmd_trie)

    sp = sub.add_parser("space", help="space report of an index")
    sp.add_argument("image")
    sp.add_argument("--backend", choices=MODES, default="exact")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--hex", action="store_true")
    sp.set_defaults(func=cmd_space)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (InputError, ImageError, BuildError, ContractError) as exc:
        print(f"zpred: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
