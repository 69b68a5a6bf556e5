"""Command-line front end: generation, verification, benchmarks, experiments.

Exit codes: 0 pass, 1 counterexample found, 2 usage or I/O error.  All
machine-readable output is CSV; every run with identical arguments and
seeds is byte-identical (pass --no-timestamp to suppress the one comment
line that is not).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .colortree import build_color_split_tree, report_colors
from .core import Dataset, Dominance3, Halfplane2, Halfspace3, Rect2, map_query
from .errors import RangeSearchError
from .experiments import (
    ric_summary,
    run_conflict,
    run_ric,
    run_visits_exact,
    run_visits_mc,
    run_yesrate,
)
from .generators import FAMILIES as GEN_FAMILIES
from .generators import GenSpec, generate
from .k1exact import build_exact_k1_dominance, exact_k1_query
from .k1mc import FAMILIES as MC_FAMILIES
from .k1mc import FAMILY_DOMINANCE, build_mc_k1
from .oracle import oracle_colors
from .seeding import Seed
from .type2 import build_4sided, build_general
from .verify import SELECTORS, verify_structure

_MODES = ("classBatch", "withinClass", "hierarchy")


def _emit(lines, out_path=None):
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return lines


def _load_dataset(path) -> Dataset:
    return Dataset.load(path)


def _parse_bound(tok, low):
    if tok in ("-inf", "inf", "+inf"):
        return None
    v = int(tok)
    if v == 0 and low:
        return None
    return v


def _t2pts(ds):
    return [(p.coords[0], p.coords[1], p.color, p.weight) for p in ds.points]


def cmd_gen(args) -> int:
    if not args.out:
        print("gen requires --out PATH", file=sys.stderr)
        return 2
    spec = GenSpec(family=args.family, m=args.m, m_c=args.colors,
                   weight_max=args.weight_max, seed=args.seed)
    ds = generate(spec)
    ds.dump(args.out)
    print(f"wrote {ds.m} points ({ds.color_count} colors, dim {ds.dim}) to {args.out}")
    return 0


def cmd_verify(args) -> int:
    ds = _load_dataset(args.dataset)
    kwargs = {}
    if args.structure == "mcK1":
        kwargs = {"family": args.family or FAMILY_DOMINANCE, "cap": args.cap}
    elif args.structure == "colorTree":
        kwargs = {"mode": args.mode or "exact", "family": args.family or FAMILY_DOMINANCE}
    elif args.structure == "type2Capped":
        kwargs = {"tau": args.tau or 8}
    elif args.structure == "type2General":
        kwargs = {"tau": args.tau}
    ok, msg = verify_structure(ds, args.structure, args.queries, Seed(args.seed), **kwargs)
    lines = []
    if not args.no_timestamp:
        lines.append(f"# verify run at {time.strftime('%Y-%m-%dT%H:%M:%S')}")
    lines.append("structure,queries,seed,result")
    lines.append(f"{args.structure},{args.queries},{args.seed},{'pass' if ok else 'FAIL'}")
    lines.append(("PASS: " if ok else "COUNTEREXAMPLE: ") + msg)
    _emit(lines, args.out)
    return 0 if ok else 1


def _bench_one(ds, selector, queries, seed, args):
    rng = Seed(seed).child("bench").rng()
    t0 = time.perf_counter()
    if selector == "exactK1":
        st = build_exact_k1_dominance(ds, Seed(seed))
        run = lambda: exact_k1_query(st, Dominance3(
            rng.randrange(ds.m + 1), rng.randrange(ds.m + 1), rng.randrange(ds.m + 1)))
        params = f"m={ds.m}"
    elif selector == "mcK1":
        st = build_mc_k1(ds, args.family or FAMILY_DOMINANCE, args.cap, Seed(seed))
        run = lambda: st.query(Dominance3(
            rng.randrange(ds.m + 1), rng.randrange(ds.m + 1), rng.randrange(ds.m + 1)))
        params = f"m={ds.m};cap={args.cap}"
    elif selector == "colorTree":
        st = build_color_split_tree(ds, args.mode or "exact",
                                    args.family or FAMILY_DOMINANCE, Seed(seed))
        run = lambda: report_colors(st, Dominance3(
            rng.randrange(ds.m + 1), rng.randrange(ds.m + 1), rng.randrange(ds.m + 1)))
        params = f"m={ds.m};mode={args.mode or 'exact'}"
    elif selector == "type2Capped":
        st = build_4sided(_t2pts(ds), args.tau or 8, ds.m)
        run = lambda: st.query(*_rand_rect_bounds(rng, ds.m))
        params = f"m={ds.m};tau={args.tau or 8}"
    elif selector == "type2General":
        st = build_general(_t2pts(ds), tau=args.tau, m_bound=ds.m)
        run = lambda: st.query(*_rand_rect_bounds(rng, ds.m))
        params = f"m={ds.m};tau={st.tau}"
    else:
        raise RangeSearchError(f"bench does not support {selector!r}")
    build_ms = (time.perf_counter() - t0) * 1000.0
    for _ in range(min(16, queries)):
        run()
    t0 = time.perf_counter()
    for _ in range(queries):
        run()
    qps = queries / max(1e-9, time.perf_counter() - t0)
    return build_ms, qps, params


def _rand_rect_bounds(rng, m):
    a, b = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    c, d = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    return a, b, c, d


def cmd_bench(args) -> int:
    ds = _load_dataset(args.dataset)
    ok, msg = True, ""
    if args.structure in SELECTORS:
        kwargs = {}
        if args.structure == "mcK1":
            kwargs = {"family": args.family or FAMILY_DOMINANCE, "cap": args.cap}
        elif args.structure == "colorTree":
            kwargs = {"mode": args.mode or "exact", "family": args.family or FAMILY_DOMINANCE}
        elif args.structure == "type2Capped":
            kwargs = {"tau": args.tau or 8}
        elif args.structure == "type2General":
            kwargs = {"tau": args.tau}
        ok, msg = verify_structure(ds, args.structure, max(32, args.queries // 8),
                                   Seed(args.seed), **kwargs)
    if not ok:
        print(f"COUNTEREXAMPLE: {msg}", file=sys.stderr)
        return 1
    build_ms, qps, params = _bench_one(ds, args.structure, args.queries, args.seed, args)
    lines = ["structure,params,build_ms,qps,extra",
             f"{args.structure},{params},{build_ms:.2f},{qps:.1f},correct=1"]
    _emit(lines, args.out)
    return 0


def _parse_query_line(line, family):
    toks = line.split()
    if family == FAMILY_DOMINANCE:
        return Dominance3(int(toks[0]), int(toks[1]), int(toks[2]))
    if family == "halfplane2":
        return Halfplane2(Fraction(toks[0]), Fraction(toks[1]))
    return Halfspace3(Fraction(toks[0]), Fraction(toks[1]), Fraction(toks[2]))


def cmd_report(args) -> int:
    ds = _load_dataset(args.dataset)
    tree = build_color_split_tree(ds, args.mode, args.family, Seed(args.seed), mc_cap=args.cap)
    out_lines, stats_rows = [], []
    with open(args.queries_file) as fh:
        for t, line in enumerate(fh):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            q = _parse_query_line(line, args.family)
            if isinstance(q, Dominance3):
                q = map_query(ds, q)
            colors, st = report_colors(tree, q)
            if args.check and colors != oracle_colors(ds, q):
                print(f"COUNTEREXAMPLE: query {t} disagrees with the oracle", file=sys.stderr)
                return 1
            out_lines.append(" ".join(str(c) for c in colors) if colors else "-")
            stats_rows.append([t, len(colors), st.total_visited, st.bad_nodes_visited])
    _emit(out_lines, args.out)
    if args.stats_out:
        _emit(_csv(["query", "k", "totalVisited", "badNodesVisited"], stats_rows), args.stats_out)
    return 0


def cmd_type2(args) -> int:
    ds = _load_dataset(args.dataset)
    if ds.dim != 2:
        print("type2 needs a 2D dataset", file=sys.stderr)
        return 2
    pts = _t2pts(ds)
    capped = build_4sided(pts, args.tau or 8, ds.m) if args.capped else None
    general = None if args.capped else build_general(
        pts, tau=args.tau, degree=args.degree, t_yes=args.tyes, m_bound=ds.m)
    out_lines = []
    with open(args.queries_file) as fh:
        for line in fh:
            toks = line.split()
            if not toks or toks[0].startswith("#"):
                continue
            raw = Rect2(_parse_bound(toks[0], True), _parse_bound(toks[1], False),
                        _parse_bound(toks[2], True), _parse_bound(toks[3], False))
            q = map_query(ds, raw)
            a = q.xlo if q.xlo is not None else 1
            b = q.xhi if q.xhi is not None else ds.m
            c = q.ylo if q.ylo is not None else 1
            d = q.yhi if q.yhi is not None else ds.m
            hist = capped.query(a, b, c, d) if capped else general.query(a, b, c, d)
            if hist is None:
                out_lines.append("NULL")
            elif not hist.entries:
                out_lines.append("-")
            else:
                out_lines.append(" ".join(f"{c}:{w}" for c, w in hist.entries))
    _emit(out_lines, args.out)
    return 0


def _sizes(arg):
    return [int(v) for v in arg.split(",") if v]


def cmd_ric_exp(args) -> int:
    header, rows = run_ric(args.family, args.mode, args.levels, _sizes(args.sizes),
                           args.seeds, args.seed)
    lines = []
    if not args.no_timestamp:
        lines.append(f"# ric-exp at {time.strftime('%Y-%m-%dT%H:%M:%S')}")
    lines += _csv(header, rows)
    lines += _csv(["family", "mode", "levels", "n", "seeds", "meanCreated",
                   "perN", "perNlogN"], ric_summary(rows))
    _emit(lines, args.out)
    return 0


def cmd_k1_exp(args) -> int:
    header = ["family", "m", "colors", "c", "seed", "yesRate", "meanConflictSize",
              "badCellFraction"]
    _, conflict_rows = run_conflict([args.m], args.colors, args.cap, args.seeds,
                                    args.queries, args.seed)
    _, yes_rows = run_yesrate(args.m, args.colors, [args.cap], args.trials, args.seed)
    rate = yes_rows[0][-1]
    rows = []
    for fam, m, colors, cap, seed, mean_c, bad_f in conflict_rows:
        rows.append([fam, m, colors, cap, seed, rate, mean_c, bad_f])
    lines = []
    if not args.no_timestamp:
        lines.append(f"# k1-exp at {time.strftime('%Y-%m-%dT%H:%M:%S')}")
    lines += _csv(header, rows)
    _emit(lines, args.out)
    return 0


def cmd_experiment(args) -> int:
    lines = []
    if not args.no_timestamp:
        lines.append(f"# experiment at {time.strftime('%Y-%m-%dT%H:%M:%S')}")
    if args.kind == "ric":
        header, rows = run_ric(args.family, args.mode, args.levels, _sizes(args.sizes),
                               args.seeds, args.seed)
        lines += _csv(header, rows)
        summary = ric_summary(rows)
        lines += _csv(["family", "mode", "levels", "n", "seeds", "meanCreated",
                       "perN", "perNlogN"], summary)
    elif args.kind == "conflict":
        header, rows = run_conflict(_sizes(args.sizes), args.colors, args.cap,
                                    args.seeds, args.queries, args.seed)
        lines += _csv(header, rows)
        for m in _sizes(args.sizes):
            vals = [r[5] for r in rows if r[1] == m]
            lines.append(f"summary,{m},meanConflictSize,{round(sum(vals) / len(vals), 4)}")
    elif args.kind == "yesrate":
        caps = _sizes(args.caps) if args.caps else [args.cap]
        header, rows = run_yesrate(args.m, args.colors, caps, args.trials, args.seed)
        lines += _csv(header, rows)
    elif args.kind == "visits":
        if (args.mode or "exact") == "exact":
            header, rows = run_visits_exact(args.colors, _sizes(args.ks), args.seeds, args.seed)
        else:
            header, rows = run_visits_mc(args.m, args.colors, args.cap, args.seeds,
                                         args.queries, args.seed)
        lines += _csv(header, rows)
    else:
        print(f"unknown experiment kind {args.kind!r}", file=sys.stderr)
        return 2
    _emit(lines, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="colorrange",
                                 description="colored range searching structures and experiments")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")
        p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("gen", help="generate a dataset file")
    common(p)
    p.add_argument("--family", choices=GEN_FAMILIES, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--colors", type=int, default=1)
    p.add_argument("--weight-max", type=int, default=1)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="check a structure against the oracle")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--structure", choices=SELECTORS, required=True)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--family", choices=MC_FAMILIES, default=None)
    p.add_argument("--mode", choices=("exact", "monteCarlo"), default=None)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--tau", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="time builds and queries (correctness co-checked)")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--structure", choices=SELECTORS, required=True)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--family", choices=MC_FAMILIES, default=None)
    p.add_argument("--mode", choices=("exact", "monteCarlo"), default=None)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--tau", type=int, default=None)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("report", help="run color reporting queries from a file")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--queries-file", required=True)
    p.add_argument("--mode", choices=("exact", "monteCarlo"), default="exact")
    p.add_argument("--family", choices=MC_FAMILIES, default=FAMILY_DOMINANCE)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--check", action="store_true", help="co-check answers against the oracle")
    p.add_argument("--stats-out", default=None)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("type2", help="run weighted type-2 histogram queries from a file")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--queries-file", required=True)
    p.add_argument("--capped", action="store_true")
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--tyes", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(fn=cmd_type2)

    p = sub.add_parser("ric-exp", help="incremental-construction change counting")
    common(p)
    p.add_argument("--family", choices=GEN_FAMILIES, default="uniform3")
    p.add_argument("--mode", choices=_MODES, default="withinClass")
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--sizes", default="1024,2048,4096")
    p.add_argument("--seeds", type=int, default=5)
    p.set_defaults(fn=cmd_ric_exp)

    p = sub.add_parser("k1-exp", help="Monte Carlo tester statistics")
    common(p)
    p.add_argument("--family", choices=MC_FAMILIES, default=FAMILY_DOMINANCE)
    p.add_argument("--m", type=int, default=500)
    p.add_argument("--colors", type=int, default=50)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--queries", type=int, default=500)
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(fn=cmd_k1_exp)

    p = sub.add_parser("experiment", help="named experiment suites")
    common(p)
    p.add_argument("--kind", choices=("ric", "conflict", "yesrate", "visits"), required=True)
    p.add_argument("--family", default="uniform3")
    p.add_argument("--mode", default=None)
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--sizes", default="500,2000")
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--colors", type=int, default=50)
    p.add_argument("--cap", type=int, default=20)
    p.add_argument("--caps", default=None)
    p.add_argument("--m", type=int, default=500)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--queries", type=int, default=300)
    p.add_argument("--ks", default="1,4,16,64")
    p.set_defaults(fn=cmd_experiment)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (OSError, RangeSearchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
