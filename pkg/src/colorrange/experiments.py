"""Experiment drivers validating the randomized analyses, emitting CSV rows.

Each driver returns (header, rows) where rows are plain value lists; the
CLI renders them.  All randomness flows from explicit seeds, so repeated
runs are byte-identical.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

from .colortree import build_color_split_tree, node_visit_profile
from .core import Dataset, Dominance3, reduce_to_rank_space
from .generators import GenSpec, generate
from .k1mc import FAMILY_DOMINANCE, build_mc_k1, conflict_size_at, yes_rate_experiment
from .oracle import oracle_k
from .ric import (
    MODE_CLASS_BATCH,
    MODE_HIERARCHY,
    MODE_WITHIN_CLASS,
    make_insertion_plan,
    remark3_hierarchy,
    run_hull_plan,
)
from .seeding import Seed, as_seed


def _dataset_for(family: str, n: int, colors: int, seed: int) -> Dataset:
    return generate(GenSpec(family=family, m=n, m_c=min(colors, n), seed=seed))


def run_ric(family: str, mode: str, levels: int, sizes: Sequence[int], seeds: int,
            base_seed: int = 0) -> Tuple[List[str], List[list]]:
    """Structural-change counts per (size, seed) for one insertion mode."""
    header = ["family", "mode", "levels", "n", "seed", "totalCreated", "totalDestroyed"]
    rows = []
    cache = {}
    for n in sizes:
        colors = n // 2 + 1 if family == "remark1" else max(1, n // 64)
        for s in range(seeds):
            if family == "remark1":
                # the adversarial instance is deterministic in n
                ds = cache.get(n)
                if ds is None:
                    ds = cache[n] = _dataset_for(family, n, colors, 0)
            else:
                ds = _dataset_for(family, n, colors, base_seed + s)
            hierarchy = None
            if mode == MODE_HIERARCHY and family == "remark1" and levels >= 3:
                hierarchy = remark3_hierarchy(ds, levels)
            plan = make_insertion_plan(ds, mode, Seed(base_seed).child("plan", family, n, s),
                                       levels=levels, hierarchy=hierarchy)
            st = run_hull_plan(ds, plan)
            rows.append([family, mode, levels, n, base_seed + s,
                         st.total_created, st.total_destroyed])
    return header, rows


def ric_summary(rows) -> List[list]:
    """Mean created per (family, mode, n), with /n and /(n ln n) ratios."""
    acc = {}
    for family, mode, levels, n, _seed, created, destroyed in rows:
        key = (family, mode, levels, n)
        acc.setdefault(key, []).append(created)
    out = []
    for (family, mode, levels, n), vals in sorted(acc.items()):
        mean = sum(vals) / len(vals)
        out.append([family, mode, levels, n, len(vals), round(mean, 3),
                    round(mean / n, 5), round(mean / (n * math.log(n)), 5)])
    return out


def run_conflict(sizes: Sequence[int], colors: int, cap: int, builds: int,
                 queries: int, base_seed: int = 0) -> Tuple[List[str], List[list]]:
    """Lemma-3 regime: mean conflict-list size at random dominance queries
    (covered queries count 0), plus the fraction landing in bad cells."""
    header = ["family", "m", "colors", "c", "seed", "meanConflictSize", "badCellFraction"]
    rows = []
    for m in sizes:
        for b in range(builds):
            ds = _dataset_for("uniform3", m, colors, base_seed + 7 * b)
            st = build_mc_k1(ds, FAMILY_DOMINANCE, cap, Seed(base_seed).child("b", m, b))
            qrng = Seed(base_seed).child("q", m, b).rng()
            tot = bad = 0
            for _ in range(queries):
                q = Dominance3(qrng.randrange(ds.m + 1), qrng.randrange(ds.m + 1),
                               qrng.randrange(ds.m + 1))
                tot += conflict_size_at(st, q)
                cell = st.locate(q)
                bad += 1 if (cell is not None and cell.bad) else 0
            rows.append([FAMILY_DOMINANCE, m, colors, cap, base_seed + 7 * b,
                         round(tot / queries, 4), round(bad / queries, 4)])
    return header, rows


def single_color_query(ds: Dataset) -> Dominance3:
    """A dominance corner provably holding exactly one color: the corner of
    the point minimizing the coordinate sum dominates that point alone."""
    best = min(range(ds.m), key=lambda i: sum(ds.points[i].coords))
    q = Dominance3(*ds.points[best].coords)
    assert oracle_k(ds, q) == 1
    return q


def run_yesrate(m: int, colors: int, caps: Sequence[int], trials: int,
                base_seed: int = 0) -> Tuple[List[str], List[list]]:
    """Completeness rate of the Monte Carlo tester on a fixed true-k=1
    query over fresh rebuilds, per cap value."""
    header = ["family", "m", "colors", "c", "trials", "yesRate"]
    ds = _dataset_for("uniform3", m, colors, base_seed)
    q = single_color_query(ds)
    rows = []
    for cap in caps:
        rate = yes_rate_experiment(ds, FAMILY_DOMINANCE, cap, trials, q,
                                   Seed(base_seed).child("yr", cap))
        rows.append([FAMILY_DOMINANCE, m, colors, cap, trials, round(rate, 4)])
    return header, rows


def diagonal_dataset(colors: int) -> Dataset:
    """One point per color on the main diagonal: the corner (k,k,k) holds
    exactly the first k colors."""
    raws = [((i + 1, i + 1, i + 1), i, 1) for i in range(colors)]
    return reduce_to_rank_space(raws, 3)


def run_visits_exact(colors: int, ks: Sequence[int], builds: int,
                     base_seed: int = 0) -> Tuple[List[str], List[list]]:
    """Visited-node counts of the exact-mode color split tree at controlled
    k values (the balls-in-bins regime)."""
    header = ["mode", "colors", "k", "builds", "meanVisited", "visitedPerK"]
    ds = diagonal_dataset(colors)
    rows = []
    profs = {k: [] for k in ks}
    for b in range(builds):
        tree = build_color_split_tree(ds, "exact", FAMILY_DOMINANCE,
                                      Seed(base_seed).child("tree", b))
        for k in ks:
            prof = node_visit_profile(tree, [Dominance3(k, k, k)])
            profs[k].append(prof)
    for k in ks:
        mean_tot = sum(p["mean_total_visited"] for p in profs[k]) / builds
        rows.append(["exact", colors, k, builds, round(mean_tot, 3), round(mean_tot / k, 3)])
    return header, rows


def level_profile_exact(colors: int, k: int, builds: int, base_seed: int = 0) -> List[float]:
    """Mean visits per tree level for a fixed-k query over tree rebuilds."""
    ds = diagonal_dataset(colors)
    levels: List[float] = []
    for b in range(builds):
        tree = build_color_split_tree(ds, "exact", FAMILY_DOMINANCE,
                                      Seed(base_seed).child("tree", b))
        prof = node_visit_profile(tree, [Dominance3(k, k, k)])
        for lvl, v in enumerate(prof["mean_visits_per_level"]):
            while len(levels) <= lvl:
                levels.append(0.0)
            levels[lvl] += v
    return [v / builds for v in levels]


def run_visits_mc(m: int, colors: int, cap: int, builds: int, queries: int,
                  base_seed: int = 0) -> Tuple[List[str], List[list]]:
    """Bad-node charging regime: Monte Carlo tree, ratio of visited nodes
    whose range truly held one color (tester erred) to the rest."""
    header = ["mode", "m", "colors", "cap", "seed", "meanBad", "meanNonBad", "badPerNonBad"]
    rows = []
    for b in range(builds):
        ds = _dataset_for("uniform3", m, colors, base_seed + 13 * b)
        tree = build_color_split_tree(ds, "monteCarlo", FAMILY_DOMINANCE,
                                      Seed(base_seed).child("mtree", b), mc_cap=cap)
        qrng = Seed(base_seed).child("mq", b).rng()
        qs = [Dominance3(qrng.randrange(ds.m + 1), qrng.randrange(ds.m + 1),
                         qrng.randrange(ds.m + 1)) for _ in range(queries)]
        prof = node_visit_profile(tree, qs, collect_truth=True)
        ratio = prof["mean_bad_visited"] / max(1e-9, prof["mean_nonbad_visited"])
        rows.append(["monteCarlo", m, colors, cap, base_seed + 13 * b,
                     round(prof["mean_bad_visited"], 4),
                     round(prof["mean_nonbad_visited"], 4), round(ratio, 4)])
    return header, rows
