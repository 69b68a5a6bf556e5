"""Randomized color-splitting range tree for distinct-color reporting.

Each node owns a color subset (root: all colors; children: a uniformly
random bipartition, redrawn if one side would be empty) and the points of
those colors, with a k<=1 tester plus an exact emptiness/report-one
facility.  A query walks down: empty ranges prune, a Single/Yes answer
reports the node's one color, anything else recurses into both children.
Leaves hold single colors and answer by the exact emptiness check, so
reporting is always correct (Las Vegas) in both tester modes: a Monte
Carlo "no" only costs extra recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .core import ColoredPoint, Dataset, Dominance3, Halfplane2, Halfspace3
from .errors import DimensionMismatch, IncompatibleTester
from .k1exact import ExactK1Dominance, exact_k1_query
from .k1mc import (
    FAMILY_DOMINANCE,
    FAMILY_HALFPLANE,
    FAMILY_HALFSPACE,
    _lower_hull_points,
    build_mc_k1,
)
from .seeding import Seed, as_seed

TESTER_EXACT = "exact"
TESTER_MC = "monteCarlo"

_FAMILY_DIM = {FAMILY_DOMINANCE: 3, FAMILY_HALFPLANE: 2, FAMILY_HALFSPACE: 3}


@dataclass
class QueryStats:
    visited_per_level: List[int] = field(default_factory=list)
    bad_nodes_visited: int = 0

    @property
    def total_visited(self) -> int:
        return sum(self.visited_per_level)

    def _visit(self, level):
        while len(self.visited_per_level) <= level:
            self.visited_per_level.append(0)
        self.visited_per_level[level] += 1


class _Node:
    __slots__ = ("colors", "points", "left", "right", "tester", "local_to_global",
                 "minima", "hull", "leaf_color")

    def __init__(self):
        self.left = self.right = self.tester = None
        self.leaf_color = None


def _subset_dataset(ds: Dataset, idxs, colors) -> Tuple[Dataset, list]:
    """Dataset view over a point subset: global rank coordinates are kept,
    colors are re-indexed densely (testers require dense ids)."""
    local = {c: t for t, c in enumerate(colors)}
    points = [ColoredPoint(ds.points[i].coords, local[ds.points[i].color], ds.points[i].weight)
              for i in idxs]
    raw = [ds.raw[i] for i in idxs]
    color_index = {}
    for t, i in enumerate(idxs):
        color_index.setdefault(points[t].color, []).append(t)
    sub = Dataset(ds.dim, points, raw, color_index, [[] for _ in range(ds.dim)])
    return sub, list(colors)


def _minima3(ds: Dataset, idxs):
    kept = []
    for i in sorted(idxs, key=lambda i: ds.points[i].coords):
        p = ds.points[i].coords
        if not any(q[0] <= p[0] and q[1] <= p[1] and q[2] <= p[2] for q, _ in kept):
            kept.append((p, i))
    return kept


class ColorSplitTree:
    def __init__(self, ds: Dataset, tester_mode: str, family: str, seed, mc_cap: int = 20):
        if tester_mode not in (TESTER_EXACT, TESTER_MC):
            raise IncompatibleTester(f"unknown tester mode {tester_mode!r}")
        if tester_mode == TESTER_EXACT and family != FAMILY_DOMINANCE:
            raise IncompatibleTester("the exact tester only supports 3D dominance")
        if _FAMILY_DIM[family] != ds.dim:
            raise DimensionMismatch(f"{family} needs a {_FAMILY_DIM[family]}D dataset")
        self.ds = ds
        self.mode = tester_mode
        self.family = family
        self.mc_cap = mc_cap
        all_colors = tuple(sorted(ds.color_index))
        self.root = self._build(all_colors, as_seed(seed))

    def _build(self, colors, seed: Seed):
        node = _Node()
        node.colors = colors
        node.points = [i for c in colors for i in self.ds.color_index[c]]
        self._attach_q0(node)
        if len(colors) == 1:
            node.leaf_color = colors[0]
            return node
        sub, node.local_to_global = _subset_dataset(self.ds, node.points, colors)
        if self.mode == TESTER_EXACT:
            node.tester = ExactK1Dominance(sub, seed.child("tester"))
        else:
            if self.family == FAMILY_DOMINANCE:
                bound = self.ds.m
            elif self.family == FAMILY_HALFSPACE:
                bound = max(max(abs(v) for v in p) for p in self.ds.raw)
            else:
                bound = None
            node.tester = build_mc_k1(sub, self.family, self.mc_cap, seed.child("tester"),
                                      bound=bound)
        rng = seed.child("split").rng()
        while True:
            left = tuple(c for c in colors if rng.getrandbits(1))
            if 0 < len(left) < len(colors):
                break
        right = tuple(c for c in colors if c not in set(left))
        node.left = self._build(left, seed.child("L"))
        node.right = self._build(right, seed.child("R"))
        return node

    def _attach_q0(self, node):
        node.minima = node.hull = None
        if self.family == FAMILY_DOMINANCE:
            node.minima = _minima3(self.ds, node.points)
        elif self.family == FAMILY_HALFPLANE:
            duals = [(-self.ds.raw[i][0], self.ds.raw[i][1]) for i in node.points]
            node.hull = [node.points[j] for j in _lower_hull_points(duals)]

    def _report_one(self, node, q) -> Optional[int]:
        """Exact emptiness/report-one over the node's points."""
        if self.family == FAMILY_DOMINANCE:
            for p, i in node.minima:
                if p[0] <= q.q1 and p[1] <= q.q2 and p[2] <= q.q3:
                    return i
            return None
        if self.family == FAMILY_HALFPLANE:
            for i in node.hull:
                x, y = self.ds.raw[i]
                if q.contains_raw(x, y):
                    return i
            return None
        for i in node.points:
            if q.contains_raw(*self.ds.raw[i]):
                return i
        return None

    def _point_in_range(self, i, q) -> bool:
        if self.family == FAMILY_DOMINANCE:
            return q.contains(*self.ds.points[i].coords)
        return q.contains_raw(*self.ds.raw[i])

    def _node_true_k_is_one(self, node, q) -> bool:
        seen = None
        for i in node.points:
            if self._point_in_range(i, q):
                c = self.ds.points[i].color
                if seen is None:
                    seen = c
                elif c != seen:
                    return False
        return seen is not None


def build_color_split_tree(ds: Dataset, tester_mode: str, family: str, seed,
                           mc_cap: int = 20) -> ColorSplitTree:
    return ColorSplitTree(ds, tester_mode, family, seed, mc_cap)


def report_colors(tree: ColorSplitTree, q, collect_truth: bool = False):
    """All distinct colors in the range (always exact), with visit stats.

    With collect_truth, nodes whose range truly holds exactly one color but
    whose tester answered "no" are counted as bad (Monte Carlo mode only).
    """
    stats = QueryStats()
    out: List[int] = []
    _walk(tree, tree.root, q, 0, out, stats, collect_truth)
    return sorted(out), stats


def _walk(tree, node, q, level, out, stats, collect_truth):
    stats._visit(level)
    witness = tree._report_one(node, q)
    if witness is None:
        return
    if node.leaf_color is not None:
        out.append(node.leaf_color)
        return
    if tree.mode == TESTER_EXACT:
        res = exact_k1_query(node.tester, q)
        if res.kind == "single":
            out.append(node.local_to_global[res.color])
            return
    else:
        res = node.tester.query(q)
        if res.yes:
            out.append(node.local_to_global[res.color])
            return
        if collect_truth and tree._node_true_k_is_one(node, q):
            stats.bad_nodes_visited += 1
    _walk(tree, node.left, q, level + 1, out, stats, collect_truth)
    _walk(tree, node.right, q, level + 1, out, stats, collect_truth)


def node_visit_profile(tree: ColorSplitTree, queries, collect_truth: bool = False):
    """Aggregate QueryStats over a query batch: per-level mean visits plus
    totals; used by the balls-in-bins and bad-node charging checks."""
    per_level: List[float] = []
    totals, bads = [], []
    for q in queries:
        _, st = report_colors(tree, q, collect_truth=collect_truth)
        for lvl, v in enumerate(st.visited_per_level):
            while len(per_level) <= lvl:
                per_level.append(0.0)
            per_level[lvl] += v
        totals.append(st.total_visited)
        bads.append(st.bad_nodes_visited)
    nq = max(1, len(queries))
    return {
        "mean_visits_per_level": [v / nq for v in per_level],
        "mean_total_visited": sum(totals) / nq,
        "mean_bad_visited": sum(bads) / nq,
        "mean_nonbad_visited": (sum(totals) - sum(bads)) / nq,
    }
