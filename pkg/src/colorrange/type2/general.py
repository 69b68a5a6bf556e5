"""Uncapped type-2 counting: a range tree on colors over capped structures.

Every node owns a contiguous color range, the points of those colors, a
capped 4-sided structure, and an estimator.  A query descends from the
root: where the estimator says yes, the capped structure must produce a
non-NULL exact answer for the node's colors (the estimator's promise);
where it says no, both children are visited.  Sibling color ranges are
disjoint and ordered, so concatenating answers keeps them sorted.
"""

from __future__ import annotations

import math
from typing import List, Optional, Tuple

from ..core import Histogram
from ..errors import BadTau, CappedReturnedNullOnYes
from .estimator import RangeCountEstimator
from .ranges import FourSidedStructure


def default_parameters(n: int) -> Tuple[int, int, int]:
    """(tau, t_yes, degree) defaults: log-power caps with floors for small n."""
    lg = max(1, math.ceil(math.log2(max(2, n))))
    tau = max(8, min(n, lg ** 3))
    t_yes = max(4, lg ** 2)
    return tau, t_yes, 4


class _CNode:
    __slots__ = ("lo", "hi", "left", "right", "capped", "estimator")


class ColorRangeTree:
    def __init__(self, points, tau: Optional[int] = None, degree: Optional[int] = None,
                 t_yes: Optional[int] = None, m_bound: Optional[int] = None):
        self.points = list(points)
        n = sum(p[3] for p in self.points)
        d_tau, d_tyes, d_deg = default_parameters(max(1, n))
        self.tau = d_tau if tau is None else tau
        self.degree = d_deg if degree is None else degree
        self.t_yes = d_tyes if t_yes is None else t_yes
        if self.tau < 1:
            raise BadTau(f"tau must be >= 1, got {self.tau}")
        self.m_bound = m_bound
        colors = sorted({p[2] for p in self.points})
        self.root = self._build(colors) if colors else None

    def _build(self, colors) -> _CNode:
        node = _CNode()
        node.lo, node.hi = colors[0], colors[-1]
        pts = [p for p in self.points if node.lo <= p[2] <= node.hi]
        node.capped = FourSidedStructure(pts, self.tau, self.m_bound)
        node.estimator = RangeCountEstimator(pts, self.degree,
                                             t_yes=min(self.t_yes, self.tau), t_no=self.tau)
        if len(colors) == 1:
            node.left = node.right = None
            return node
        mid = len(colors) // 2
        node.left = self._build(colors[:mid])
        node.right = self._build(colors[mid:])
        return node

    def query(self, a: int, b: int, c: int, d: int) -> Histogram:
        hist, _ = self.query_with_stats(a, b, c, d)
        return hist

    def query_with_stats(self, a: int, b: int, c: int, d: int):
        """Exact histogram plus node-visit statistics."""
        parts: List[Histogram] = []
        stats = {"visited": 0, "yes_nodes": 0, "no_nodes": 0}
        if self.root is not None and a <= b and c <= d:
            self._walk(self.root, a, b, c, d, parts, stats)
        entries: List[Tuple[int, int]] = []
        for h in parts:
            entries.extend(h.entries)
        return Histogram(tuple(entries)), stats

    def _walk(self, node, a, b, c, d, parts, stats):
        stats["visited"] += 1
        # A leaf holds one color (k <= 1 <= tau), so its capped answer is
        # always exact; no estimator call is needed.
        if node.left is None or node.estimator.estimate_many_colors(a, b, c, d):
            stats["yes_nodes"] += 1
            ans = node.capped.query(a, b, c, d)
            if ans is None:
                raise CappedReturnedNullOnYes(
                    f"capped structure returned NULL on colors [{node.lo},{node.hi}]")
            if ans.entries:
                parts.append(ans)
            return
        stats["no_nodes"] += 1
        self._walk(node.left, a, b, c, d, parts, stats)
        self._walk(node.right, a, b, c, d, parts, stats)


def build_general(points, tau: Optional[int] = None, degree: Optional[int] = None,
                  t_yes: Optional[int] = None, m_bound: Optional[int] = None) -> ColorRangeTree:
    return ColorRangeTree(points, tau, degree, t_yes, m_bound)
