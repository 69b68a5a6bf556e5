"""Estimator for "does this rectangle hold few colors?" with a promise gap.

A degree-B range tree over x stores, for every node and child run (i..j),
the run's points sorted by y with same-color y-predecessor links.  The
distinct colors of one canonical set restricted to y in [c, d] are counted
exactly: a point is the first of its color in the range iff its predecessor
lies below c.  A query decomposes [a, b] into canonical sets (at most two
per level plus two leaf scans); the structure answers yes iff every set
count stays within the effective per-set threshold, which is clamped so
that yes implies at most T_no distinct colors overall.
"""

from __future__ import annotations

import bisect
from typing import List, Optional, Tuple

from ..errors import BadThresholds


class _ENode:
    __slots__ = ("x_min", "x_max", "children", "pts", "runs")


class RangeCountEstimator:
    def __init__(self, points, degree: int = 4, t_yes: int = 4, t_no: int = 8):
        if degree < 2:
            raise BadThresholds(f"degree must be >= 2, got {degree}")
        if t_yes > t_no or t_yes < 1:
            raise BadThresholds(f"need 1 <= T_yes <= T_no, got {t_yes}, {t_no}")
        self.degree = degree
        self.t_yes = t_yes
        self.t_no = t_no
        pts = sorted(points, key=lambda p: p[0])
        self.root = self._build(pts) if pts else None
        depth = self._depth(self.root)
        self.max_sets = 2 * depth + 2
        self.t_yes_effective = max(1, min(t_yes, t_no // self.max_sets))

    def _build(self, pts) -> _ENode:
        node = _ENode()
        node.pts = pts
        node.x_min, node.x_max = pts[0][0], pts[-1][0]
        node.runs = {}
        if len(pts) <= self.degree:
            node.children = None
            return node
        size = (len(pts) + self.degree - 1) // self.degree
        node.children = [self._build(pts[t:t + size]) for t in range(0, len(pts), size)]
        for i in range(len(node.children)):
            run_pts: list = []
            for j in range(i, len(node.children)):
                run_pts.extend(node.children[j].pts)
                node.runs[(i, j)] = self._make_set(run_pts)
        return node

    @staticmethod
    def _make_set(run_pts):
        by_y = sorted(run_pts, key=lambda p: p[1])
        last_y: dict = {}
        ys, prevs = [], []
        for p in by_y:
            ys.append(p[1])
            prevs.append(last_y.get(p[2], 0))
            last_y[p[2]] = p[1]
        return (ys, prevs)

    def _depth(self, node) -> int:
        d = 0
        while node is not None and node.children is not None:
            node = node.children[0]
            d += 1
        return d + 1

    def decompose(self, a: int, b: int) -> List[Tuple]:
        """Canonical sets covering x in [a, b]: ("run", ys, prevs) entries
        plus ("scan", pts) entries for the at most two boundary leaves."""
        out: List[Tuple] = []
        if self.root is not None and a <= b:
            self._decompose(self.root, a, b, out)
        return out

    def _decompose(self, node, a, b, out):
        if a > node.x_max or b < node.x_min:
            return
        if node.children is None:
            out.append(("scan", [p for p in node.pts if a <= p[0] <= b]))
            return
        inside = [t for t, ch in enumerate(node.children)
                  if a <= ch.x_min and ch.x_max <= b]
        if inside:
            i, j = inside[0], inside[-1]
            ys, prevs = node.runs[(i, j)]
            out.append(("run", ys, prevs))
            for t, ch in enumerate(node.children):
                if t < i or t > j:
                    self._decompose(ch, a, b, out)
        else:
            for ch in node.children:
                self._decompose(ch, a, b, out)

    @staticmethod
    def count_distinct(entry, c: int, d: int, limit: Optional[int] = None) -> int:
        """Exact distinct-color count of one canonical set with y in [c, d];
        stops early at limit + 1 when a limit is given."""
        if entry[0] == "scan":
            seen = set()
            for p in entry[1]:
                if c <= p[1] <= d:
                    seen.add(p[2])
                    if limit is not None and len(seen) > limit:
                        break
            return len(seen)
        _, ys, prevs = entry
        lo = bisect.bisect_left(ys, c)
        hi = bisect.bisect_right(ys, d)
        count = 0
        for t in range(lo, hi):
            if prevs[t] < c:
                count += 1
                if limit is not None and count > limit:
                    break
        return count

    def estimate_many_colors(self, a: int, b: int, c: int, d: int) -> bool:
        """True ("yes") guarantees at most T_no distinct colors in the
        rectangle; False ("no") only means the count may exceed the per-set
        threshold, so the caller should recurse."""
        sets = self.decompose(a, b)
        total = 0
        for entry in sets:
            cnt = self.count_distinct(entry, c, d, limit=self.t_yes_effective)
            if cnt > self.t_yes_effective:
                return False
            total += cnt
            if total > self.t_no:
                return False
        return True


def build_estimator(points, degree: int = 4, t_yes: int = 4, t_no: int = 8) -> RangeCountEstimator:
    return RangeCountEstimator(points, degree, t_yes, t_no)
