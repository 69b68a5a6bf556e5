"""Recursive grid over weighted 2D points with capped 2-sided queries.

Points are (x, y, color, weight) tuples in rank space.  The set is cut
into columns and rows of weight about sqrt(n * tau); for every boundary
pair the per-color weights in the dominated rectangle are precomputed when
that rectangle holds at most tau distinct colors, and NULL otherwise.  A
2-sided query decomposes into one precomputed rectangle plus recursive
queries in a single row and a single column; NULL propagates.  Sets of
weight below tau^2 (or that cannot be subdivided further) are answered by
a direct scan, so the capped contract is: any non-NULL answer is exact,
and NULL implies more than tau distinct colors in the query range.
"""

from __future__ import annotations

import bisect
import math
from typing import List, Optional, Sequence

from ..core import Histogram
from ..errors import BadTau, Unsorted, UnsortedPart


def split_by_weight(points: Sequence, threshold: int, axis: int) -> List[list]:
    """Greedy slabs along one axis: a point heavier than the threshold gets
    its own slab, and a slab closes once its total weight exceeds the
    threshold.  No empty slabs are emitted."""
    if threshold < 1:
        raise BadTau(f"threshold must be >= 1, got {threshold}")
    prev = None
    for p in points:
        if prev is not None and p[axis] < prev:
            raise Unsorted(f"points not sorted on axis {axis}")
        prev = p[axis]
    slabs: List[list] = []
    cur: list = []
    cur_w = 0
    for p in points:
        w = p[3]
        if w > threshold and cur:
            slabs.append(cur)
            cur, cur_w = [], 0
        cur.append(p)
        cur_w += w
        if cur_w > threshold:
            slabs.append(cur)
            cur, cur_w = [], 0
    if cur:
        slabs.append(cur)
    return slabs


def merge_histograms(parts) -> Histogram:
    """Merge up to a few sorted histograms, summing per-color weights."""
    counts = {}
    for part in parts:
        entries = part.entries if isinstance(part, Histogram) else tuple(part)
        prev = None
        for color, weight in entries:
            if prev is not None and color <= prev:
                raise UnsortedPart(f"part not sorted at color {color}")
            prev = color
            counts[color] = counts.get(color, 0) + weight
    return Histogram.from_counts(counts)


_EMPTY = Histogram()


class GridStructure:
    """One recursion level of the grid (or a base-case scan list)."""

    def __init__(self, points, tau: int, depth: int = 0, force_base: bool = False,
                 max_depth: int = 64):
        if tau < 1:
            raise BadTau(f"tau must be >= 1, got {tau}")
        if depth > max_depth:
            raise BadTau("grid recursion exceeded its depth budget")
        for p in points:
            if p[3] < 1:
                raise BadTau(f"non-positive weight {p[3]}")
        self.tau = tau
        self.points = list(points)
        self.n = sum(p[3] for p in self.points)
        self.base = force_base or self.n < tau * tau or len(self.points) <= 1
        if self.base:
            return

        threshold = math.isqrt(self.n * tau)
        if threshold * threshold < self.n * tau:
            threshold += 1
        cols = split_by_weight(sorted(self.points, key=lambda p: p[0]), threshold, 0)
        rows = split_by_weight(sorted(self.points, key=lambda p: p[1]), threshold, 1)
        self.x_bounds = [max(p[0] for p in col) for col in cols]
        self.y_bounds = [max(p[1] for p in row) for row in rows]

        mine = len(self.points)
        self.col_children = [
            GridStructure(col, tau, depth + 1, force_base=(len(col) == mine), max_depth=max_depth)
            for col in cols
        ]
        self.row_children = [
            GridStructure(row, tau, depth + 1, force_base=(len(row) == mine), max_depth=max_depth)
            for row in rows
        ]
        self._fill_lists(cols)

    def _fill_lists(self, cols):
        # lists[i][j]: per-color weights in [0, x_i] x [0, y_j], NULL if the
        # rectangle holds more than tau colors (then all higher j are NULL too)
        ncols, nrows = len(cols), len(self.y_bounds)
        self.lists: List[List[Optional[Histogram]]] = [[None] * (nrows + 1) for _ in range(ncols + 1)]
        for j in range(nrows + 1):
            self.lists[0][j] = _EMPTY
        prefix: list = []
        for i in range(1, ncols + 1):
            prefix.extend(cols[i - 1])
            prefix.sort(key=lambda p: p[1])
            counts: dict = {}
            ptr = 0
            dead = False
            self.lists[i][0] = _EMPTY
            for j in range(1, nrows + 1):
                yj = self.y_bounds[j - 1]
                while ptr < len(prefix) and prefix[ptr][1] <= yj:
                    p = prefix[ptr]
                    counts[p[2]] = counts.get(p[2], 0) + p[3]
                    ptr += 1
                if dead or len(counts) > self.tau:
                    dead = True
                    self.lists[i][j] = None
                else:
                    self.lists[i][j] = Histogram.from_counts(counts)

    def _scan(self, a, b) -> Histogram:
        counts: dict = {}
        for x, y, color, weight in self.points:
            if x <= a and y <= b:
                counts[color] = counts.get(color, 0) + weight
        return Histogram.from_counts(counts)

    def query(self, a: int, b: int) -> Optional[Histogram]:
        """Capped type-2 answer on [0, a] x [0, b] (inclusive rank bounds)."""
        if a <= 0 or b <= 0:
            return _EMPTY
        if self.base:
            return self._scan(a, b)
        fc = bisect.bisect_right(self.x_bounds, a)
        fr = bisect.bisect_right(self.y_bounds, b)
        middle = self.lists[fc][fr]
        if middle is None:
            return None
        parts = [middle]
        if fr < len(self.y_bounds):
            upper = self.row_children[fr].query(a, b)
            if upper is None:
                return None
            parts.append(upper)
        if fc < len(self.x_bounds):
            yj = self.y_bounds[fr - 1] if fr > 0 else 0
            right = self.col_children[fc].query(a, yj)
            if right is None:
                return None
            parts.append(right)
        return merge_histograms(parts)


def build_grid(points, tau: int, max_depth: int = 64) -> GridStructure:
    return GridStructure(points, tau, max_depth=max_depth)


def query_capped_2sided(gs: GridStructure, a: int, b: int) -> Optional[Histogram]:
    return gs.query(a, b)
