"""Capped 3- and 4-sided type-2 queries via range trees over the grid.

A balanced tree over x reduces [a,b] x [0,c] to two 2-sided queries at the
children of the lowest common ancestor of a and b: the right child answers
[0,b] x [0,c] directly and the left child answers [a,+inf) x [0,c] on an
x-mirrored copy of its points.  Stacking the same construction over y (with
y-mirrored 3-sided structures) handles [a,b] x [c,d].  NULL propagates from
any part.
"""

from __future__ import annotations

from typing import List, Optional

from ..core import Histogram
from ..errors import BadTau
from .grid import GridStructure, merge_histograms

_EMPTY = Histogram()


def _mirror(points, m_bound: int, axis: int):
    out = []
    for p in points:
        q = list(p)
        q[axis] = m_bound + 1 - p[axis]
        out.append(tuple(q))
    return out


class _XNode:
    __slots__ = ("x_min", "x_max", "left", "right", "grid_low", "grid_high", "pts")


class ThreeSidedStructure:
    """Range tree over x whose nodes hold 2-sided grids (plain and x-mirrored)."""

    def __init__(self, points, tau: int, m_bound: Optional[int] = None):
        if tau < 1:
            raise BadTau(f"tau must be >= 1, got {tau}")
        self.tau = tau
        self.points = sorted(points, key=lambda p: p[0])
        self.m_bound = m_bound if m_bound is not None else (
            max((max(p[0], p[1]) for p in self.points), default=1))
        self.root = self._build(self.points) if self.points else None

    def _build(self, pts) -> _XNode:
        node = _XNode()
        node.pts = pts
        node.x_min, node.x_max = pts[0][0], pts[-1][0]
        node.grid_low = GridStructure(pts, self.tau)
        node.grid_high = GridStructure(_mirror(pts, self.m_bound, 0), self.tau)
        if len(pts) == 1:
            node.left = node.right = None
            return node
        mid = len(pts) // 2
        node.left = self._build(pts[:mid])
        node.right = self._build(pts[mid:])
        return node

    def query(self, a: int, b: int, c: int) -> Optional[Histogram]:
        """Capped type-2 answer on [a, b] x [0, c] (inclusive rank bounds)."""
        if self.root is None or a > b or c <= 0:
            return _EMPTY
        node = self.root
        while node.left is not None:
            if b < node.right.x_min:
                node = node.left
            elif a > node.left.x_max:
                node = node.right
            else:
                break
        if node.left is None:
            counts = {}
            for x, y, color, weight in node.pts:
                if a <= x <= b and y <= c:
                    counts[color] = counts.get(color, 0) + weight
            return Histogram.from_counts(counts)
        left = node.left.grid_high.query(self.m_bound + 1 - a, c)
        if left is None:
            return None
        right = node.right.grid_low.query(b, c)
        if right is None:
            return None
        return merge_histograms([left, right])


class _YNode:
    __slots__ = ("y_min", "y_max", "left", "right", "three_low", "three_high", "pts")


class FourSidedStructure:
    """Range tree over y whose nodes hold 3-sided structures (plain and
    y-mirrored)."""

    def __init__(self, points, tau: int, m_bound: Optional[int] = None):
        if tau < 1:
            raise BadTau(f"tau must be >= 1, got {tau}")
        self.tau = tau
        self.points = sorted(points, key=lambda p: p[1])
        self.m_bound = m_bound if m_bound is not None else (
            max((max(p[0], p[1]) for p in self.points), default=1))
        self.root = self._build(self.points) if self.points else None

    def _build(self, pts) -> _YNode:
        node = _YNode()
        node.pts = pts
        node.y_min, node.y_max = pts[0][1], pts[-1][1]
        node.three_low = ThreeSidedStructure(pts, self.tau, self.m_bound)
        node.three_high = ThreeSidedStructure(_mirror(pts, self.m_bound, 1), self.tau, self.m_bound)
        if len(pts) == 1:
            node.left = node.right = None
            return node
        mid = len(pts) // 2
        node.left = self._build(pts[:mid])
        node.right = self._build(pts[mid:])
        return node

    def query(self, a: int, b: int, c: int, d: int) -> Optional[Histogram]:
        """Capped type-2 answer on [a, b] x [c, d] (inclusive rank bounds)."""
        if self.root is None or a > b or c > d:
            return _EMPTY
        node = self.root
        while node.left is not None:
            if d < node.right.y_min:
                node = node.left
            elif c > node.left.y_max:
                node = node.right
            else:
                break
        if node.left is None:
            counts = {}
            for x, y, color, weight in node.pts:
                if a <= x <= b and c <= y <= d:
                    counts[color] = counts.get(color, 0) + weight
            return Histogram.from_counts(counts)
        low = node.left.three_high.query(a, b, self.m_bound + 1 - c)
        if low is None:
            return None
        high = node.right.three_low.query(a, b, d)
        if high is None:
            return None
        return merge_histograms([low, high])


def build_3sided(points, tau: int, m_bound: Optional[int] = None) -> ThreeSidedStructure:
    return ThreeSidedStructure(points, tau, m_bound)


def query_capped_3sided(st: ThreeSidedStructure, a: int, b: int, c: int) -> Optional[Histogram]:
    return st.query(a, b, c)


def build_4sided(points, tau: int, m_bound: Optional[int] = None) -> FourSidedStructure:
    return FourSidedStructure(points, tau, m_bound)


def query_capped_4sided(st: FourSidedStructure, a: int, b: int, c: int, d: int) -> Optional[Histogram]:
    return st.query(a, b, c, d)
