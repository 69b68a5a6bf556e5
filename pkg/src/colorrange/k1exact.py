"""Exact "exactly one color?" tester for 3D dominance ranges.

Colors get a uniformly random rank; a spatial tree with subtree min/max
rank aggregates answers, for any dominance range, the extreme color ranks
together with witness points.  The range holds exactly one color iff both
extremes coincide.  A point with color below (or above) a query color
exists iff the range's min rank is below (max rank above) the color's own
rank, which is the color-order subproblem formulation made static.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Dataset, Dominance3
from .errors import DimensionMismatch
from .seeding import as_seed

_LEAF = 8


@dataclass(frozen=True)
class K1Result:
    kind: str                      # "empty" | "single" | "multi"
    color: Optional[int] = None
    witness: Optional[int] = None  # point index into the dataset

    @classmethod
    def empty(cls):
        return cls("empty")

    @classmethod
    def single(cls, color, witness):
        return cls("single", color, witness)

    @classmethod
    def multi(cls):
        return cls("multi")


class _Node:
    __slots__ = ("lo", "hi", "left", "right", "pts", "min_rank", "min_wit", "max_rank", "max_wit")


class ExactK1Dominance:
    """kd-tree over rank-space 3D points with color-rank aggregates."""

    def __init__(self, ds: Dataset, seed):
        if ds.dim != 3:
            raise DimensionMismatch("exact k=1 tester needs a 3D dataset")
        self.ds = ds
        rng = as_seed(seed).rng()
        perm = list(range(ds.color_count))
        rng.shuffle(perm)
        self.color_rank = perm                    # color id -> random rank
        self.rank_of_point = [perm[p.color] for p in ds.points]
        self.root = self._build(list(range(ds.m)), 0)

    def _build(self, idxs, depth):
        node = _Node()
        pts = self.ds.points
        node.lo = tuple(min(pts[i].coords[d] for i in idxs) for d in range(3))
        node.hi = tuple(max(pts[i].coords[d] for i in idxs) for d in range(3))
        ranks = [(self.rank_of_point[i], i) for i in idxs]
        node.min_rank, node.min_wit = min(ranks)
        node.max_rank, node.max_wit = max(ranks)
        if len(idxs) <= _LEAF:
            node.pts = idxs
            node.left = node.right = None
            return node
        axis = depth % 3
        idxs.sort(key=lambda i: pts[i].coords[axis])
        mid = len(idxs) // 2
        node.pts = None
        node.left = self._build(idxs[:mid], depth + 1)
        node.right = self._build(idxs[mid:], depth + 1)
        return node

    def min_max(self, q: Dominance3):
        """(min rank, witness, max rank, witness) over the range, or None."""
        best = [None, None, None, None]
        corner = q.corner
        self._visit(self.root, corner, best)
        if best[0] is None:
            return None
        return tuple(best)

    def _visit(self, node, corner, best):
        for d in range(3):
            if node.lo[d] > corner[d]:
                return
        if all(node.hi[d] <= corner[d] for d in range(3)):
            self._offer(best, node.min_rank, node.min_wit, node.max_rank, node.max_wit)
            return
        if node.pts is not None:
            pts = self.ds.points
            for i in node.pts:
                c = pts[i].coords
                if c[0] <= corner[0] and c[1] <= corner[1] and c[2] <= corner[2]:
                    r = self.rank_of_point[i]
                    self._offer(best, r, i, r, i)
            return
        self._visit(node.left, corner, best)
        self._visit(node.right, corner, best)

    @staticmethod
    def _offer(best, mn, mn_wit, mx, mx_wit):
        if best[0] is None or mn < best[0]:
            best[0], best[1] = mn, mn_wit
        if best[2] is None or mx > best[2]:
            best[2], best[3] = mx, mx_wit


def build_exact_k1_dominance(ds: Dataset, seed) -> ExactK1Dominance:
    return ExactK1Dominance(ds, seed)


def exact_k1_query(st: ExactK1Dominance, q: Dominance3) -> K1Result:
    """Empty / Single(color, witness) / Multi for a rank-space dominance
    range; never wrong."""
    agg = st.min_max(q)
    if agg is None:
        return K1Result.empty()
    mn, mn_wit, mx, _ = agg
    if mn == mx:
        return K1Result.single(st.ds.points[mn_wit].color, mn_wit)
    return K1Result.multi()
