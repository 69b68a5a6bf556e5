"""Colored t-shallow cuttings over 2D rank-space points.

The cells are origin-cornered rectangles produced by a staircase sweep: a
walking corner starts right of every point at y = 0, climbs until it
dominates 2t distinct colors (recording a cell), then steps left until it
dominates t, and repeats until it tops out above every point.  Every cell
contains at most 2t distinct colors, and any point covered by no cell
dominates at least t distinct colors.
"""

from __future__ import annotations

import bisect
from typing import List, Optional, Tuple

from ..errors import BadTau


class ColoredShallowCutting:
    """cells: (X, Y, clist) with X strictly decreasing, Y strictly increasing;
    cell j covers [0, X_j] x [0, Y_j]."""

    def __init__(self, points, t: int):
        if t < 1:
            raise BadTau(f"t must be >= 1, got {t}")
        self.t = t
        pts = sorted(points, key=lambda p: p[1])
        if not pts:
            self.cells: List[Tuple[int, int, tuple]] = []
            return
        x_max = max(p[0] for p in pts)
        y_max = max(p[1] for p in pts)
        minx = {}                 # color -> least x among points seen so far
        vals: List[int] = []      # sorted multiset of minx values
        cells = []
        x_cur = x_max
        ptr = 0
        while True:
            stop_y = None
            while ptr < len(pts):
                x, y, color = pts[ptr][0], pts[ptr][1], pts[ptr][2]
                ptr += 1
                old = minx.get(color)
                if old is None or x < old:
                    if old is not None:
                        vals.pop(bisect.bisect_left(vals, old))
                    bisect.insort(vals, x)
                    minx[color] = x
                if bisect.bisect_right(vals, x_cur) >= 2 * t:
                    stop_y = y
                    break
            if stop_y is None:
                cells.append((x_cur, y_max + 1, self._clist(minx, x_cur)))
                break
            cells.append((x_cur, stop_y, self._clist(minx, x_cur)))
            x_cur = vals[t] - 1   # largest x dominating at most t colors
        self.cells = cells

    @staticmethod
    def _clist(minx, x_cur):
        return tuple(sorted(c for c, v in minx.items() if v <= x_cur))

    def locate(self, x: int, y: int) -> Optional[int]:
        """Index of the smallest-area cell containing (x, y), or None."""
        if not self.cells:
            return None
        xs = [-c[0] for c in self.cells]          # ascending
        ys = [c[1] for c in self.cells]           # ascending
        j_min = bisect.bisect_left(ys, y)
        j_max = bisect.bisect_right(xs, -x) - 1
        if j_min > j_max:
            return None
        best = min(range(j_min, j_max + 1),
                   key=lambda j: self.cells[j][0] * self.cells[j][1])
        return best

    def contains(self, j: int, x: int, y: int) -> bool:
        cx, cy, _ = self.cells[j]
        return x <= cx and y <= cy


def build_shallow_cutting(points, t: int) -> ColoredShallowCutting:
    return ColoredShallowCutting(points, t)
