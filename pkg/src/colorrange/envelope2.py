"""Incremental lower envelope of lines with edge change counting.

A line ``y = a*x + b`` appears on the lower envelope exactly when its dual
point ``(a, b)`` is a vertex of the lower convex hull of all inserted dual
points, so the envelope is maintained as a dynamic 2D lower hull with exact
integer predicates.  An envelope edge is one line's maximal piece; its
identity includes the breakpoints, so shrinking a neighbour's piece counts
as one edge destroyed plus one created.  Collinear dual points are popped:
a line touching the envelope in a single point carries no edge.
"""

from __future__ import annotations

import bisect

from .errors import DuplicateLine
from .predicates import cross2


class LowerEnvelope:
    """Lower envelope of lines (a, b); lines are indexed by insertion id."""

    def __init__(self):
        self.hull = []          # line ids, dual points sorted by slope
        self.lines = {}         # id -> (a, b)
        self._line_set = set()
        self.piece_birth = {}   # id -> serial of its current edge's creation
        self.serial = 0

    def _pt(self, lid):
        return self.lines[lid]

    def pieces(self):
        """Current envelope edges as (line id, left neighbour, right neighbour)."""
        out = []
        for t, lid in enumerate(self.hull):
            left = self.hull[t - 1] if t > 0 else None
            right = self.hull[t + 1] if t + 1 < len(self.hull) else None
            out.append((lid, left, right))
        return out

    def insert(self, lid, a, b):
        """Insert a line; returns (#edges created, birth serials destroyed)."""
        self.serial += 1
        if (a, b) in self._line_set:
            raise DuplicateLine(f"line y = {a}x + {b} inserted twice")
        self._line_set.add((a, b))
        self.lines[lid] = (a, b)
        keys = [self._pt(h)[0] for h in self.hull]
        pos = bisect.bisect_left(keys, a)

        replaced = None
        if pos < len(self.hull) and self._pt(self.hull[pos])[0] == a:
            if self._pt(self.hull[pos])[1] <= b:
                return 0, []          # parallel and above: never on the envelope
            replaced = self.hull[pos]
        elif 0 < pos <= len(self.hull) - 1:
            lpt = self._pt(self.hull[pos - 1])
            rpt = self._pt(self.hull[pos])
            if cross2(lpt, rpt, (a, b)) >= 0:
                return 0, []          # on or above the current envelope

        destroyed = []
        if replaced is not None:
            destroyed.append(self.piece_birth.pop(replaced))
            self.hull.pop(pos)
        self.hull.insert(pos, lid)

        while pos >= 2 and cross2(self._pt(self.hull[pos - 2]), self._pt(self.hull[pos - 1]), (a, b)) <= 0:
            destroyed.append(self.piece_birth.pop(self.hull.pop(pos - 1)))
            pos -= 1
        while pos + 2 < len(self.hull) and cross2((a, b), self._pt(self.hull[pos + 1]), self._pt(self.hull[pos + 2])) <= 0:
            destroyed.append(self.piece_birth.pop(self.hull.pop(pos + 1)))

        created = 1
        self.piece_birth[lid] = self.serial
        if pos > 0:
            left = self.hull[pos - 1]
            destroyed.append(self.piece_birth.pop(left))
            self.piece_birth[left] = self.serial
            created += 1
        if pos + 1 < len(self.hull):
            right = self.hull[pos + 1]
            destroyed.append(self.piece_birth.pop(right))
            self.piece_birth[right] = self.serial
            created += 1
        return created, destroyed


def brute_force_envelope(lines):
    """Envelope piece structure computed from scratch (for tests): the lower
    hull of dual points as a list of line ids sorted by slope."""
    pts = sorted(range(len(lines)), key=lambda i: (lines[i][0], lines[i][1]))
    filtered = []
    for i in pts:
        if filtered and lines[filtered[-1]][0] == lines[i][0]:
            continue                  # same slope: keep the lower intercept
        filtered.append(i)
    hull = []
    for i in filtered:
        while len(hull) >= 2 and cross2(lines[hull[-2]], lines[hull[-1]], lines[i]) <= 0:
            hull.pop()
        hull.append(i)
    return hull
