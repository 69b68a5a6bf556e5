"""Monte Carlo "exactly one color?" testers via sampled conflict lists.

Each color class joins the sample R independently with probability 1/2.
The region not covered by R's ranges is decomposed into cells, each storing
the distinct colors whose ranges intersect it (the conflict list) when that
list has at most `cap` colors, and a "bad" mark otherwise.  A query locates
its cell; if the query is covered or the cell is bad the answer is "no",
otherwise each conflict color is tested with an exact per-color emptiness
structure and the answer is "yes" iff exactly one color is present.  A
"yes" is therefore always correct; only "no" can err.

Families: 3D dominance (cells are staircase boxes per z-slab), 2D halfplane
(vertical slabs under the lower envelope of sampled dual lines), and 3D
halfspace (prisms under the bottom-vertex triangulation of the lower
envelope of sampled dual planes).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .core import Dataset, Dominance3, Halfplane2, Halfspace3
from .errors import CapTooSmall, DimensionMismatch, NotSingleColor, UnknownColor
from .oracle import oracle_k
from .seeding import Seed, as_seed

FAMILY_DOMINANCE = "dominance3"
FAMILY_HALFPLANE = "halfplane2"
FAMILY_HALFSPACE = "halfspace3"

FAMILIES = (FAMILY_DOMINANCE, FAMILY_HALFPLANE, FAMILY_HALFSPACE)


@dataclass(frozen=True)
class McResult:
    yes: bool
    color: Optional[int] = None
    witness: Optional[int] = None
    reason: str = ""


class _Cell:
    """One decomposition cell: stored conflict list (or bad) plus geometry."""

    __slots__ = ("conflict", "true_count", "geom")

    def __init__(self, colors, cap, geom):
        self.true_count = len(colors)
        self.conflict = tuple(colors) if len(colors) <= cap else None
        self.geom = geom

    @property
    def bad(self):
        return self.conflict is None


def _sample_colors(color_count, rng):
    return frozenset(c for c in range(color_count) if rng.getrandbits(1))


# ---------------------------------------------------------------------------
# 3D dominance


def _stair_insert(stair, x, y, idx):
    pos = bisect.bisect_left(stair, (x,))
    if pos > 0 and stair[pos - 1][1] <= y:
        return
    end = pos
    while end < len(stair) and stair[end][1] >= y:
        end += 1
    stair[pos:end] = [(x, y, idx)]


def _stair_dominated(stair, cx, cy):
    """Index of a staircase point <= (cx, cy), or None."""
    pos = bisect.bisect_right(stair, (cx, float("inf")))
    if pos > 0 and stair[pos - 1][1] <= cy:
        return stair[pos - 1][2]
    return None


class McDominance:
    family = FAMILY_DOMINANCE

    def __init__(self, ds: Dataset, cap: int, seed, bound: Optional[int] = None):
        if ds.dim != 3:
            raise DimensionMismatch("dominance tester needs a 3D dataset")
        if cap < 1:
            raise CapTooSmall(f"cap must be >= 1, got {cap}")
        self.ds = ds
        self.cap = cap
        # Upper end of the query grid per axis (the global rank bound when
        # this structure covers a subset with global coordinates).
        self.bound = bound if bound is not None else max(
            [ds.m] + [max(p.coords) for p in ds.points])
        rng = as_seed(seed).rng()
        self.sampled_colors = _sample_colors(ds.color_count, rng)

        self.color_minima = self._build_minima()

        pts = ds.points
        sampled = sorted((pts[i].coords[2], i) for i in range(ds.m)
                         if pts[i].color in self.sampled_colors)
        by_z = sorted(range(ds.m), key=lambda i: pts[i].coords[2])

        # Slab s covers query z in [zstarts[s], zends[s]]; its uncovered
        # cross-section is cut into boxes at the sampled-minima staircase.
        self.zstarts = [0] + [z for z, _ in sampled]
        self.zends = [z - 1 for z, _ in sampled] + [self.bound]
        self.slab_xstarts: List[List[int]] = []
        self.slab_cells: List[List[_Cell]] = []

        color_stairs = [[] for _ in range(ds.color_count)]
        zptr = 0
        stair: List[Tuple[int, int, int]] = []
        sptr = 0
        for s in range(len(self.zstarts)):
            while sptr < len(sampled) and sampled[sptr][0] <= self.zstarts[s]:
                i = sampled[sptr][1]
                _stair_insert(stair, pts[i].coords[0], pts[i].coords[1], i)
                sptr += 1
            zhi = self.zends[s]
            while zptr < ds.m and pts[by_z[zptr]].coords[2] <= zhi:
                i = by_z[zptr]
                _stair_insert(color_stairs[pts[i].color], pts[i].coords[0], pts[i].coords[1], i)
                zptr += 1
            bnd = self.bound
            xstarts, cells = [0], []
            if not stair:
                cells.append(self._make_cell(color_stairs, (bnd, bnd, zhi), (0, bnd, bnd)))
            else:
                cells.append(self._make_cell(color_stairs, (stair[0][0] - 1, bnd, zhi),
                                             (0, stair[0][0] - 1, bnd)))
                for j in range(len(stair)):
                    xlo = stair[j][0]
                    xhi = stair[j + 1][0] - 1 if j + 1 < len(stair) else bnd
                    yhi = stair[j][1] - 1
                    xstarts.append(xlo)
                    cells.append(self._make_cell(color_stairs, (xhi, yhi, zhi), (xlo, xhi, yhi)))
            self.slab_xstarts.append(xstarts)
            self.slab_cells.append(cells)

    def _build_minima(self):
        out = []
        pts = self.ds.points
        for c in range(self.ds.color_count):
            kept = []
            for i in sorted(self.ds.color_index[c], key=lambda i: pts[i].coords):
                p = pts[i].coords
                if not any(q[0] <= p[0] and q[1] <= p[1] and q[2] <= p[2] for q, _ in kept):
                    kept.append((p, i))
            out.append(kept)
        return out

    def _make_cell(self, color_stairs, corner, xband):
        colors = [c for c in range(self.ds.color_count)
                  if _stair_dominated(color_stairs[c], corner[0], corner[1]) is not None]
        return _Cell(colors, self.cap, (xband, corner))

    def cells(self):
        return [c for slab in self.slab_cells for c in slab]

    def cell_corner(self, cell):
        return cell.geom[1]

    def locate(self, q: Dominance3) -> Optional[_Cell]:
        """Cell containing the query corner, or None if it is covered."""
        s = bisect.bisect_right(self.zstarts, q.q3) - 1
        if s < 0 or q.q3 > self.zends[s]:
            return None
        xstarts = self.slab_xstarts[s]
        b = bisect.bisect_right(xstarts, q.q1) - 1
        cell = self.slab_cells[s][b]
        _, xhi, yhi = cell.geom[0]
        if q.q1 > xhi or q.q2 > yhi:
            return None
        return cell

    def covered(self, q: Dominance3) -> bool:
        return self.locate(q) is None

    def per_color_empty(self, color, q: Dominance3) -> bool:
        return self.color_witness(color, q) is None

    def color_witness(self, color, q: Dominance3):
        if not 0 <= color < self.ds.color_count:
            raise UnknownColor(str(color))
        for p, i in self.color_minima[color]:
            if p[0] <= q.q1 and p[1] <= q.q2 and p[2] <= q.q3:
                return i
        return None

    def query(self, q: Dominance3) -> McResult:
        cell = self.locate(q)
        if cell is None:
            return McResult(False, reason="covered")
        if cell.bad:
            return McResult(False, reason="bad-cell")
        present = []
        for color in cell.conflict:
            w = self.color_witness(color, q)
            if w is not None:
                present.append((color, w))
                if len(present) > 1:
                    return McResult(False, reason="k>1")
        if len(present) == 1:
            return McResult(True, present[0][0], present[0][1], reason="ok")
        return McResult(False, reason="k=0")


# ---------------------------------------------------------------------------
# 2D halfplane (dual: lower envelope of lines)


def _lower_hull_lines(lines):
    """Indices forming the lower hull of (slope, intercept) dual points."""
    order = sorted(range(len(lines)), key=lambda i: (lines[i][0], lines[i][1]))
    filtered = []
    for i in order:
        if filtered and lines[filtered[-1]][0] == lines[i][0]:
            continue
        filtered.append(i)
    hull = []
    for i in filtered:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = lines[hull[-2]], lines[hull[-1]]
            if (x2 - x1) * (lines[i][1] - y1) - (y2 - y1) * (lines[i][0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def _lower_hull_points(points):
    """Lower hull over 2D integer points, returning indices (general use)."""
    return _lower_hull_lines(points)


class McHalfplane:
    family = FAMILY_HALFPLANE

    def __init__(self, ds: Dataset, cap: int, seed, bound: Optional[int] = None):
        if ds.dim != 2:
            raise DimensionMismatch("halfplane tester needs a 2D dataset")
        if cap < 1:
            raise CapTooSmall(f"cap must be >= 1, got {cap}")
        self.ds = ds
        self.cap = cap
        rng = as_seed(seed).rng()
        self.sampled_colors = _sample_colors(ds.color_count, rng)

        # dual line of point (x, y): value(alpha) = -x * alpha + y
        self.duals = [(-x, y) for x, y in ds.raw]
        self.color_hulls = [
            [ds.color_index[c][j] for j in _lower_hull_points(
                [self.duals[i] for i in ds.color_index[c]])]
            for c in range(ds.color_count)
        ]

        sampled_idx = [i for i in range(ds.m) if ds.points[i].color in self.sampled_colors]
        hull_local = _lower_hull_lines([self.duals[i] for i in sampled_idx])
        env = [sampled_idx[j] for j in hull_local]
        env.reverse()                       # pieces in +x order: slopes decreasing
        self.env = env
        self.breaks: List[Fraction] = []
        for j in range(len(env) - 1):
            (a1, b1), (a2, b2) = self.duals[env[j]], self.duals[env[j + 1]]
            self.breaks.append(Fraction(b2 - b1, a1 - a2))
        self.cells_list = [self._make_cell(j) for j in range(len(env))] if env else \
            [_Cell(list(range(ds.color_count)), cap, None)]

    def _below_at(self, line, x: Fraction) -> Fraction:
        a, b = line
        return a * x + b

    def _intersects_slab(self, line, j) -> bool:
        e = self.duals[self.env[j]]
        xl = self.breaks[j - 1] if j > 0 else None
        xr = self.breaks[j] if j < len(self.breaks) else None
        if xl is None:
            if line[0] > e[0] or (line[0] == e[0] and line[1] <= e[1]):
                return True
        elif self._below_at(line, xl) <= self._below_at(e, xl):
            return True
        if xr is None:
            return line[0] < e[0] or (line[0] == e[0] and line[1] <= e[1])
        return self._below_at(line, xr) <= self._below_at(e, xr)

    def _make_cell(self, j):
        colors = sorted({self.ds.points[i].color for i in range(self.ds.m)
                         if self._intersects_slab(self.duals[i], j)})
        return _Cell(colors, self.cap, j)

    def cells(self):
        return self.cells_list

    def _coords(self, q: Halfplane2):
        return Fraction(q.alpha), Fraction(q.beta)

    def locate(self, q: Halfplane2) -> Optional[_Cell]:
        alpha, beta = self._coords(q)
        if not self.env:
            return self.cells_list[0]
        j = bisect.bisect_left(self.breaks, alpha)
        e = self.duals[self.env[j]]
        if beta >= self._below_at(e, alpha):
            return None                    # on or above the envelope: covered
        return self.cells_list[j]

    def covered(self, q: Halfplane2) -> bool:
        return self.locate(q) is None

    def per_color_empty(self, color, q: Halfplane2) -> bool:
        return self.color_witness(color, q) is None

    def color_witness(self, color, q: Halfplane2):
        if not 0 <= color < self.ds.color_count:
            raise UnknownColor(str(color))
        alpha, beta = self._coords(q)
        for i in self.color_hulls[color]:
            if self._below_at(self.duals[i], alpha) <= beta:
                return i
        return None

    def query(self, q: Halfplane2) -> McResult:
        cell = self.locate(q)
        if cell is None:
            return McResult(False, reason="covered")
        if cell.bad:
            return McResult(False, reason="bad-cell")
        present = []
        for color in cell.conflict:
            w = self.color_witness(color, q)
            if w is not None:
                present.append((color, w))
                if len(present) > 1:
                    return McResult(False, reason="k>1")
        if len(present) == 1:
            return McResult(True, present[0][0], present[0][1], reason="ok")
        return McResult(False, reason="k=0")


# ---------------------------------------------------------------------------
# 3D halfspace (dual: lower envelope of planes, bottom-vertex triangulation)


class _Vertex:
    __slots__ = ("hx", "hy", "hz", "hd")       # homogeneous ints, hd > 0

    def __init__(self, hx, hy, hz, hd):
        if hd < 0:
            hx, hy, hz, hd = -hx, -hy, -hz, -hd
        from math import gcd

        g = gcd(gcd(abs(hx), abs(hy)), gcd(abs(hz), hd)) or 1
        self.hx, self.hy, self.hz, self.hd = hx // g, hy // g, hz // g, hd // g

    def key(self):
        return (self.hx, self.hy, self.hz, self.hd)

    def xy(self):
        return (Fraction(self.hx, self.hd), Fraction(self.hy, self.hd))

    def z(self):
        return Fraction(self.hz, self.hd)


def _plane_at_vertex(plane, v: _Vertex):
    """Sign of plane(v.x, v.y) - v.z, scaled by the positive denominator."""
    a, b, c = plane
    return a * v.hx + b * v.hy + c * v.hd - v.hz


class McHalfspace:
    family = FAMILY_HALFSPACE

    def __init__(self, ds: Dataset, cap: int, seed, bound: Optional[int] = None):
        if ds.dim != 3:
            raise DimensionMismatch("halfspace tester needs a 3D dataset")
        if cap < 1:
            raise CapTooSmall(f"cap must be >= 1, got {cap}")
        self.ds = ds
        self.cap = cap
        rng = as_seed(seed).rng()
        self.sampled_colors = _sample_colors(ds.color_count, rng)

        # dual plane of point (x, y, z): value(ax, ay) = -x*ax - y*ay + z
        self.duals = [(-x, -y, z) for x, y, z in ds.raw]
        coord_max = max((max(abs(v) for v in p) for p in ds.raw), default=1)
        self.region = 4 * max(1, coord_max, bound or 0)
        vmax = max((abs(a) + abs(b)) * self.region + abs(c) for a, b, c in self.duals) if ds.m else 1
        k = vmax // self.region + 2
        m2 = 2 * self.region
        walls = [(-k, 0, k * m2), (k, 0, k * m2), (0, -k, k * m2), (0, k, k * m2)]

        sampled_idx = [i for i in range(ds.m) if ds.points[i].color in self.sampled_colors]
        planes = [self.duals[i] for i in sampled_idx] + walls
        n_data = len(sampled_idx)
        self.tris = []                      # (plane dual tuple, [v1, v2, v3])
        if n_data:
            self._build_cells(planes, n_data)
        self.cells_list = [self._make_cell(t) for t in range(len(self.tris))]
        if not n_data:
            self.cells_list = [_Cell(list(range(ds.color_count)), cap, None)]
            self.tris = [None]

    def _build_cells(self, planes, n_data):
        from .predicates import det3

        verts = {}
        npl = len(planes)
        for i in range(npl):
            a1, b1, c1 = planes[i]
            for j in range(i + 1, npl):
                a2, b2, c2 = planes[j]
                for l in range(j + 1, npl):
                    a3, b3, c3 = planes[l]
                    # z = a*x + b*y + c for each plane, as rows of a Cramer system
                    r1, r2, r3 = (a1, b1, -1), (a2, b2, -1), (a3, b3, -1)
                    det = det3(r1, r2, r3)
                    if det == 0:
                        continue
                    dx = det3((-c1, b1, -1), (-c2, b2, -1), (-c3, b3, -1))
                    dy = det3((a1, -c1, -1), (a2, -c2, -1), (a3, -c3, -1))
                    dz = a1 * dx + b1 * dy + c1 * det
                    v = _Vertex(dx, dy, dz, det)
                    if all(_plane_at_vertex(p, v) >= 0 for p in planes):
                        verts.setdefault(v.key(), v)
        by_plane = {}
        for v in verts.values():
            for t, p in enumerate(planes):
                if _plane_at_vertex(p, v) == 0:
                    by_plane.setdefault(t, []).append(v)
        for t in range(n_data):            # wall faces carry no cells
            face = by_plane.get(t, [])
            ring = self._convex_ring(face)
            if len(ring) < 3:
                continue
            zb = min(range(len(ring)), key=lambda s: (ring[s].z(), ring[s].key()))
            ring = ring[zb:] + ring[:zb]
            for s in range(1, len(ring) - 1):
                self.tris.append((planes[t], (ring[0], ring[s], ring[s + 1])))

    @staticmethod
    def _convex_ring(face):
        pts = {}
        for v in face:
            pts.setdefault(v.xy(), v)
        if len(pts) < 3:
            return list(pts.values())
        items = sorted(pts.items())
        coords = [xy for xy, _ in items]

        def half(seq):
            out = []
            for p in seq:
                while len(out) >= 2 and (
                        (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                        - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])) <= 0:
                    out.pop()
                out.append(p)
            return out

        lower = half(coords)
        upper = half(coords[::-1])
        ring_xy = lower[:-1] + upper[:-1]
        return [pts[xy] for xy in ring_xy]

    def _make_cell(self, t):
        plane, tri = self.tris[t]
        colors = set()
        for i in range(self.ds.m):
            pl = self.duals[i]
            if any(_plane_at_vertex(pl, v) <= 0 for v in tri):
                colors.add(self.ds.points[i].color)
        return _Cell(sorted(colors), self.cap, t)

    def cells(self):
        return self.cells_list

    def _coords(self, q: Halfspace3):
        return Fraction(q.alpha), Fraction(q.beta), Fraction(q.gamma)

    def locate(self, q: Halfspace3) -> Optional[_Cell]:
        if self.tris and self.tris[0] is None:
            return self.cells_list[0]      # empty sample: one cell, all colors
        ax, ay, gz = self._coords(q)
        for t, (plane, tri) in enumerate(self.tris):
            if self._tri_contains(tri, ax, ay):
                a, b, c = plane
                if gz < a * ax + b * ay + c:
                    return self.cells_list[t]
                return None                # on or above the envelope: covered
        return None

    @staticmethod
    def _tri_contains(tri, ax, ay):
        signs = []
        for s in range(3):
            x1, y1 = tri[s].xy()
            x2, y2 = tri[(s + 1) % 3].xy()
            cr = (x2 - x1) * (ay - y1) - (y2 - y1) * (ax - x1)
            signs.append((cr > 0) - (cr < 0))
        return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)

    def covered(self, q: Halfspace3) -> bool:
        ax, ay, gz = self._coords(q)
        for i in range(self.ds.m):
            if self.ds.points[i].color in self.sampled_colors:
                a, b, c = self.duals[i]
                if a * ax + b * ay + c <= gz:
                    return True
        return False

    def per_color_empty(self, color, q: Halfspace3) -> bool:
        return self.color_witness(color, q) is None

    def color_witness(self, color, q: Halfspace3):
        if not 0 <= color < self.ds.color_count:
            raise UnknownColor(str(color))
        ax, ay, gz = self._coords(q)
        for i in self.ds.color_index[color]:
            a, b, c = self.duals[i]
            if a * ax + b * ay + c <= gz:
                return i
        return None

    def query(self, q: Halfspace3) -> McResult:
        cell = self.locate(q)
        if cell is None:
            return McResult(False, reason="covered-or-outside")
        if cell.bad:
            return McResult(False, reason="bad-cell")
        present = []
        for color in cell.conflict:
            w = self.color_witness(color, q)
            if w is not None:
                present.append((color, w))
                if len(present) > 1:
                    return McResult(False, reason="k>1")
        if len(present) == 1:
            return McResult(True, present[0][0], present[0][1], reason="ok")
        return McResult(False, reason="k=0")


# ---------------------------------------------------------------------------


_BUILDERS = {
    FAMILY_DOMINANCE: McDominance,
    FAMILY_HALFPLANE: McHalfplane,
    FAMILY_HALFSPACE: McHalfspace,
}


def build_mc_k1(ds: Dataset, family: str, cap: int, seed, bound: Optional[int] = None):
    """Build the sampled-conflict-list tester for one query family.

    `bound` widens the structure's notion of the query domain; the color
    split tree passes the global extent when building on point subsets that
    keep global coordinates."""
    try:
        builder = _BUILDERS[family]
    except KeyError:
        raise DimensionMismatch(f"unknown family {family!r}") from None
    return builder(ds, cap, seed, bound=bound)


def mc_k1_query(st, q) -> McResult:
    """One-sided test: Yes(color) implies the range holds exactly that color."""
    return st.query(q)


def per_color_empty(st, color, q) -> bool:
    """True iff no point of `color` lies in the range (exact)."""
    return st.per_color_empty(color, q)


def conflict_size_at(st, q) -> int:
    """|L_{cell(q)}|, counting covered queries as 0 (the quantity bounded by
    the sampling analysis)."""
    cell = st.locate(q)
    return 0 if cell is None else cell.true_count


def yes_rate_experiment(ds: Dataset, family: str, cap: int, trials: int, q, seed) -> float:
    """Empirical Yes probability for a fixed true-k=1 query over fresh
    rebuilds.  Raises NotSingleColor if the oracle disagrees on k=1."""
    if oracle_k(ds, q) != 1:
        raise NotSingleColor("the fixed query must contain exactly one color")
    seed = as_seed(seed)
    hits = 0
    for t in range(trials):
        st = build_mc_k1(ds, family, cap, seed.child("trial", t))
        if st.query(q).yes:
            hits += 1
    return hits / trials
