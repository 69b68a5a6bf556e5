"""Data model: colored points, rank-space reduction, queries, histograms.

Coordinates live in two spaces.  Raw (input) coordinates are arbitrary
integers; rank space replaces each coordinate by its rank in ``{1..m}``,
with ties broken by input index so ranks are distinct per axis.  Orthogonal
queries (dominance, rectangles) are mapped to rank space by predecessor
search and answered there; halfplane/halfspace queries are evaluated
directly on the raw coordinates with exact rational arithmetic.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyInput,
    NonPositiveWeight,
    UnsortedPart,
    WrongQueryKind,
)

Color = int


@dataclass(frozen=True)
class ColoredPoint:
    """A point in rank space with a color id and a positive integer weight."""

    coords: tuple
    color: Color
    weight: int = 1


@dataclass(frozen=True)
class Dominance3:
    """The region {p : p <= (q1,q2,q3) componentwise}."""

    q1: int
    q2: int
    q3: int

    def contains(self, x, y, z) -> bool:
        return x <= self.q1 and y <= self.q2 and z <= self.q3

    @property
    def corner(self):
        return (self.q1, self.q2, self.q3)


@dataclass(frozen=True)
class Rect2:
    """Axis-aligned rectangle with inclusive integer bounds.

    ``None`` marks an open side.  The same class is used in raw and rank
    space; `map_query` converts the former to the latter.
    """

    xlo: Optional[int] = None
    xhi: Optional[int] = None
    ylo: Optional[int] = None
    yhi: Optional[int] = None

    def contains(self, x, y) -> bool:
        if self.xlo is not None and x < self.xlo:
            return False
        if self.xhi is not None and x > self.xhi:
            return False
        if self.ylo is not None and y < self.ylo:
            return False
        return self.yhi is None or y <= self.yhi

    @property
    def sidedness(self) -> int:
        return sum(b is not None for b in (self.xlo, self.xhi, self.ylo, self.yhi))


@dataclass(frozen=True)
class Halfplane2:
    """The region {p : p_y <= alpha * p_x + beta}, evaluated on raw coords."""

    alpha: Fraction
    beta: Fraction

    def contains_raw(self, x, y) -> bool:
        a, b = Fraction(self.alpha), Fraction(self.beta)
        return y * a.denominator * b.denominator <= a.numerator * b.denominator * x + b.numerator * a.denominator


@dataclass(frozen=True)
class Halfspace3:
    """The region {p : p_z <= alpha * p_x + beta * p_y + gamma} on raw coords."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def contains_raw(self, x, y, z) -> bool:
        return Fraction(z) <= Fraction(self.alpha) * x + Fraction(self.beta) * y + Fraction(self.gamma)


@dataclass(frozen=True)
class Histogram:
    """Sorted (color, total weight) pairs: the answer to a type-2 query."""

    entries: tuple = ()

    def __post_init__(self):
        prev = -1
        for color, weight in self.entries:
            if color <= prev:
                raise UnsortedPart(f"histogram colors not strictly increasing at {color}")
            if weight <= 0:
                raise NonPositiveWeight(f"histogram weight {weight} for color {color}")
            prev = color

    @classmethod
    def from_counts(cls, counts: dict) -> "Histogram":
        return cls(tuple(sorted(counts.items())))

    def as_dict(self) -> dict:
        return dict(self.entries)

    @property
    def colors(self):
        return [c for c, _ in self.entries]

    @property
    def k(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass
class Violation:
    kind: str
    index: Optional[int] = None
    detail: str = ""


class Dataset:
    """An immutable colored point set reduced to rank space.

    Attributes
    ----------
    dim : 2 or 3
    points : list of ColoredPoint in rank space
    raw : list of raw coordinate tuples, parallel to points
    color_index : color -> list of point indices
    rank_maps : per axis, the (raw value, input index) pairs in rank order
    m : point count;  n : total weight;  color_count : number of colors
    """

    def __init__(self, dim, points, raw, color_index, rank_maps):
        self.dim = dim
        self.points = points
        self.raw = raw
        self.color_index = color_index
        self.rank_maps = rank_maps
        self.m = len(points)
        self.n = sum(p.weight for p in points)
        self.color_count = len(color_index)
        self._np = None

    def arrays(self):
        """Cached numpy views (rank coords, colors, weights) for fast scans."""
        if self._np is None:
            rank = np.array([p.coords for p in self.points], dtype=np.int64)
            colors = np.array([p.color for p in self.points], dtype=np.int64)
            weights = np.array([p.weight for p in self.points], dtype=np.int64)
            self._np = (rank, colors, weights)
        return self._np

    def pred_rank(self, axis: int, bound: int) -> int:
        """Rank of the predecessor of `bound` on `axis` (0 if none)."""
        return bisect.bisect_right(self.rank_maps[axis], (bound, self.m))

    def strict_pred_rank(self, axis: int, bound: int) -> int:
        return bisect.bisect_left(self.rank_maps[axis], (bound, -1))

    def dump(self, path):
        with open(path, "w") as fh:
            fh.write(f"{self.dim} {self.m}\n")
            for p, rawc in zip(self.points, self.raw):
                coords = " ".join(str(c) for c in rawc)
                fh.write(f"{coords} {p.color} {p.weight}\n")

    @classmethod
    def load(cls, path) -> "Dataset":
        with open(path) as fh:
            header = fh.readline().split()
            if len(header) != 2:
                raise EmptyInput(f"bad dataset header in {path}")
            dim, m = int(header[0]), int(header[1])
            raws = []
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                coords = tuple(int(v) for v in parts[:dim])
                color = int(parts[dim])
                weight = int(parts[dim + 1]) if len(parts) > dim + 1 else 1
                raws.append((coords, color, weight))
        if len(raws) != m:
            raise EmptyInput(f"expected {m} points, found {len(raws)}")
        return reduce_to_rank_space(raws, dim)


def reduce_to_rank_space(raw_points: Sequence, dim: Optional[int] = None) -> Dataset:
    """Build a Dataset from raw (coords, color, weight) triples.

    Ranks are 1-based per axis; equal raw coordinates are ordered by input
    index, so every rank is distinct.  Raw coordinates are retained for
    halfplane/halfspace evaluation and for mapping later queries.
    """
    if not raw_points:
        raise EmptyInput("no points")
    norm = []
    for item in raw_points:
        coords, color, weight = item[0], item[1], (item[2] if len(item) > 2 else 1)
        norm.append((tuple(int(c) for c in coords), int(color), int(weight)))
    if dim is None:
        dim = len(norm[0][0])
    if dim not in (2, 3):
        raise DimensionMismatch(f"dim must be 2 or 3, got {dim}")
    for i, (coords, _, weight) in enumerate(norm):
        if len(coords) != dim:
            raise DimensionMismatch(f"point {i} has {len(coords)} coords, expected {dim}")
        if weight < 1:
            raise NonPositiveWeight(f"point {i} has weight {weight}")

    m = len(norm)
    rank_maps = []
    ranks = [[0] * dim for _ in range(m)]
    for axis in range(dim):
        keyed = sorted((norm[i][0][axis], i) for i in range(m))
        rank_maps.append(keyed)
        for r, (_, i) in enumerate(keyed, start=1):
            ranks[i][axis] = r

    points = [ColoredPoint(tuple(ranks[i]), norm[i][1], norm[i][2]) for i in range(m)]
    raw = [norm[i][0] for i in range(m)]
    color_index = {}
    for i, p in enumerate(points):
        color_index.setdefault(p.color, []).append(i)
    return Dataset(dim, points, raw, color_index, rank_maps)


def map_query(ds: Dataset, q):
    """Map a raw-coordinate Dominance3/Rect2 query to rank space.

    Membership is preserved exactly: a point is in the mapped range iff it
    was in the original range.  Upper bounds become predecessor ranks (0 if
    no value is <= the bound); lower bounds become strict-predecessor rank
    plus one.
    """
    if isinstance(q, Dominance3):
        if ds.dim != 3:
            raise DimensionMismatch("Dominance3 on a 2D dataset")
        return Dominance3(ds.pred_rank(0, q.q1), ds.pred_rank(1, q.q2), ds.pred_rank(2, q.q3))
    if isinstance(q, Rect2):
        if ds.dim != 2:
            raise DimensionMismatch("Rect2 on a 3D dataset")

        def lo(axis, b):
            return None if b is None else ds.strict_pred_rank(axis, b) + 1

        def hi(axis, b):
            return None if b is None else ds.pred_rank(axis, b)

        return Rect2(lo(0, q.xlo), hi(0, q.xhi), lo(1, q.ylo), hi(1, q.yhi))
    raise WrongQueryKind(f"cannot rank-map {type(q).__name__} queries")


def validate(ds: Dataset) -> Optional[Violation]:
    """Check every Dataset invariant; return the first violation, or None."""
    if ds.dim not in (2, 3):
        return Violation("BadDim", detail=str(ds.dim))
    for i, p in enumerate(ds.points):
        if p.weight < 1:
            return Violation("NonPositiveWeight", index=i)
        if len(p.coords) != ds.dim:
            return Violation("BadDim", index=i)
    colors = sorted(ds.color_index)
    if colors != list(range(len(colors))):
        return Violation("NonDenseColors", detail=str(colors))
    seen = sorted(i for idxs in ds.color_index.values() for i in idxs)
    if seen != list(range(ds.m)):
        return Violation("BadColorIndex")
    for color, idxs in ds.color_index.items():
        for i in idxs:
            if ds.points[i].color != color:
                return Violation("BadColorIndex", index=i)
    if ds.n < ds.m:
        return Violation("BadTotalWeight", detail=f"n={ds.n} < m={ds.m}")
    for axis in range(ds.dim):
        ranked = sorted(p.coords[axis] for p in ds.points)
        if ranked != list(range(1, ds.m + 1)):
            return Violation("BadRankSpace", detail=f"axis {axis}")
        if any(ds.rank_maps[axis][t] >= ds.rank_maps[axis][t + 1] for t in range(ds.m - 1)):
            return Violation("BadRankMap", detail=f"axis {axis}")
    return None
