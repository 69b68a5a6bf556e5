"""Brute-force reference implementations of every query semantics.

These are the ground truth for all tests: O(m) scans with the same exact
predicates as the real structures.  Dominance3/Rect2 queries are expected
in rank space; halfplane/halfspace queries are evaluated on raw
coordinates, matching the convention used by the data structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .core import Dataset, Dominance3, Halfplane2, Halfspace3, Histogram, Rect2
from .errors import DimensionMismatch


def _query_mask(ds: Dataset, q) -> np.ndarray:
    rank, _, _ = ds.arrays()
    if isinstance(q, Dominance3):
        if ds.dim != 3:
            raise DimensionMismatch("Dominance3 needs a 3D dataset")
        return (rank[:, 0] <= q.q1) & (rank[:, 1] <= q.q2) & (rank[:, 2] <= q.q3)
    if isinstance(q, Rect2):
        if ds.dim != 2:
            raise DimensionMismatch("Rect2 needs a 2D dataset")
        mask = np.ones(ds.m, dtype=bool)
        if q.xlo is not None:
            mask &= rank[:, 0] >= q.xlo
        if q.xhi is not None:
            mask &= rank[:, 0] <= q.xhi
        if q.ylo is not None:
            mask &= rank[:, 1] >= q.ylo
        if q.yhi is not None:
            mask &= rank[:, 1] <= q.yhi
        return mask
    if isinstance(q, Halfplane2):
        if ds.dim != 2:
            raise DimensionMismatch("Halfplane2 needs a 2D dataset")
        a, b = Fraction(q.alpha), Fraction(q.beta)
        an, ad, bn, bd = a.numerator, a.denominator, b.numerator, b.denominator
        mask = np.zeros(ds.m, dtype=bool)
        for i, (x, y) in enumerate(ds.raw):
            mask[i] = y * ad * bd <= an * bd * x + bn * ad
        return mask
    if isinstance(q, Halfspace3):
        if ds.dim != 3:
            raise DimensionMismatch("Halfspace3 needs a 3D dataset")
        a, b, g = Fraction(q.alpha), Fraction(q.beta), Fraction(q.gamma)
        an, ad = a.numerator, a.denominator
        bn, bd = b.numerator, b.denominator
        gn, gd = g.numerator, g.denominator
        mask = np.zeros(ds.m, dtype=bool)
        for i, (x, y, z) in enumerate(ds.raw):
            mask[i] = z * ad * bd * gd <= an * bd * gd * x + bn * ad * gd * y + gn * ad * bd
        return mask
    raise DimensionMismatch(f"unsupported query {type(q).__name__}")


def oracle_colors(ds: Dataset, q) -> List[int]:
    """Exactly the distinct colors of points in q, by linear scan."""
    _, colors, _ = ds.arrays()
    return sorted(int(c) for c in np.unique(colors[_query_mask(ds, q)]))


def oracle_k(ds: Dataset, q) -> int:
    """Number of distinct colors in the range."""
    return len(oracle_colors(ds, q))


def oracle_type2(ds: Dataset, q: Rect2) -> Histogram:
    """Per-color total weight of points in a 2D rectangle."""
    if ds.dim != 2:
        raise DimensionMismatch("oracle_type2 needs a 2D dataset")
    mask = _query_mask(ds, q)
    _, colors, weights = ds.arrays()
    counts = {}
    for c, w in zip(colors[mask], weights[mask]):
        counts[int(c)] = counts.get(int(c), 0) + int(w)
    return Histogram.from_counts(counts)


def oracle_conflict_colors(ds: Dataset, cell_max_corner) -> List[int]:
    """Colors having a point dominated by the cell's maximal corner (3D)."""
    if ds.dim != 3:
        raise DimensionMismatch("oracle_conflict_colors needs a 3D dataset")
    return oracle_colors(ds, Dominance3(*cell_max_corner))


@dataclass
class OracleAnswer:
    colors: List[int]
    k: int
    histogram: Optional[Histogram] = None


def oracle_answer(ds: Dataset, q) -> OracleAnswer:
    colors = oracle_colors(ds, q)
    hist = oracle_type2(ds, q) if (isinstance(q, Rect2) and ds.dim == 2) else None
    return OracleAnswer(colors=colors, k=len(colors), histogram=hist)
