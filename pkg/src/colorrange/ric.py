"""Colored randomized incremental construction experiments.

Builds insertion plans (class-batch, within-class, or hierarchical nested
permutations), runs them against the incremental 3D hull or the 2D lower
envelope, and counts structural changes per step.  A batch step's counts
are net: facets both created and destroyed inside the same batch cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .core import Dataset, reduce_to_rank_space
from .envelope2 import LowerEnvelope
from .errors import BadHierarchy, DegenerateInput, DuplicateLine, TooSmall
from .hull3 import IncrementalHull3
from .predicates import cross2
from .seeding import Seed, as_seed

MODE_CLASS_BATCH = "classBatch"
MODE_WITHIN_CLASS = "withinClass"
MODE_HIERARCHY = "hierarchy"


@dataclass
class InsertionPlan:
    order: List[int]
    batch_boundaries: List[int]   # step s inserts order[b[s]:b[s+1]]
    levels: int
    mode: str

    @property
    def steps(self) -> int:
        return len(self.batch_boundaries) - 1


@dataclass
class ChangeStats:
    created_per_step: List[int] = field(default_factory=list)
    destroyed_per_step: List[int] = field(default_factory=list)

    @property
    def total_created(self) -> int:
        return sum(self.created_per_step)

    @property
    def total_destroyed(self) -> int:
        return sum(self.destroyed_per_step)


def _expand(node, rng) -> List[int]:
    if isinstance(node, int):
        return [node]
    if not isinstance(node, (list, tuple)) or not node:
        raise BadHierarchy(f"malformed hierarchy node {node!r}")
    kids = list(node)
    rng.shuffle(kids)
    out = []
    for kid in kids:
        out.extend(_expand(kid, rng))
    return out


def _split_depth(indices: List[int], depth: int):
    """Split a point list into ~sqrt-sized chunks, `depth` more times."""
    if depth <= 0 or len(indices) <= 1:
        return list(indices)
    g = max(2, math.isqrt(len(indices)))
    size = (len(indices) + g - 1) // g
    return [_split_depth(indices[t:t + size], depth - 1) for t in range(0, len(indices), size)]


def default_hierarchy(ds: Dataset, levels: int):
    """Canonical hierarchy: level 1 is one group of all points, level 2
    groups by color, deeper levels subdivide each class into sqrt chunks."""
    if levels == 1:
        return [i for i in range(ds.m)]
    classes = [list(ds.color_index[c]) for c in sorted(ds.color_index)]
    if levels == 2:
        return classes
    return [_split_depth(cls, levels - 2) for cls in classes]


def _check_hierarchy(node, seen):
    if isinstance(node, int):
        if node in seen:
            raise BadHierarchy(f"point {node} appears twice")
        seen.add(node)
        return
    if not isinstance(node, (list, tuple)) or not node:
        raise BadHierarchy(f"malformed hierarchy node {node!r}")
    for kid in node:
        _check_hierarchy(kid, seen)


def make_insertion_plan(ds: Dataset, mode: str, seed, levels: int = 2,
                        hierarchy=None) -> InsertionPlan:
    """Build the insertion order for one experiment run.

    classBatch: color classes in uniformly random order, one batch each.
    withinClass: random class order, random order inside each class, one
    point per step.  hierarchy: `levels` nested uniform permutations over
    the given (or default) class hierarchy.
    """
    if ds.m == 0:
        raise TooSmall("empty dataset")
    rng = as_seed(seed).rng()
    if mode == MODE_CLASS_BATCH:
        classes = [list(ds.color_index[c]) for c in sorted(ds.color_index)]
        rng.shuffle(classes)
        order, bounds = [], [0]
        for cls in classes:
            order.extend(cls)
            bounds.append(len(order))
        return InsertionPlan(order, bounds, 1, mode)
    if mode == MODE_WITHIN_CLASS:
        classes = [list(ds.color_index[c]) for c in sorted(ds.color_index)]
        rng.shuffle(classes)
        order = []
        for cls in classes:
            pts = list(cls)
            rng.shuffle(pts)
            order.extend(pts)
        return InsertionPlan(order, list(range(len(order) + 1)), 2, mode)
    if mode == MODE_HIERARCHY:
        if levels < 1:
            raise BadHierarchy(f"levels must be >= 1, got {levels}")
        node = hierarchy if hierarchy is not None else default_hierarchy(ds, levels)
        seen = set()
        _check_hierarchy(node, seen)
        if seen != set(range(ds.m)):
            raise BadHierarchy("hierarchy does not cover the dataset exactly once")
        order = _expand(node, rng)
        return InsertionPlan(order, list(range(len(order) + 1)), levels, mode)
    raise BadHierarchy(f"unknown mode {mode!r}")


def _run_steps(inserter, items, boundaries) -> ChangeStats:
    stats = ChangeStats()
    for s in range(len(boundaries) - 1):
        start_serial = inserter.serial
        created = destroyed = young = 0
        for t in range(boundaries[s], boundaries[s + 1]):
            c, db = inserter.insert(*items[t])
            created += c
            destroyed += len(db)
            young += sum(1 for b in db if b > start_serial)
        stats.created_per_step.append(created - young)
        stats.destroyed_per_step.append(destroyed - young)
    return stats


def hull3_changes(points, step_boundaries: Optional[List[int]] = None,
                  perturb: bool = True) -> ChangeStats:
    """Insert 3D points in the given order, counting hull facets created and
    destroyed per step.  Requires at least 4 points; without perturbation a
    coplanar starting tetrahedron raises DegenerateInput."""
    pts = list(points)
    if len(pts) < 4:
        raise TooSmall("need at least 4 points for a 3D hull")
    bounds = step_boundaries if step_boundaries is not None else list(range(len(pts) + 1))
    if bounds[0] != 0 or bounds[-1] != len(pts) or any(
            bounds[t] >= bounds[t + 1] for t in range(len(bounds) - 1)):
        raise BadHierarchy("bad step boundaries")
    hull = IncrementalHull3(pts, perturb=perturb)
    return _run_steps(_HullAdapter(hull), [(i,) for i in range(len(pts))], bounds)


class _HullAdapter:
    def __init__(self, hull):
        self.hull = hull

    @property
    def serial(self):
        return self.hull.serial

    def insert(self, idx):
        return self.hull.insert(idx)


def envelope2_changes(lines, step_boundaries: Optional[List[int]] = None) -> ChangeStats:
    """Insert lines (a, b) in order, counting envelope edges created and
    destroyed per step."""
    items = [(t, a, b) for t, (a, b) in enumerate(lines)]
    if len({(a, b) for _, a, b in items}) != len(items):
        raise DuplicateLine("duplicate line in input")
    bounds = step_boundaries if step_boundaries is not None else list(range(len(items) + 1))
    return _run_steps(LowerEnvelope(), items, bounds)


def adversarial_instance(n: int) -> Dataset:
    """The tight instance for within-class insertion: n/2 integer points in
    convex position on a large circle in the plane z=0, each its own color,
    plus n/2 points up the z-axis sharing one color."""
    if n < 8 or n % 2:
        raise TooSmall(f"n must be even and >= 8, got {n}")
    half = n // 2
    radius = 1 << 26
    circle = []
    for i in range(half):
        theta = (i + 0.5) * 2.0 * math.pi / half
        circle.append((round(radius * math.cos(theta)), round(radius * math.sin(theta))))
    if len(set(circle)) != half:
        raise DegenerateInput("snapped circle points collide; increase radius")
    for i in range(half):
        a, b, c = circle[i - 1], circle[i], circle[(i + 1) % half]
        if cross2(a, b, c) <= 0:
            raise DegenerateInput("snapped circle points lost convex position")
    raws = [((x, y, 0), i, 1) for i, (x, y) in enumerate(circle)]
    raws += [((0, 0, h), half, 1) for h in range(1, half + 1)]
    return reduce_to_rank_space(raws, 3)


def remark3_hierarchy(ds: Dataset, levels: int):
    """Nested analog of the adversarial instance: the shared color class is
    recursively split into interleaved height groups, one split per extra
    level beyond 2."""
    if levels < 2:
        return default_hierarchy(ds, levels)
    shared = max(ds.color_index, key=lambda c: len(ds.color_index[c]))

    def interleave(idxs, depth):
        if depth <= 0 or len(idxs) <= 1:
            return list(idxs)
        g = max(2, math.isqrt(len(idxs)))
        groups = [[] for _ in range(g)]
        for t, i in enumerate(idxs):
            groups[t % g].append(i)
        return [interleave(grp, depth - 1) for grp in groups if grp]

    top = []
    for c in sorted(ds.color_index):
        if c == shared:
            top.append(interleave(list(ds.color_index[c]), levels - 2))
        else:
            top.append(list(ds.color_index[c]))
    return top


def run_hull_plan(ds: Dataset, plan: InsertionPlan, perturb: bool = True) -> ChangeStats:
    """Apply a plan to the dataset's raw 3D coordinates and count changes."""
    pts = [ds.raw[i] for i in plan.order]
    return hull3_changes(pts, plan.batch_boundaries, perturb=perturb)
