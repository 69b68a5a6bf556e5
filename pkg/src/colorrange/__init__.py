"""Colored (categorical) range searching structures and experiments."""

from .core import (
    ColoredPoint,
    Dataset,
    Dominance3,
    Halfplane2,
    Halfspace3,
    Histogram,
    Rect2,
    map_query,
    reduce_to_rank_space,
    validate,
)
from .seeding import Seed

__all__ = [
    "ColoredPoint",
    "Dataset",
    "Dominance3",
    "Halfplane2",
    "Halfspace3",
    "Histogram",
    "Rect2",
    "Seed",
    "map_query",
    "reduce_to_rank_space",
    "validate",
]
