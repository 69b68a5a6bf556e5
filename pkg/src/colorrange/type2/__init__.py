"""2D weighted colored type-2 range counting (per-color weight histograms)."""

from .cutting import ColoredShallowCutting, build_shallow_cutting
from .estimator import RangeCountEstimator, build_estimator
from .general import ColorRangeTree, build_general, default_parameters
from .grid import GridStructure, build_grid, merge_histograms, query_capped_2sided, split_by_weight
from .ranges import (
    FourSidedStructure,
    ThreeSidedStructure,
    build_3sided,
    build_4sided,
    query_capped_3sided,
    query_capped_4sided,
)

__all__ = [
    "ColoredShallowCutting",
    "ColorRangeTree",
    "FourSidedStructure",
    "GridStructure",
    "RangeCountEstimator",
    "ThreeSidedStructure",
    "build_3sided",
    "build_4sided",
    "build_estimator",
    "build_general",
    "build_grid",
    "build_shallow_cutting",
    "default_parameters",
    "merge_histograms",
    "query_capped_2sided",
    "query_capped_3sided",
    "query_capped_4sided",
    "split_by_weight",
]
