import pytest

from colorrange.core import Dominance3, Rect2, reduce_to_rank_space
from colorrange.errors import DimensionMismatch
from colorrange.oracle import (
    oracle_colors,
    oracle_conflict_colors,
    oracle_k,
    oracle_type2,
)

from helpers import make_ds2


def _tiny3():
    return reduce_to_rank_space([((1, 1, 1), 0, 1), ((2, 2, 2), 1, 1)], 3)


def test_oracle_colors_dominance():
    ds = _tiny3()
    assert oracle_colors(ds, Dominance3(2, 2, 2)) == [0, 1]
    assert oracle_colors(ds, Dominance3(1, 1, 1)) == [0]
    assert oracle_colors(ds, Dominance3(0, 0, 0)) == []


def test_oracle_k():
    ds = _tiny3()
    assert oracle_k(ds, Dominance3(2, 2, 2)) == 2
    assert oracle_k(ds, Dominance3(0, 0, 0)) == 0
    assert oracle_k(ds, Dominance3(1, 1, 1)) == 1


def test_oracle_type2_weighted():
    # raw points (1,1) red w2, (2,2) blue w1, (3,1) red w5
    ds = reduce_to_rank_space([((1, 1), 0, 2), ((2, 2), 1, 1), ((3, 1), 0, 5)], 2)
    full = oracle_type2(ds, Rect2(None, 3, None, 2))
    assert full.as_dict() == {0: 7, 1: 1}
    small = oracle_type2(ds, Rect2(None, 1, None, 1))
    assert small.as_dict() == {0: 2}
    empty = oracle_type2(ds, Rect2(4, 5, None, None))
    assert empty.as_dict() == {}


def test_oracle_conflict_colors():
    ds = reduce_to_rank_space([((1, 1, 1), 0, 1), ((1, 2, 1), 1, 1)], 3)
    # rank space: point0 -> (1,1,1)/(1,1,1)-ish, corner dominates both
    assert oracle_conflict_colors(ds, (2, 2, 2)) == [0, 1]
    assert oracle_conflict_colors(ds, (0, 0, 0)) == []


def test_oracle_type2_matches_colors_keyset():
    ds = make_ds2(50, 6, 3, weight_max=5)
    for a, b in [(10, 10), (50, 25), (1, 50), (0, 0)]:
        q = Rect2(None, a, None, b)
        assert oracle_type2(ds, q).colors == oracle_colors(ds, q)


def test_dimension_mismatch():
    ds = make_ds2(10, 2, 0)
    with pytest.raises(DimensionMismatch):
        oracle_colors(ds, Dominance3(1, 1, 1))
    with pytest.raises(DimensionMismatch):
        oracle_conflict_colors(ds, (1, 1, 1))
