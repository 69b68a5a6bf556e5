import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorrange.core import (
    Dominance3,
    Halfplane2,
    Rect2,
    map_query,
    reduce_to_rank_space,
    validate,
)
from colorrange.errors import (
    DimensionMismatch,
    EmptyInput,
    NonPositiveWeight,
    WrongQueryKind,
)
from colorrange.seeding import Seed

from helpers import make_ds2, make_ds3


def test_rank_reduction_sorting_permutation():
    ds = reduce_to_rank_space([((10, 1), 0, 1), ((3, 2), 0, 1), ((7, 3), 0, 1)], 2)
    assert [p.coords[0] for p in ds.points] == [3, 1, 2]


def test_rank_reduction_tie_by_input_order():
    ds = reduce_to_rank_space([((5, 9), 0, 1), ((5, 1), 0, 1)], 2)
    assert [p.coords[0] for p in ds.points] == [1, 2]


def test_rank_reduction_per_axis():
    ds = reduce_to_rank_space([((3, 9), 0, 1), ((8, 2), 1, 1)], 2)
    assert ds.points[0].coords == (1, 2)
    assert ds.points[1].coords == (2, 1)


def test_rank_reduction_errors():
    with pytest.raises(EmptyInput):
        reduce_to_rank_space([], 2)
    with pytest.raises(NonPositiveWeight):
        reduce_to_rank_space([((1, 2), 0, 0)], 2)
    with pytest.raises(DimensionMismatch):
        reduce_to_rank_space([((1, 2), 0, 1)], 3)


def test_map_query_predecessor_examples():
    ds = reduce_to_rank_space([((3, 3), 0, 1), ((7, 7), 0, 1), ((10, 10), 0, 1)], 2)
    q = map_query(ds, Rect2(None, 8, None, None))
    assert q.xhi == 2
    q = map_query(ds, Rect2(None, 2, None, None))
    assert q.xhi == 0
    q = map_query(ds, Rect2(None, None, None, None))
    assert q.xhi is None


def test_map_query_wrong_kind():
    ds = make_ds2(10, 3, 0)
    with pytest.raises(WrongQueryKind):
        map_query(ds, Halfplane2(Fraction(1), Fraction(0)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_map_query_preserves_membership(data):
    n = data.draw(st.integers(2, 24))
    raws = [((data.draw(st.integers(-40, 40)), data.draw(st.integers(-40, 40))), 0, 1)
            for _ in range(n)]
    ds = reduce_to_rank_space(raws, 2)
    lo_x = data.draw(st.integers(-50, 50))
    hi_x = data.draw(st.integers(lo_x, 55))
    lo_y = data.draw(st.integers(-50, 50))
    hi_y = data.draw(st.integers(lo_y, 55))
    raw_q = Rect2(lo_x, hi_x, lo_y, hi_y)
    rank_q = map_query(ds, raw_q)
    for i, p in enumerate(ds.points):
        assert raw_q.contains(*ds.raw[i]) == rank_q.contains(*p.coords)


def test_map_query_dominance_membership():
    rng = random.Random(4)
    ds = make_ds3(40, 5, 1, coord_range=60)
    for _ in range(200):
        raw_q = Dominance3(rng.randint(-5, 70), rng.randint(-5, 70), rng.randint(-5, 70))
        rank_q = map_query(ds, raw_q)
        for i, p in enumerate(ds.points):
            assert raw_q.contains(*ds.raw[i]) == rank_q.contains(*p.coords)


def test_validate_ok_and_violations():
    ds = make_ds3(20, 4, 0)
    assert validate(ds) is None

    bad = make_ds3(20, 4, 0)
    pt = bad.points[3]
    bad.points[3] = type(pt)(pt.coords, pt.color, 0)
    v = validate(bad)
    assert v is not None and v.kind == "NonPositiveWeight" and v.index == 3

    gap = reduce_to_rank_space([((1, 1), 0, 1), ((2, 2), 2, 1)], 2)
    v = validate(gap)
    assert v is not None and v.kind == "NonDenseColors"


def test_dataset_roundtrip(tmp_path):
    ds = make_ds2(30, 5, 7, weight_max=4)
    path = tmp_path / "ds.txt"
    ds.dump(path)
    ds2 = type(ds).load(path)
    assert ds2.m == ds.m and ds2.n == ds.n and ds2.color_count == ds.color_count
    assert ds2.raw == ds.raw
    assert [p.coords for p in ds2.points] == [p.coords for p in ds.points]


def test_seed_determinism_and_children():
    s = Seed(123)
    assert s.child("a", 1).value == Seed(123).child("a", 1).value
    assert s.child("a").value != s.child("b").value
    r1 = s.rng().random()
    r2 = Seed(123).rng().random()
    assert r1 == r2


def test_histogram_sidedness():
    assert Rect2(None, 3, None, 4).sidedness == 2
    assert Rect2(1, 3, None, 4).sidedness == 3
    assert Rect2(1, 3, 2, 4).sidedness == 4
