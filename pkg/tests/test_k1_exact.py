import random

import pytest

from colorrange.core import Dominance3, reduce_to_rank_space
from colorrange.errors import DimensionMismatch
from colorrange.k1exact import build_exact_k1_dominance, exact_k1_query
from colorrange.oracle import oracle_colors, oracle_k
from colorrange.seeding import Seed
from colorrange.verify import verify_exact_k1

from helpers import make_ds2, make_ds3, rand_dominance


def test_singleton_dataset():
    ds = reduce_to_rank_space([((5, 5, 5), 0, 1)], 3)
    st = build_exact_k1_dominance(ds, Seed(0))
    res = exact_k1_query(st, Dominance3(1, 1, 1))
    assert res.kind == "single" and res.color == 0 and res.witness == 0
    assert exact_k1_query(st, Dominance3(0, 1, 1)).kind == "empty"


def test_two_point_cases():
    ds = reduce_to_rank_space([((1, 1, 1), 0, 1), ((2, 2, 2), 1, 1)], 3)
    st = build_exact_k1_dominance(ds, Seed(1))
    assert exact_k1_query(st, Dominance3(2, 2, 2)).kind == "multi"
    assert exact_k1_query(st, Dominance3(1, 1, 1)).kind == "single"
    same = reduce_to_rank_space([((1, 1, 1), 0, 1), ((2, 2, 2), 0, 1)], 3)
    st = build_exact_k1_dominance(same, Seed(2))
    assert exact_k1_query(st, Dominance3(2, 2, 2)).kind == "single"


def test_needs_3d():
    with pytest.raises(DimensionMismatch):
        build_exact_k1_dominance(make_ds2(10, 3, 0), Seed(0))


def test_min_max_matches_oracle_under_same_permutation():
    ds = make_ds3(200, 12, 5)
    st = build_exact_k1_dominance(ds, Seed(7))
    rng = random.Random(3)
    for _ in range(200):
        q = rand_dominance(rng, ds.m)
        agg = st.min_max(q)
        inside = [i for i in range(ds.m) if q.contains(*ds.points[i].coords)]
        if not inside:
            assert agg is None
            continue
        ranks = [st.rank_of_point[i] for i in inside]
        mn, mn_wit, mx, mx_wit = agg
        assert mn == min(ranks) and mx == max(ranks)
        assert st.rank_of_point[mn_wit] == mn and q.contains(*ds.points[mn_wit].coords)
        assert st.rank_of_point[mx_wit] == mx and q.contains(*ds.points[mx_wit].coords)


def test_exhaustive_small_against_dp_oracle():
    ds = make_ds3(20, 6, 9)
    ok, msg = verify_exact_k1(ds, 100, Seed(11))
    assert ok, msg


def test_agrees_with_oracle_random_queries():
    ds = make_ds3(300, 17, 13)
    st = build_exact_k1_dominance(ds, Seed(5))
    rng = random.Random(1)
    for _ in range(400):
        q = rand_dominance(rng, ds.m)
        res = exact_k1_query(st, q)
        k = oracle_k(ds, q)
        assert res.kind == {0: "empty", 1: "single"}.get(k, "multi")
        if res.kind == "single":
            assert oracle_colors(ds, q) == [res.color]
