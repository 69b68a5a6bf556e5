import random
from fractions import Fraction

import pytest

from colorrange.core import Dominance3, Halfplane2, Halfspace3, reduce_to_rank_space
from colorrange.errors import CapTooSmall, NotSingleColor, UnknownColor
from colorrange.k1mc import (
    FAMILY_DOMINANCE,
    FAMILY_HALFPLANE,
    FAMILY_HALFSPACE,
    build_mc_k1,
    conflict_size_at,
    mc_k1_query,
    per_color_empty,
    yes_rate_experiment,
)
from colorrange.oracle import oracle_colors, oracle_conflict_colors
from colorrange.seeding import Seed

from helpers import make_ds2, make_ds3, rand_dominance


def _find_seed(pred, limit=64):
    for s in range(limit):
        if pred(Seed(s)):
            return Seed(s)
    raise AssertionError("no seed realizes the event")


def test_single_color_unsampled_one_cell():
    ds = make_ds3(12, 1, 0)
    seed = _find_seed(lambda s: not build_mc_k1(ds, FAMILY_DOMINANCE, 5, s).sampled_colors)
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 5, seed)
    cells = st.cells()
    assert len(cells) == 1
    assert list(cells[0].conflict) == [0]
    assert st.locate(Dominance3(ds.m, ds.m, ds.m)) is cells[0]


def test_single_color_sampled_covered_region_is_orthant_union():
    ds = make_ds3(12, 1, 1)
    seed = _find_seed(lambda s: build_mc_k1(ds, FAMILY_DOMINANCE, 5, s).sampled_colors)
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 5, seed)
    rng = random.Random(0)
    pts = [p.coords for p in ds.points]
    for _ in range(500):
        q = rand_dominance(rng, ds.m)
        in_union = any(p[0] <= q.q1 and p[1] <= q.q2 and p[2] <= q.q3 for p in pts)
        assert (st.locate(q) is None) == in_union


def test_cap_too_small():
    ds = make_ds3(10, 2, 0)
    with pytest.raises(CapTooSmall):
        build_mc_k1(ds, FAMILY_DOMINANCE, 0, Seed(0))


def test_cells_partition_uncovered_region():
    # locate()-based classification agrees with the direct covered test
    for t in range(10):
        ds = make_ds3(60, 8, 20 + t)
        st = build_mc_k1(ds, FAMILY_DOMINANCE, 6, Seed(t))
        sampled = [p.coords for p in ds.points if p.color in st.sampled_colors]
        rng = random.Random(t)
        hits = {}
        for _ in range(1000):
            q = rand_dominance(rng, ds.m)
            covered = any(p[0] <= q.q1 and p[1] <= q.q2 and p[2] <= q.q3 for p in sampled)
            cell = st.locate(q)
            assert (cell is None) == covered
            if cell is not None:
                hits[id(cell)] = hits.get(id(cell), 0) + 1


def test_conflict_lists_match_oracle_exhaustively():
    for t in range(8):
        ds = make_ds3(40, 6, 40 + t)
        st = build_mc_k1(ds, FAMILY_DOMINANCE, 4, Seed(t))
        for cell in st.cells():
            want = oracle_conflict_colors(ds, st.cell_corner(cell))
            assert cell.true_count == len(want)
            assert cell.bad == (len(want) > 4)
            if not cell.bad:
                assert list(cell.conflict) == want


def test_per_color_empty_matches_oracle():
    ds = make_ds3(80, 10, 3)
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 20, Seed(3))
    rng = random.Random(5)
    for _ in range(500):
        q = rand_dominance(rng, ds.m)
        color = rng.randrange(ds.color_count)
        truth = color not in oracle_colors(ds, q)
        assert per_color_empty(st, color, q) == truth
    with pytest.raises(UnknownColor):
        per_color_empty(st, 99, Dominance3(1, 1, 1))


def test_soundness_and_witness_all_families():
    rng = random.Random(0)
    checked_yes = 0
    for t in range(25):
        ds = make_ds3(60, 6, 60 + t)
        st = build_mc_k1(ds, FAMILY_DOMINANCE, 8, Seed(t))
        for _ in range(120):
            q = rand_dominance(rng, ds.m)
            res = mc_k1_query(st, q)
            if res.yes:
                checked_yes += 1
                assert oracle_colors(ds, q) == [res.color]
                p = ds.points[res.witness]
                assert q.contains(*p.coords) and p.color == res.color
    assert checked_yes > 0

    for t in range(10):
        ds = make_ds2(50, 6, 80 + t)
        st = build_mc_k1(ds, FAMILY_HALFPLANE, 8, Seed(t))
        for _ in range(80):
            q = Halfplane2(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                           Fraction(rng.randint(-1500, 1500)))
            res = mc_k1_query(st, q)
            if res.yes:
                assert oracle_colors(ds, q) == [res.color]
                assert q.contains_raw(*ds.raw[res.witness])

    for t in range(5):
        ds = make_ds3(30, 5, 90 + t, coord_range=150)
        st = build_mc_k1(ds, FAMILY_HALFSPACE, 8, Seed(t))
        for _ in range(60):
            q = Halfspace3(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)),
                           Fraction(rng.randint(-500, 500)))
            res = mc_k1_query(st, q)
            if res.yes:
                assert oracle_colors(ds, q) == [res.color]
                assert q.contains_raw(*ds.raw[res.witness])


def test_yes_when_single_color_unsampled_good_cell():
    ds = reduce_to_rank_space(
        [((1, 1, 1), 0, 1), ((9, 9, 9), 1, 1), ((8, 9, 8), 2, 1)], 3)
    q = Dominance3(1, 1, 1)          # contains only color 0

    def realizes(seed):
        st = build_mc_k1(ds, FAMILY_DOMINANCE, 20, seed)
        cell = st.locate(q)
        return 0 not in st.sampled_colors and cell is not None and not cell.bad

    seed = _find_seed(realizes)
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 20, seed)
    res = mc_k1_query(st, q)
    assert res.yes and res.color == 0
    assert oracle_colors(ds, q) == [0]


def test_zero_colors_in_good_cell_is_no():
    ds = reduce_to_rank_space([((5, 5, 5), 0, 1), ((6, 6, 6), 1, 1)], 3)
    q = Dominance3(1, 1, 0)          # empty range, z prefix empty
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 20, Seed(0))
    res = mc_k1_query(st, q)
    assert not res.yes


def test_yes_rate_errors_and_smoke():
    ds = make_ds3(120, 12, 7)
    # corner of the coordinate-sum-minimal point holds exactly one color
    best = min(range(ds.m), key=lambda i: sum(ds.points[i].coords))
    q = Dominance3(*ds.points[best].coords)
    rate = yes_rate_experiment(ds, FAMILY_DOMINANCE, 20, 150, q, Seed(0))
    assert 0.25 <= rate <= 0.75
    with pytest.raises(NotSingleColor):
        yes_rate_experiment(ds, FAMILY_DOMINANCE, 20, 10,
                            Dominance3(ds.m, ds.m, ds.m), Seed(0))


def test_conflict_size_counts_covered_as_zero():
    ds = make_ds3(40, 5, 1)
    st = build_mc_k1(ds, FAMILY_DOMINANCE, 20, Seed(1))
    rng = random.Random(2)
    vals = [conflict_size_at(st, rand_dominance(rng, ds.m)) for _ in range(200)]
    assert all(v >= 0 for v in vals)


def test_determinism_same_seed_same_cells():
    ds = make_ds3(80, 9, 2)
    a = build_mc_k1(ds, FAMILY_DOMINANCE, 6, Seed(42))
    b = build_mc_k1(ds, FAMILY_DOMINANCE, 6, Seed(42))
    assert a.sampled_colors == b.sampled_colors
    assert [(c.geom, c.conflict, c.true_count) for c in a.cells()] == \
           [(c.geom, c.conflict, c.true_count) for c in b.cells()]
