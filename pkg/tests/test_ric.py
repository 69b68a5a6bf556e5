import math

import pytest

from colorrange.errors import BadHierarchy, TooSmall
from colorrange.ric import (
    adversarial_instance,
    default_hierarchy,
    envelope2_changes,
    make_insertion_plan,
    remark3_hierarchy,
    run_hull_plan,
)
from colorrange.predicates import cross2
from colorrange.seeding import Seed

from helpers import make_ds3


def test_class_batch_plan_structure():
    ds = make_ds3(30, 1, 0)
    plan = make_insertion_plan(ds, "classBatch", Seed(1))
    assert plan.steps == 1
    assert sorted(plan.order) == list(range(30))


def test_within_class_singletons_is_uniform_permutation():
    ds = make_ds3(20, 20, 0)
    plan = make_insertion_plan(ds, "withinClass", Seed(2))
    assert sorted(plan.order) == list(range(20))
    assert plan.steps == 20


def test_hierarchy_level_one_is_permutation():
    ds = make_ds3(25, 5, 0)
    plan = make_insertion_plan(ds, "hierarchy", Seed(3), levels=1)
    assert sorted(plan.order) == list(range(25))
    assert plan.levels == 1


def test_hierarchy_errors():
    ds = make_ds3(10, 3, 0)
    with pytest.raises(BadHierarchy):
        make_insertion_plan(ds, "hierarchy", Seed(0), levels=0)
    with pytest.raises(BadHierarchy):
        make_insertion_plan(ds, "hierarchy", Seed(0), levels=2, hierarchy=[[0, 1], [1, 2]])
    with pytest.raises(BadHierarchy):
        make_insertion_plan(ds, "hierarchy", Seed(0), levels=2, hierarchy=[[0]])


def test_within_class_batches_share_color():
    ds = make_ds3(40, 6, 1)
    plan = make_insertion_plan(ds, "classBatch", Seed(4))
    for s in range(plan.steps):
        batch = plan.order[plan.batch_boundaries[s]:plan.batch_boundaries[s + 1]]
        assert len({ds.points[i].color for i in batch}) == 1


def test_adversarial_instance_shape():
    ds = adversarial_instance(8)
    assert ds.m == 8
    assert ds.color_count == 5          # n/2 circle colors + shared color
    shared = ds.color_index[4]
    assert len(shared) == 4
    assert all(ds.raw[i][0] == 0 and ds.raw[i][1] == 0 for i in shared)
    zs = sorted(ds.raw[i][2] for i in shared)
    assert zs == [1, 2, 3, 4]
    circle = [ds.raw[i] for i in range(ds.m) if ds.points[i].color != 4]
    assert all(r[2] == 0 for r in circle)
    pts2 = [(r[0], r[1]) for r in circle]
    for i in range(len(pts2)):
        assert cross2(pts2[i - 1], pts2[i], pts2[(i + 1) % len(pts2)]) > 0


def test_adversarial_instance_too_small():
    with pytest.raises(TooSmall):
        adversarial_instance(6)
    with pytest.raises(TooSmall):
        adversarial_instance(9)


def test_remark1_within_class_scaling_smoke():
    # small-n statistical smoke: the adversarial family produces
    # superlinear totals while staying under the coarse upper bound
    n = 512
    ds = adversarial_instance(n)
    totals = []
    for s in range(6):
        plan = make_insertion_plan(ds, "withinClass", Seed(50 + s))
        totals.append(run_hull_plan(ds, plan).total_created)
    mean = sum(totals) / len(totals)
    assert mean >= 0.05 * n * math.log(n)
    assert mean <= 8 * n * math.log(n)


def test_hierarchy_levels_increase_totals_on_remark1():
    n = 512
    ds = adversarial_instance(n)
    means = []
    for levels in (1, 2):
        totals = []
        for s in range(6):
            plan = make_insertion_plan(ds, "hierarchy", Seed(80 + s), levels=levels)
            totals.append(run_hull_plan(ds, plan).total_created)
        means.append(sum(totals) / len(totals))
    # one-level (uncolored) stays near-linear; two levels picks up the log
    assert means[0] <= 8 * n
    assert means[1] >= 2.0 * means[0]


def test_remark3_hierarchy_runs():
    ds = adversarial_instance(64)
    hier = remark3_hierarchy(ds, 3)
    plan = make_insertion_plan(ds, "hierarchy", Seed(5), levels=3, hierarchy=hier)
    stats = run_hull_plan(ds, plan)
    assert stats.total_created >= ds.m
    assert default_hierarchy(ds, 3)      # shape only


def test_plan_modes_produce_consistent_counts():
    ds = make_ds3(24, 4, 11, coord_range=64)
    for mode in ("classBatch", "withinClass"):
        plan = make_insertion_plan(ds, mode, Seed(6))
        stats = run_hull_plan(ds, plan)
        assert stats.total_created >= 4
        assert stats.total_destroyed <= stats.total_created
