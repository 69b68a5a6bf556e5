import random

import pytest

from colorrange.envelope2 import LowerEnvelope, brute_force_envelope
from colorrange.errors import DegenerateInput, DuplicateLine, TooSmall
from colorrange.hull3 import IncrementalHull3, brute_force_facets
from colorrange.ric import envelope2_changes, hull3_changes


def test_tetrahedron_counts():
    stats = hull3_changes([(0, 0, 0), (9, 0, 0), (0, 9, 0), (0, 0, 9)])
    assert stats.total_created == 4
    assert stats.total_destroyed == 0


def test_five_point_batch_net_equals_final_hull():
    pts = [(0, 0, 0), (10, 0, 0), (0, 10, 0), (0, 0, 10), (10, 10, 10)]
    stats = hull3_changes(pts, [0, 5])
    assert stats.total_created == len(brute_force_facets(pts, range(5)))
    assert stats.total_destroyed == 0


def test_too_few_points():
    with pytest.raises(TooSmall):
        hull3_changes([(0, 0, 0), (1, 1, 1), (2, 2, 3)])


def test_degenerate_without_perturbation():
    flat = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (2, 2, 0), (1, 1, 5)]
    with pytest.raises(DegenerateInput):
        hull3_changes(flat, perturb=False)
    stats = hull3_changes(flat)      # perturbation handles it
    assert stats.total_created >= 4


def test_incremental_matches_from_scratch_prefixes():
    for trial in range(12):
        rng = random.Random(trial)
        n = rng.randint(4, 10)
        pts = [(rng.randrange(12), rng.randrange(12), rng.randrange(12)) for _ in range(n)]
        hull = IncrementalHull3(pts)
        for i in range(n):
            hull.insert(i)
            if i >= 3:
                assert hull.facet_set() == brute_force_facets(pts, range(i + 1))


def test_incremental_matches_on_coplanar_and_duplicates():
    flat = [(0, 0, 0), (4, 0, 0), (4, 4, 0), (0, 4, 0), (2, 2, 0), (1, 3, 0), (3, 1, 0)]
    hull = IncrementalHull3(flat)
    for i in range(len(flat)):
        hull.insert(i)
        if i >= 3:
            assert hull.facet_set() == brute_force_facets(flat, range(i + 1))
    dup = [(1, 1, 1), (1, 1, 1), (5, 1, 1), (1, 5, 1), (1, 1, 5), (5, 5, 5)]
    hull = IncrementalHull3(dup)
    for i in range(len(dup)):
        hull.insert(i)
        if i >= 3:
            assert hull.facet_set() == brute_force_facets(dup, range(i + 1))


def test_conservation_created_ge_destroyed():
    rng = random.Random(9)
    pts = [(rng.randrange(1, 200), rng.randrange(1, 200), rng.randrange(1, 200))
           for _ in range(120)]
    stats = hull3_changes(pts)
    assert stats.total_destroyed <= stats.total_created
    assert sum(stats.created_per_step) == stats.total_created


def test_envelope_two_crossing_lines():
    stats = envelope2_changes([(1, 0), (-1, 0)])
    assert stats.created_per_step == [1, 2]
    assert stats.destroyed_per_step == [0, 1]


def test_envelope_line_above_no_change():
    stats = envelope2_changes([(0, 0), (0, 7)])
    assert stats.created_per_step == [1, 0]
    assert stats.destroyed_per_step == [0, 0]


def test_envelope_duplicate_line():
    with pytest.raises(DuplicateLine):
        envelope2_changes([(1, 2), (1, 2)])


def test_envelope_matches_brute_force():
    for trial in range(15):
        rng = random.Random(100 + trial)
        lines, seen = [], set()
        while len(lines) < rng.randint(1, 45):
            ab = (rng.randint(-40, 40), rng.randint(-40, 40))
            if ab not in seen:
                seen.add(ab)
                lines.append(ab)
        env = LowerEnvelope()
        for i, (a, b) in enumerate(lines):
            env.insert(i, a, b)
            assert env.hull == brute_force_envelope(lines[: i + 1])


def test_envelope_random_growth_is_linear():
    # uncolored analog: per-line created edges stay bounded by a constant
    rng = random.Random(3)
    for n in (256, 1024):
        lines, seen = [], set()
        while len(lines) < n:
            ab = (rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
            if ab not in seen:
                seen.add(ab)
                lines.append(ab)
        stats = envelope2_changes(lines)
        assert stats.total_created / n < 6.0
