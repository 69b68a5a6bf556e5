"""Shared test helpers: small random datasets and query samplers."""

import random

from colorrange.core import Dominance3, Rect2, reduce_to_rank_space


def make_ds3(m, colors, seed, coord_range=1000, weight_max=1):
    rng = random.Random(seed)
    raws = []
    for i in range(m):
        color = i if i < colors else rng.randrange(colors)
        w = rng.randint(1, weight_max)
        raws.append(((rng.randrange(1, coord_range), rng.randrange(1, coord_range),
                      rng.randrange(1, coord_range)), color, w))
    return reduce_to_rank_space(raws, 3)


def make_ds2(m, colors, seed, coord_range=1000, weight_max=1):
    rng = random.Random(seed)
    raws = []
    for i in range(m):
        color = i if i < colors else rng.randrange(colors)
        w = rng.randint(1, weight_max)
        raws.append(((rng.randrange(1, coord_range), rng.randrange(1, coord_range)),
                     color, w))
    return reduce_to_rank_space(raws, 2)


def t2pts(ds):
    return [(p.coords[0], p.coords[1], p.color, p.weight) for p in ds.points]


def rand_dominance(rng, m):
    return Dominance3(rng.randrange(m + 1), rng.randrange(m + 1), rng.randrange(m + 1))


def rand_rect(rng, m):
    a, b = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    c, d = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    return Rect2(a, b, c, d)
