"""Deterministic dataset generation for tests, experiments, and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Dataset, reduce_to_rank_space
from .errors import BadSpec
from .ric import adversarial_instance
from .seeding import Seed, as_seed

FAMILIES = ("uniform3", "uniform2", "zipfColors", "clustered", "remark1")

_COORD_RANGE = 1 << 20


@dataclass(frozen=True)
class GenSpec:
    family: str
    m: int
    m_c: int = 1
    weight_max: int = 1
    seed: int = 0


def _colors(rng, m, m_c, weights=None):
    """Dense color assignment: every id in {0..m_c-1} occurs at least once."""
    out = list(range(m_c))
    for _ in range(m - m_c):
        if weights is None:
            out.append(rng.randrange(m_c))
        else:
            r = rng.random() * weights[-1]
            lo, hi = 0, m_c - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if weights[mid] < r:
                    lo = mid + 1
                else:
                    hi = mid
            out.append(lo)
    rng.shuffle(out)
    return out


def generate(spec: GenSpec) -> Dataset:
    if spec.m < 1 or not 1 <= spec.m_c <= spec.m or spec.weight_max < 1:
        raise BadSpec(f"bad generation spec {spec}")
    if spec.family not in FAMILIES:
        raise BadSpec(f"unknown family {spec.family!r}")
    if spec.family == "remark1":
        return adversarial_instance(spec.m)

    rng = as_seed(Seed(spec.seed)).child("gen", spec.family).rng()
    m, m_c = spec.m, spec.m_c

    def w():
        return rng.randint(1, spec.weight_max)

    if spec.family == "uniform3":
        colors = _colors(rng, m, m_c)
        raws = [((rng.randrange(1, _COORD_RANGE), rng.randrange(1, _COORD_RANGE),
                  rng.randrange(1, _COORD_RANGE)), colors[i], w()) for i in range(m)]
        return reduce_to_rank_space(raws, 3)
    if spec.family == "uniform2":
        colors = _colors(rng, m, m_c)
        raws = [((rng.randrange(1, _COORD_RANGE), rng.randrange(1, _COORD_RANGE)),
                 colors[i], w()) for i in range(m)]
        return reduce_to_rank_space(raws, 2)
    if spec.family == "zipfColors":
        cum, total = [], 0.0
        for c in range(m_c):
            total += 1.0 / (c + 1)
            cum.append(total)
        colors = _colors(rng, m, m_c, weights=cum)
        raws = [((rng.randrange(1, _COORD_RANGE), rng.randrange(1, _COORD_RANGE)),
                 colors[i], w()) for i in range(m)]
        return reduce_to_rank_space(raws, 2)
    # clustered: one gaussian blob per color
    centers = [(rng.randrange(1, _COORD_RANGE), rng.randrange(1, _COORD_RANGE))
               for _ in range(m_c)]
    sigma = _COORD_RANGE // (8 * max(1, int(m_c ** 0.5)))
    colors = _colors(rng, m, m_c)
    raws = []
    for i in range(m):
        cx, cy = centers[colors[i]]
        x = max(1, min(_COORD_RANGE, round(rng.gauss(cx, sigma))))
        y = max(1, min(_COORD_RANGE, round(rng.gauss(cy, sigma))))
        raws.append(((x, y), colors[i], w()))
    return reduce_to_rank_space(raws, 2)
