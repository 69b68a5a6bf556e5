"""Structure-vs-oracle verification used by the CLI `verify` subcommand.

Each checker runs the structure's exhaustive small-instance suite plus a
batch of random queries against the brute-force oracle and reports the
first counterexample with enough detail to reproduce it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .colortree import build_color_split_tree, report_colors
from .core import Dataset, Dominance3, Halfplane2, Halfspace3, Rect2
from .errors import RangeSearchError
from .k1exact import build_exact_k1_dominance, exact_k1_query
from .k1mc import FAMILY_DOMINANCE, FAMILY_HALFPLANE, FAMILY_HALFSPACE, build_mc_k1
from .oracle import oracle_colors, oracle_conflict_colors, oracle_k, oracle_type2
from .seeding import Seed, as_seed
from .type2 import build_4sided, build_general, build_shallow_cutting

SELECTORS = ("exactK1", "mcK1", "colorTree", "type2Capped", "type2General", "shallowCutting")

_EXHAUSTIVE_LIMIT = 64


def dominance_kind_table(ds: Dataset):
    """Independent exhaustive oracle for small 3D instances: dynamic-
    programming tables of point count and min/max color id over every
    dominance prefix of the rank grid."""
    m = ds.m
    size = m + 1
    big = ds.color_count + 1
    cnt = [[[0] * size for _ in range(size)] for _ in range(size)]
    mn = [[[big] * size for _ in range(size)] for _ in range(size)]
    mx = [[[-1] * size for _ in range(size)] for _ in range(size)]
    at = {}
    for p in ds.points:
        at[p.coords] = p.color
    for x in range(1, size):
        for y in range(1, size):
            for z in range(1, size):
                c = cnt[x - 1][y][z] + cnt[x][y - 1][z] - cnt[x - 1][y - 1][z]
                c += cnt[x][y][z - 1] - cnt[x - 1][y][z - 1] - cnt[x][y - 1][z - 1]
                c += cnt[x - 1][y - 1][z - 1]
                lo = min(mn[x - 1][y][z], mn[x][y - 1][z], mn[x][y][z - 1])
                hi = max(mx[x - 1][y][z], mx[x][y - 1][z], mx[x][y][z - 1])
                color = at.get((x, y, z))
                if color is not None:
                    c += 1
                    lo = min(lo, color)
                    hi = max(hi, color)
                cnt[x][y][z] = c
                mn[x][y][z] = lo
                mx[x][y][z] = hi
    return cnt, mn, mx


def _rand_dominance(rng, m):
    return Dominance3(rng.randrange(m + 1), rng.randrange(m + 1), rng.randrange(m + 1))


def _rand_rect(rng, m):
    a, b = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    c, d = sorted((rng.randrange(1, m + 1), rng.randrange(1, m + 1)))
    return Rect2(a, b, c, d)


def _rand_halfplane(rng, ds):
    lo = min(min(r) for r in ds.raw)
    hi = max(max(r) for r in ds.raw)
    return Halfplane2(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                      Fraction(rng.randint(2 * lo - hi, 2 * hi - lo)))


def _rand_halfspace(rng, ds):
    lo = min(min(r) for r in ds.raw)
    hi = max(max(r) for r in ds.raw)
    return Halfspace3(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)),
                      Fraction(rng.randint(4 * lo - 3 * hi, 4 * hi - 3 * lo)))


def verify_exact_k1(ds: Dataset, queries: int, seed, structure=None) -> Tuple[bool, str]:
    st = structure if structure is not None else build_exact_k1_dominance(ds, as_seed(seed).child("b"))
    if ds.m <= _EXHAUSTIVE_LIMIT:
        cnt, mn, mx = dominance_kind_table(ds)
        for x in range(ds.m + 1):
            for y in range(ds.m + 1):
                for z in range(ds.m + 1):
                    res = exact_k1_query(st, Dominance3(x, y, z))
                    if cnt[x][y][z] == 0:
                        want = "empty"
                    elif mn[x][y][z] == mx[x][y][z]:
                        want = "single"
                    else:
                        want = "multi"
                    if res.kind != want:
                        return False, f"exactK1 mismatch at corner ({x},{y},{z}): {res.kind} != {want}"
                    if res.kind == "single":
                        p = ds.points[res.witness]
                        if not Dominance3(x, y, z).contains(*p.coords) or p.color != res.color:
                            return False, f"exactK1 witness broken at ({x},{y},{z})"
    rng = as_seed(seed).child("q").rng()
    for t in range(queries):
        q = _rand_dominance(rng, ds.m)
        res = exact_k1_query(st, q)
        k = oracle_k(ds, q)
        want = "empty" if k == 0 else ("single" if k == 1 else "multi")
        if res.kind != want:
            return False, f"exactK1 mismatch at {q} (query {t}): {res.kind} != {want}"
    return True, f"exactK1 ok ({queries} random queries)"


def verify_mc_k1(ds: Dataset, queries: int, seed, family: str = FAMILY_DOMINANCE,
                 cap: int = 20, structure=None) -> Tuple[bool, str]:
    seed = as_seed(seed)
    st = structure if structure is not None else build_mc_k1(ds, family, cap, seed.child("b"))
    if family == FAMILY_DOMINANCE and ds.m <= 200:
        for t, cell in enumerate(st.cells()):
            want = oracle_conflict_colors(ds, st.cell_corner(cell))
            if cell.true_count != len(want) or (not cell.bad and list(cell.conflict) != want):
                return False, f"mcK1 conflict list mismatch at cell {t}: corner {st.cell_corner(cell)}"
    rng = seed.child("q").rng()
    make = {FAMILY_DOMINANCE: lambda: _rand_dominance(rng, ds.m),
            FAMILY_HALFPLANE: lambda: _rand_halfplane(rng, ds),
            FAMILY_HALFSPACE: lambda: _rand_halfspace(rng, ds)}[family]
    for t in range(queries):
        q = make()
        res = st.query(q)
        if res.yes:
            actual = oracle_colors(ds, q)
            if actual != [res.color]:
                return False, f"mcK1 UNSOUND yes at {q} (query {t}): colors {actual}, said {res.color}"
            p = ds.points[res.witness]
            inside = q.contains(*p.coords) if family == FAMILY_DOMINANCE else q.contains_raw(*ds.raw[res.witness])
            if not inside or p.color != res.color:
                return False, f"mcK1 witness broken at {q} (query {t})"
    return True, f"mcK1/{family} sound on {queries} queries"


def verify_color_tree(ds: Dataset, queries: int, seed, mode: str = "exact",
                      family: str = FAMILY_DOMINANCE, structure=None) -> Tuple[bool, str]:
    seed = as_seed(seed)
    tree = structure if structure is not None else build_color_split_tree(
        ds, mode, family, seed.child("b"))
    rng = seed.child("q").rng()
    make = {FAMILY_DOMINANCE: lambda: _rand_dominance(rng, ds.m),
            FAMILY_HALFPLANE: lambda: _rand_halfplane(rng, ds),
            FAMILY_HALFSPACE: lambda: _rand_halfspace(rng, ds)}[family]
    for t in range(queries):
        q = make()
        got, _ = report_colors(tree, q)
        want = oracle_colors(ds, q)
        if got != want:
            return False, f"colorTree mismatch at {q} (query {t}): {got} != {want}"
    return True, f"colorTree/{mode}/{family} ok on {queries} queries"


def _t2pts(ds: Dataset):
    return [(p.coords[0], p.coords[1], p.color, p.weight) for p in ds.points]


def verify_type2_capped(ds: Dataset, queries: int, seed, tau: int = 8,
                        structure=None) -> Tuple[bool, str]:
    st = structure if structure is not None else build_4sided(_t2pts(ds), tau, ds.m)
    rng = as_seed(seed).child("q").rng()
    for t in range(queries):
        q = _rand_rect(rng, ds.m)
        got = st.query(q.xlo, q.xhi, q.ylo, q.yhi)
        want = oracle_type2(ds, q)
        if got is None:
            if want.k <= tau:
                return False, f"type2Capped NULL with k={want.k} <= tau={tau} at {q} (query {t})"
        elif got != want:
            return False, f"type2Capped mismatch at {q} (query {t})"
    return True, f"type2Capped ok on {queries} queries (tau={tau})"


def verify_type2_general(ds: Dataset, queries: int, seed, tau=None,
                         structure=None) -> Tuple[bool, str]:
    st = structure if structure is not None else build_general(_t2pts(ds), tau=tau, m_bound=ds.m)
    rng = as_seed(seed).child("q").rng()
    for t in range(queries):
        q = _rand_rect(rng, ds.m)
        got = st.query(q.xlo, q.xhi, q.ylo, q.yhi)
        want = oracle_type2(ds, q)
        if got != want:
            return False, f"type2General mismatch at {q} (query {t})"
    return True, f"type2General ok on {queries} queries"


def verify_shallow_cutting(ds: Dataset, queries: int, seed, structure=None) -> Tuple[bool, str]:
    pts = _t2pts(ds)
    rng = as_seed(seed).child("q").rng()
    for t in (1, 2, 4, 8):
        sc = structure if structure is not None else build_shallow_cutting(pts, t)
        for j, (X, Y, clist) in enumerate(sc.cells):
            dom = sorted({p[2] for p in pts if p[0] <= X and p[1] <= Y})
            if list(clist) != dom:
                return False, f"shallowCutting clist mismatch at cell {j} (t={t})"
            if len(clist) > 2 * t:
                return False, f"shallowCutting cell {j} has {len(clist)} > 2t colors (t={t})"
        if len(sc.cells) > 4 * len(pts) / t + 1:
            return False, f"shallowCutting too many cells at t={t}"
        for s in range(queries):
            qx, qy = rng.randrange(ds.m + 1), rng.randrange(ds.m + 2)
            j = sc.locate(qx, qy)
            direct = any(qx <= X and qy <= Y for (X, Y, _) in sc.cells)
            if (j is not None) != direct:
                return False, f"shallowCutting membership mismatch at ({qx},{qy}) t={t}"
            if j is None:
                k = len({p[2] for p in pts if p[0] <= qx and p[1] <= qy})
                if k < t:
                    return False, f"shallowCutting uncovered ({qx},{qy}) dominates {k} < t={t}"
        if structure is not None:
            break
    return True, "shallowCutting invariants ok"


def verify_structure(ds: Dataset, selector: str, queries: int, seed, **kwargs) -> Tuple[bool, str]:
    """Dispatch a named verification; returns (passed, message)."""
    if selector == "exactK1":
        return verify_exact_k1(ds, queries, seed, **kwargs)
    if selector == "mcK1":
        return verify_mc_k1(ds, queries, seed, **kwargs)
    if selector == "colorTree":
        return verify_color_tree(ds, queries, seed, **kwargs)
    if selector == "type2Capped":
        return verify_type2_capped(ds, queries, seed, **kwargs)
    if selector == "type2General":
        return verify_type2_general(ds, queries, seed, **kwargs)
    if selector == "shallowCutting":
        return verify_shallow_cutting(ds, queries, seed, **kwargs)
    raise RangeSearchError(f"unknown structure selector {selector!r}")
