"""Exact geometric predicates over integer coordinates.

All signs are decided with arbitrary-precision integer arithmetic; there is
no floating point (and hence no tolerance) anywhere in a predicate.  Inputs
that are degenerate in the ordinary sense are resolved by a symbolic
perturbation: point ``i`` is conceptually displaced by ``eps * (t, t^2, t^3)``
with ``t = i + 1``, an infinitesimal step along the moment curve.  Because
any four distinct moment-curve points are affinely independent, the
perturbed orientation of four points with distinct indices is never zero,
and all answers are simultaneously consistent with an actual point set for
small enough ``eps > 0``.  The net effect is an index-based tie-break that
behaves exactly like a general-position input.
"""

from __future__ import annotations


def sub3(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(r1, r2, r3):
    return dot3(cross3(r1, r2), r3)


def moment(index: int):
    """Perturbation direction for a point index (distinct per index)."""
    t = index + 1
    return (t, t * t, t * t * t)


def orient3d(a, b, c, d) -> int:
    """Sign of det[b-a; c-a; d-a]: +1 if d is on the positive side of the
    oriented plane (a,b,c), -1 on the negative side, 0 if coplanar."""
    v = det3(sub3(b, a), sub3(c, a), sub3(d, a))
    return (v > 0) - (v < 0)


def orient3d_perturbed(a, ia, b, ib, c, ic, d, id_) -> int:
    """Like orient3d but never 0: ties are broken by the moment-curve
    perturbation keyed on the four (distinct) point indices."""
    pb, pc, pq = sub3(b, a), sub3(c, a), sub3(d, a)
    n = cross3(pb, pc)
    c0 = dot3(n, pq)
    if c0:
        return 1 if c0 > 0 else -1
    ua = moment(ia)
    ub, uc, uq = sub3(moment(ib), ua), sub3(moment(ic), ua), sub3(moment(id_), ua)
    v1 = tuple(x + y for x, y in zip(cross3(ub, pc), cross3(pb, uc)))
    c1 = dot3(v1, pq) + dot3(n, uq)
    if c1:
        return 1 if c1 > 0 else -1
    un = cross3(ub, uc)
    c2 = dot3(un, pq) + dot3(v1, uq)
    if c2:
        return 1 if c2 > 0 else -1
    c3 = dot3(un, uq)
    if c3 == 0:
        raise ValueError("perturbed orientation of repeated point indices")
    return 1 if c3 > 0 else -1


def cross2(o, a, b):
    """2D cross product (a-o) x (b-o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
