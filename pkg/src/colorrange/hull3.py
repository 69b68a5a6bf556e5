"""Incremental 3D convex hull with exact predicates and change counting.

The hull is maintained under a prescribed insertion order.  Visibility is
decided by the perturbed orientation predicate from `predicates`, so the
maintained polytope is always simplicial and coplanar inputs (including the
all-coplanar prefix of adversarial instances) are handled consistently.

Each uninserted point carries a single witness facet it can see (or an
"interior" mark, which is permanent since the hull only grows).  Inserting
a point BFSes over its visible region from the witness, replaces it by the
cone over the horizon, and reassigns orphaned witnesses against the new
facets only; a point that sees none of them is interior to the new hull.
Reassignment batches are tested with a floating-point filter and fall back
to exact integer arithmetic near zero.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInput
from .predicates import cross3, dot3, moment, orient3d_perturbed, sub3

_INTERIOR = -1
_UNSET = -2

_FILTER_REL = 1e-12


def canonical_facet(a, b, c):
    """Cyclic rotation starting at the smallest vertex (orientation kept)."""
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


class _Plane:
    """Cached coefficients for testing point sides against one facet.

    The raw orientation term is n.(q - pa); the perturbation terms are
    c1 = v1.(q - pa) + n.(uq - ua), c2 = un.(q - pa) + v1.(uq - ua),
    c3 = un.(uq - ua) with u the moment-curve displacement of each index.
    """

    __slots__ = ("pa", "ua", "n", "v1", "un", "nf", "offf", "off", "v1f", "d1f")

    def __init__(self, pa, ia, pb, ib, pc, ic):
        self.pa = pa
        self.ua = moment(ia)
        pbp, pcp = sub3(pb, pa), sub3(pc, pa)
        self.n = cross3(pbp, pcp)
        ubp, ucp = sub3(moment(ib), self.ua), sub3(moment(ic), self.ua)
        self.v1 = tuple(x + y for x, y in zip(cross3(ubp, pcp), cross3(pbp, ucp)))
        self.un = cross3(ubp, ucp)
        self.off = dot3(self.n, pa)
        self.nf = (float(self.n[0]), float(self.n[1]), float(self.n[2]))
        self.offf = float(self.off)
        self.v1f = (float(self.v1[0]), float(self.v1[1]), float(self.v1[2]))
        self.d1f = float(dot3(self.v1, pa) + dot3(self.n, self.ua))

    def side(self, q, iq, perturb=True):
        nf0, nf1, nf2 = self.nf
        t0, t1, t2 = nf0 * q[0], nf1 * q[1], nf2 * q[2]
        approx = t0 + t1 + t2 - self.offf
        err = _FILTER_REL * (abs(t0) + abs(t1) + abs(t2) + abs(self.offf)) + 1e-300
        if approx > err:
            return 1
        if approx < -err:
            return -1
        return self.side_exact(q, iq, perturb)

    def side_exact(self, q, iq, perturb):
        q0, q1, q2 = q
        a0, a1, a2 = self.pa
        p0, p1, p2 = q0 - a0, q1 - a1, q2 - a2
        n0, n1, n2 = self.n
        c0 = n0 * p0 + n1 * p1 + n2 * p2
        if c0:
            return 1 if c0 > 0 else -1
        if not perturb:
            raise DegenerateInput("coplanar points without symbolic perturbation")
        t = iq + 1
        b0, b1, b2 = self.ua
        u0, u1, u2 = t - b0, t * t - b1, t * t * t - b2
        v0, v1, v2 = self.v1
        c1 = v0 * p0 + v1 * p1 + v2 * p2 + n0 * u0 + n1 * u1 + n2 * u2
        if c1:
            return 1 if c1 > 0 else -1
        w0, w1, w2 = self.un
        c2 = w0 * p0 + w1 * p1 + w2 * p2 + v0 * u0 + v1 * u1 + v2 * u2
        if c2:
            return 1 if c2 > 0 else -1
        c3 = w0 * u0 + w1 * u1 + w2 * u2
        if c3 == 0:
            raise DegenerateInput("orientation of repeated point index")
        return 1 if c3 > 0 else -1


class IncrementalHull3:
    """Maintains the hull of a growing subset of a fixed 3D point list."""

    # Coordinates up to this bound get an exact vectorized int64 bulk test.
    _EXACT_BULK_BOUND = 1 << 26

    def __init__(self, points, perturb=True):
        self.points = [tuple(int(c) for c in p) for p in points]
        self.perturb = perturb
        self.pts_f = np.array(self.points, dtype=np.float64)
        n = len(self.points)
        max_abs = max((max(abs(c) for c in p) for p in self.points), default=0)
        self._exact_bulk = max_abs <= self._EXACT_BULK_BOUND
        if self._exact_bulk:
            self.pts_i = np.array(self.points, dtype=np.int64)
            ts = np.arange(1, n + 1, dtype=np.float64)
            self.moments_f = np.stack([ts, ts * ts, ts * ts * ts], axis=1)
        self.inserted = [False] * n
        self.witness = [_UNSET] * n
        self.facets = {}
        self.planes = {}
        self.edge_map = {}
        self.buckets = {}
        self.facet_birth = {}
        self.serial = 0
        self._pending = []
        self._next_fid = 0

    # -- facet bookkeeping -------------------------------------------------

    def _add_facet(self, a, b, c):
        fid = self._next_fid
        self._next_fid += 1
        self.facets[fid] = (a, b, c)
        self.planes[fid] = _Plane(self.points[a], a, self.points[b], b, self.points[c], c)
        self.edge_map[(a, b)] = fid
        self.edge_map[(b, c)] = fid
        self.edge_map[(c, a)] = fid
        self.facet_birth[fid] = self.serial
        return fid

    def _remove_facet(self, fid):
        a, b, c = self.facets.pop(fid)
        del self.edge_map[(a, b)]
        del self.edge_map[(b, c)]
        del self.edge_map[(c, a)]
        del self.planes[fid]
        return self.facet_birth.pop(fid)

    def facet_set(self):
        return {canonical_facet(*t) for t in self.facets.values()}

    def _side(self, fid, q_idx):
        return self.planes[fid].side(self.points[q_idx], q_idx, self.perturb)

    # -- witness maintenance -----------------------------------------------

    def _assign_bulk(self, cand, fids):
        """Assign each candidate point the first facet in `fids` it sees;
        points that see none are interior."""
        if not cand:
            return
        if not fids:
            for p in cand:
                self.witness[p] = _INTERIOR
            return
        if len(cand) * len(fids) >= 192:
            self._assign_bulk_np(cand, fids)
            return
        for p in cand:
            w = _INTERIOR
            for fid in fids:
                if self._side(fid, p) > 0:
                    w = fid
                    break
            self.witness[p] = w
            if w != _INTERIOR:
                self.buckets.setdefault(w, []).append(p)

    _CHUNK = 256

    def _assign_bulk_np(self, cand, fids):
        """Chunked first-visible search: most points see one of the first few
        new facets, so columns are tested in blocks with early exit per row."""
        planes = [self.planes[f] for f in fids]
        cand_arr = np.array(cand, dtype=np.intp)
        pending = np.arange(len(cand), dtype=np.intp)
        assigned = np.full(len(cand), -1, dtype=np.intp)
        for base in range(0, len(planes), self._CHUNK):
            chunk = planes[base:base + self._CHUNK]
            idx = cand_arr[pending]
            pos = self._exact_pos_matrix(idx, chunk) if self._exact_bulk \
                else self._filtered_pos_matrix(idx, chunk)
            hit = pos.any(axis=1)
            if hit.any():
                assigned[pending[hit]] = base + np.argmax(pos[hit], axis=1)
                pending = pending[~hit]
                if not len(pending):
                    break
        for t, p in enumerate(cand):
            j = assigned[t]
            if j >= 0:
                fid = fids[int(j)]
                self.witness[p] = fid
                self.buckets.setdefault(fid, []).append(p)
            else:
                self.witness[p] = _INTERIOR

    def _exact_pos_matrix(self, idx, planes):
        """Visibility matrix with c0 computed exactly in two int64 limbs
        (valid for coordinates up to 2^26); perturbation terms are float
        filtered and fall back to exact scalar tests only near zero."""
        qi = self.pts_i[idx]
        nhi = np.array([[c >> 26 for c in p.n] for p in planes], dtype=np.int64)
        nlo = np.array([[c & ((1 << 26) - 1) for c in p.n] for p in planes], dtype=np.int64)
        offhi = np.array([p.off >> 26 for p in planes], dtype=np.int64)
        offlo = np.array([p.off & ((1 << 26) - 1) for p in planes], dtype=np.int64)
        a = qi @ nhi.T - offhi[None, :]
        b = qi @ nlo.T - offlo[None, :]
        carry = b >> 26
        c = a + carry
        blo = b - (carry << 26)
        pos = (c > 0) | ((c == 0) & (blo > 0))
        zero = (c == 0) & (blo == 0)
        if zero.any():
            qf = self.pts_f[idx]
            uqf = self.moments_f[idx]
            v1f = np.array([p.v1f for p in planes])
            nf = np.array([p.nf for p in planes])
            d1f = np.array([p.d1f for p in planes])
            c1 = qf @ v1f.T + uqf @ nf.T - d1f[None, :]
            err = _FILTER_REL * (np.abs(qf) @ np.abs(v1f).T + np.abs(uqf) @ np.abs(nf).T
                                 + np.abs(d1f)[None, :]) + 1e-300
            pos |= zero & (c1 > err)
            unsure = zero & (np.abs(c1) <= err)
            if unsure.any():
                for i, j in zip(*np.nonzero(unsure)):
                    pos[i, j] = planes[j].side_exact(self.points[idx[i]], int(idx[i]), self.perturb) > 0
        return pos

    def _filtered_pos_matrix(self, idx, planes):
        qf = self.pts_f[idx]
        nf = np.array([p.nf for p in planes])
        off = np.array([p.offf for p in planes])
        vals = qf @ nf.T - off[None, :]
        err = _FILTER_REL * (np.abs(qf) @ np.abs(nf).T + np.abs(off)[None, :]) + 1e-300
        pos = vals > err
        unsure = np.abs(vals) <= err
        if unsure.any():
            for i, j in zip(*np.nonzero(unsure)):
                pos[i, j] = planes[j].side_exact(self.points[idx[i]], int(idx[i]), self.perturb) > 0
        return pos

    # -- insertion -----------------------------------------------------------

    def insert(self, idx):
        """Insert point `idx`; returns (#facets created, birth serials of
        facets destroyed)."""
        self.serial += 1
        if len(self._pending) < 4 and not self.facets:
            self._pending.append(idx)
            self.inserted[idx] = True
            if len(self._pending) == 4:
                return self._build_simplex()
            return 0, []
        self.inserted[idx] = True
        w = self.witness[idx]
        if w == _INTERIOR:
            return 0, []
        if w == _UNSET or w not in self.facets:
            raise AssertionError("stale witness for inserted point")

        seen = {w: True}
        visible = [w]
        stack = [w]
        horizon = []
        while stack:
            f = stack.pop()
            a, b, c = self.facets[f]
            for u, v in ((a, b), (b, c), (c, a)):
                g = self.edge_map[(v, u)]
                vis = seen.get(g)
                if vis is None:
                    vis = self._side(g, idx) > 0
                    seen[g] = vis
                    if vis:
                        visible.append(g)
                        stack.append(g)
                if not vis:
                    horizon.append((u, v))

        orphans = []
        destroyed_births = []
        for f in visible:
            destroyed_births.append(self._remove_facet(f))
            for p in self.buckets.pop(f, ()):
                if not self.inserted[p] and self.witness[p] == f:
                    orphans.append(p)

        new_fids = [self._add_facet(u, v, idx) for u, v in horizon]
        self._assign_bulk(orphans, new_fids)
        return len(new_fids), destroyed_births

    def _build_simplex(self):
        p0, p1, p2, p3 = self._pending
        if self.perturb:
            s = orient3d_perturbed(
                self.points[p0], p0, self.points[p1], p1,
                self.points[p2], p2, self.points[p3], p3,
            )
        else:
            from .predicates import orient3d

            s = orient3d(self.points[p0], self.points[p1], self.points[p2], self.points[p3])
            if s == 0:
                raise DegenerateInput("first 4 points are coplanar; reorder or perturb")
        if s > 0:
            p1, p2 = p2, p1
        fids = [
            self._add_facet(p0, p1, p2),
            self._add_facet(p0, p3, p1),
            self._add_facet(p1, p3, p2),
            self._add_facet(p0, p2, p3),
        ]
        rest = [i for i in range(len(self.points)) if not self.inserted[i]]
        self._assign_bulk(rest, fids)
        return 4, []


def brute_force_facets(points, indices, perturb=True):
    """All hull facets of `points[indices]` by definition: an oriented triple
    is a facet iff every other chosen point lies strictly on its negative
    side (perturbed orientation).  O(n^4); for tests on tiny inputs."""
    idx = list(indices)
    out = set()
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            for k in range(j + 1, len(idx)):
                a, b, c = idx[i], idx[j], idx[k]
                neg = pos = True
                for d in idx:
                    if d in (a, b, c):
                        continue
                    if perturb:
                        s = orient3d_perturbed(
                            points[a], a, points[b], b, points[c], c, points[d], d
                        )
                    else:
                        from .predicates import orient3d

                        s = orient3d(points[a], points[b], points[c], points[d])
                        if s == 0:
                            raise DegenerateInput("degenerate input without perturbation")
                    if s > 0:
                        neg = False
                    else:
                        pos = False
                    if not (neg or pos):
                        break
                if neg:
                    out.add(canonical_facet(a, b, c))
                if pos:
                    out.add(canonical_facet(a, c, b))
    return out
