"""Compiled kernels for point sets in general position.

w(a, b) is the largest distance from segment ab to a point in the closed
halfplane left of a->b. Such a point is either in the cone behind a (distance
to a), in the cone beyond b (distance to b), or over the segment (distance to
the line). The line term is maximized at a hull vertex, found by binary
search over the hull. Each cone term is a lookup in a per-apex table built by
sweeping a right-angle cone once around the apex with a max-heap.
"""
import heapq
import math

import numpy as np
from numba import njit

from ._kernels import argmax_cyclic, seg_dist

_CACHE = True
_TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi
# Cone membership intervals are widened by this much (radians) so that
# rounding in atan2 never drops a point lying exactly on a cone edge.
# Any point let in by mistake is caught by the exact check afterwards.
_DELTA = 1e-12
_ERRBOUND = (3.0 + 16.0 * 2.0**-53) * 2.0**-53
_SPLITTER = 134217729.0  # 2**27 + 1


# ---------------------------------------------------------------------------
# exact orientation
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def _two_sum(a, b):
    x = a + b
    bv = x - a
    av = x - bv
    return x, (a - av) + (b - bv)


@njit(cache=_CACHE)
def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=_CACHE)
def _two_prod(a, b):
    x = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - x) + ahi * blo + alo * bhi) + alo * blo
    return x, err


@njit(cache=_CACHE)
def orient_exact(ax, ay, bx, by, cx, cy):
    """Sign of the area of triangle abc: +1 left turn, -1 right turn, 0 collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    bound = _ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    # Expand the determinant into six exact products and sum them exactly.
    terms = np.empty(12)
    k = 0
    for s, u, v in ((1.0, ax, by), (-1.0, ax, cy), (-1.0, cx, by),
                    (-1.0, ay, bx), (1.0, ay, cx), (1.0, cy, bx)):
        p, e = _two_prod(u, v)
        terms[k] = s * p
        terms[k + 1] = s * e
        k += 2
    exp = np.zeros(13)
    m = 0
    for t in range(12):
        q = terms[t]
        for i in range(m):
            q, h = _two_sum(q, exp[i])
            exp[i] = h
        exp[m] = q
        m += 1
    for i in range(m - 1, -1, -1):
        if exp[i] > 0.0:
            return 1
        if exp[i] < 0.0:
            return -1
    return 0


# ---------------------------------------------------------------------------
# edge weights
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def brute_weight(px, py, a, b):
    """w(a, b) by scanning every point."""
    best = 0.0
    ax, ay, bx, by = px[a], py[a], px[b], py[b]
    for x in range(px.shape[0]):
        if orient_exact(ax, ay, bx, by, px[x], py[x]) >= 0:
            d = seg_dist(px[x], py[x], ax, ay, bx, by)
            if d > best:
                best = d
    return best


@njit(cache=_CACHE)
def _wrap(s):
    s = s - _TWO_PI * math.floor(s / _TWO_PI)
    if s >= _TWO_PI:
        s -= _TWO_PI
    return s


@njit(cache=_CACHE)
def cone_table(px, py, c, th):
    """Farthest point from apex c inside the cone of directions [s, s + pi/2],
    as a step function of s in [0, 2 pi). Returns (breakpoints, argmax) with
    argmax -1 where the cone is empty.
    """
    n = px.shape[0]
    r = np.empty(n)
    for x in range(n):
        r[x] = seg_dist(px[x], py[x], px[c], py[c], px[c], py[c])
    cap = 4 * n
    ev_t = np.empty(cap)
    ev_kind = np.empty(cap, dtype=np.int64)  # 0 insert, 1 remove
    ev_id = np.empty(cap, dtype=np.int64)  # 2x or 2x+1 for the two pieces of a wrapped interval
    m = 0
    length = _HALF_PI + 2.0 * _DELTA
    for x in range(n):
        if x == c:
            continue
        st = _wrap(th[x] - _HALF_PI - _DELTA)
        en = st + length
        if en >= _TWO_PI:
            ev_t[m] = 0.0
            ev_kind[m] = 0
            ev_id[m] = 2 * x + 1
            m += 1
            ev_t[m] = en - _TWO_PI
            ev_kind[m] = 1
            ev_id[m] = 2 * x + 1
            m += 1
            ev_t[m] = st
            ev_kind[m] = 0
            ev_id[m] = 2 * x
            m += 1
        else:
            ev_t[m] = st
            ev_kind[m] = 0
            ev_id[m] = 2 * x
            m += 1
            ev_t[m] = en
            ev_kind[m] = 1
            ev_id[m] = 2 * x
            m += 1
    # Inserts go before removals at equal times because the intervals are
    # closed: sort by kind, then stably by time.
    kind_order = np.argsort(ev_kind[:m], kind="mergesort")
    t_sorted = ev_t[kind_order]
    order = kind_order[np.argsort(t_sorted, kind="mergesort")]
    alive = np.zeros(2 * n, dtype=np.bool_)
    heap = [(0.0, np.int64(0))]
    heap.pop()
    T = np.empty(m + 1)
    A = np.empty(m + 1, dtype=np.int64)
    nb = 0
    p = 0
    t = 0.0
    while True:
        while p < m and ev_t[order[p]] <= t:
            e = order[p]
            if ev_kind[e] == 0:
                alive[ev_id[e]] = True
                heapq.heappush(heap, (-r[ev_id[e] >> 1], ev_id[e]))
            else:
                alive[ev_id[e]] = False
            p += 1
        while len(heap) > 0 and not alive[heap[0][1]]:
            heapq.heappop(heap)
        T[nb] = t
        A[nb] = (heap[0][1] >> 1) if len(heap) > 0 else -1
        nb += 1
        if p >= m:
            break
        t = ev_t[order[p]]
    return T[:nb].copy(), A[:nb].copy()


@njit(cache=_CACHE)
def _lookup(T, A, s):
    idx = np.searchsorted(T, _wrap(s), side="right") - 1
    if idx < 0:
        idx = 0
    return A[idx]


@njit(cache=_CACHE)
def edge_weights(px, py, hx, hy):
    """All w(a, b), plus how many pairs needed the linear-scan fallback."""
    n = px.shape[0]
    W = np.zeros((n, n))
    bad = np.zeros((n, n), dtype=np.bool_)
    # slab term: hull vertex farthest to the left of a->b
    for a in range(n):
        ax = px[a]
        ay = py[a]
        for b in range(n):
            if a == b:
                continue
            bx = px[b]
            by = py[b]
            v = argmax_cyclic(hx, hy, -(by - ay), bx - ax)
            if orient_exact(ax, ay, bx, by, hx[v], hy[v]) >= 0:
                W[a, b] = seg_dist(hx[v], hy[v], ax, ay, bx, by)
    th = np.empty(n)
    for c in range(n):
        for x in range(n):
            th[x] = math.atan2(py[x] - py[c], px[x] - px[c])
        T, A = cone_table(px, py, c, th)
        for x in range(n):
            if x == c:
                continue
            # behind a = c on edge c->x: directions [th + pi/2, th + pi]
            v = _lookup(T, A, th[x] + _HALF_PI)
            if v >= 0:
                if orient_exact(px[c], py[c], px[x], py[x], px[v], py[v]) >= 0:
                    d = seg_dist(px[v], py[v], px[c], py[c], px[x], py[x])
                    if d > W[c, x]:
                        W[c, x] = d
                else:
                    bad[c, x] = True
            # beyond b = c on edge x->c: directions [th + pi, th + 3 pi / 2]
            v = _lookup(T, A, th[x] + math.pi)
            if v >= 0:
                if orient_exact(px[x], py[x], px[c], py[c], px[v], py[v]) >= 0:
                    d = seg_dist(px[v], py[v], px[x], py[x], px[c], py[c])
                    if d > W[x, c]:
                        W[x, c] = d
                else:
                    bad[x, c] = True
    fallbacks = 0
    for a in range(n):
        for b in range(n):
            if bad[a, b]:
                W[a, b] = brute_weight(px, py, a, b)
                fallbacks += 1
    return W, fallbacks


@njit(cache=_CACHE)
def brute_weights(px, py):
    n = px.shape[0]
    W = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            if a != b:
                W[a, b] = brute_weight(px, py, a, b)
    return W


@njit(cache=_CACHE)
def point_radii(px, py):
    """Distance from each point to the point farthest from it."""
    n = px.shape[0]
    out = np.zeros(n)
    for a in range(n):
        best = 0.0
        for b in range(n):
            d = seg_dist(px[b], py[b], px[a], py[a], px[a], py[a])
            if d > best:
                best = d
        out[a] = best
    return out


# ---------------------------------------------------------------------------
# shortest cycles
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def _csr(adj):
    n = adj.shape[0]
    ptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        cnt = 0
        for v in range(n):
            if adj[u, v]:
                cnt += 1
        ptr[u + 1] = ptr[u] + cnt
    nbr = np.empty(ptr[n], dtype=np.int64)
    for u in range(n):
        k = ptr[u]
        for v in range(n):
            if adj[u, v]:
                nbr[k] = v
                k += 1
    return ptr, nbr


@njit(cache=_CACHE)
def min_cycle(adj, sources, limit):
    """Shortest directed cycle of length >= 2 through one of ``sources``,
    considering only lengths <= limit.

    One BFS per source; a cycle closes at u when u -> source is an edge.
    Ties go to the smallest (source, last vertex) pair. Returns the cycle as
    vertex indices starting at its source, or an empty array.
    """
    n = adj.shape[0]
    ptr, nbr = _csr(adj)
    best = limit + 1
    bs = -1
    bt = -1
    dist = np.empty(n, dtype=np.int64)
    par = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    best_par = np.empty(n, dtype=np.int64)
    for s in sources:
        if best <= 2:
            break
        dist[:] = -1
        dist[s] = 0
        par[s] = -1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if u != s and adj[u, s]:
                if du + 1 < best or (du + 1 == best and s == bs and u < bt):
                    best = du + 1
                    bs = s
                    bt = u
                    best_par[:] = par
            if du + 2 > best or (du + 2 == best and bs != s):
                continue
            for e in range(ptr[u], ptr[u + 1]):
                v = nbr[e]
                if dist[v] < 0:
                    dist[v] = du + 1
                    par[v] = u
                    queue[tail] = v
                    tail += 1
    if bs < 0:
        return np.empty(0, dtype=np.int64)
    path = np.empty(best, dtype=np.int64)
    u = bt
    for k in range(best - 1, -1, -1):
        path[k] = u
        u = best_par[u]
    return path
