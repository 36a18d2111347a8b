"""Compiled inner loops for convex chains.

Conventions shared by every kernel here:

* ``xs``, ``ys`` hold the chain vertices in clockwise order, 0-based.
* Arcs are addressed by *positions* in the doubled index space ``[0, 2n)``;
  position ``p`` is vertex ``p % n``. A clockwise arc from vertex ``i`` to
  vertex ``j`` is the position range ``[i, j]`` when ``i <= j`` and
  ``[i, j + n]`` otherwise, so it is always one contiguous range.
* ``tree`` is the farthest-vertex structure built by :func:`build_tree`, or
  ``empty_tree()`` for the linear-scan backend. It is a tuple
  ``(N, node_hi, env_off, env_cnt, env_row, env_col)``.
"""
import math

import numpy as np
from numba import njit

_CACHE = True


@njit(cache=_CACHE)
def seg_dist(px, py, ax, ay, bx, by):
    # Mirror of geom_core.seg_dist; keep identical.
    dx = bx - ax
    dy = by - ay
    ux = px - ax
    uy = py - ay
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return math.sqrt(ux * ux + uy * uy)
    t = ux * dx + uy * dy
    if t <= 0.0:
        return math.sqrt(ux * ux + uy * uy)
    if t >= l2:
        vx = px - bx
        vy = py - by
        return math.sqrt(vx * vx + vy * vy)
    return abs(dx * uy - dy * ux) / math.sqrt(l2)


@njit(cache=_CACHE)
def _d2(xs, ys, a, b):
    dx = xs[a] - xs[b]
    dy = ys[a] - ys[b]
    return dx * dx + dy * dy


def empty_tree():
    z = np.zeros(1, dtype=np.int64)
    return (0, z, z, z, z, z)


# ---------------------------------------------------------------------------
# farthest-vertex tree
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def _crossing(xs, ys, n, hi, t, c, lo_r, R):
    # First row offset r in [lo_r, R) at which column c is strictly farther than
    # column t from row vertex (hi + 1 + r) % n; R if none. Monotone in r.
    lo = lo_r
    up = R
    while lo < up:
        mid = (lo + up) >> 1
        v = (hi + 1 + mid) % n
        if _d2(xs, ys, v, c) > _d2(xs, ys, v, t):
            up = mid
        else:
            lo = mid + 1
    return lo


@njit(cache=_CACHE)
def build_tree_arrays(xs, ys):
    n = xs.shape[0]
    N = 1
    while N < 2 * n:
        N <<= 1
    node_lo = np.full(2 * N, -1, dtype=np.int64)
    node_hi = np.full(2 * N, -1, dtype=np.int64)
    for p in range(N):
        node_lo[N + p] = p
        node_hi[N + p] = p
    for v in range(N - 1, 0, -1):
        node_lo[v] = node_lo[2 * v]
        node_hi[v] = node_hi[2 * v + 1]
    env_off = np.zeros(2 * N + 1, dtype=np.int64)
    env_cnt = np.zeros(2 * N, dtype=np.int64)
    total = 0
    for v in range(1, 2 * N):
        env_off[v] = total
        size = node_hi[v] - node_lo[v] + 1
        if node_hi[v] < 2 * n and size <= n - 1:
            total += size
    env_off[2 * N] = total
    env_row = np.zeros(max(total, 1), dtype=np.int64)
    env_col = np.zeros(max(total, 1), dtype=np.int64)
    for v in range(1, 2 * N):
        lo = node_lo[v]
        hi = node_hi[v]
        size = hi - lo + 1
        if hi >= 2 * n or size > n - 1:
            continue
        base = env_off[v]
        R = n - size
        cnt = 0
        for pos in range(lo, hi + 1):
            c = pos % n
            placed = False
            while cnt > 0:
                t = env_col[base + cnt - 1]
                s = env_row[base + cnt - 1]
                vs = (hi + 1 + s) % n
                if _d2(xs, ys, vs, c) > _d2(xs, ys, vs, t):
                    cnt -= 1
                    continue
                x = _crossing(xs, ys, n, hi, t, c, s + 1, R)
                if x < R:
                    env_col[base + cnt] = c
                    env_row[base + cnt] = x
                    cnt += 1
                placed = True
                break
            if not placed and cnt == 0:
                env_col[base] = c
                env_row[base] = 0
                cnt = 1
        env_cnt[v] = cnt
    return N, node_hi, env_off, env_cnt, env_row, env_col


@njit(cache=_CACHE)
def count_nodes(N, a, b):
    # Number of canonical nodes covering positions [a, b].
    cnt = 0
    l = a + N
    r = b + N + 1
    while l < r:
        if l & 1:
            cnt += 1
            l += 1
        if r & 1:
            r -= 1
            cnt += 1
        l >>= 1
        r >>= 1
    return cnt


@njit(cache=_CACHE)
def _node_best(xs, ys, n, tree, v, q):
    N, node_hi, env_off, env_cnt, env_row, env_col = tree
    off = (q - (node_hi[v] + 1)) % n
    base = env_off[v]
    lo = 0
    hi = env_cnt[v] - 1
    # last entry with env_row <= off; entry 0 always starts at row 0
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if env_row[base + mid] <= off:
            lo = mid
        else:
            hi = mid - 1
    return env_col[base + lo]


@njit(cache=_CACHE)
def _far_range(xs, ys, n, tree, q, a, b, best_v, best_d):
    # Fold the farthest vertex from q over positions [a, b] (q not inside) into
    # the running best (ties go to the smaller vertex index).
    if a > b:
        return best_v, best_d
    N = tree[0]
    if N == 0:
        for p in range(a, b + 1):
            c = p % n
            dd = _d2(xs, ys, q, c)
            if dd > best_d or (dd == best_d and c < best_v):
                best_d = dd
                best_v = c
        return best_v, best_d
    l = a + N
    r = b + N + 1
    while l < r:
        if l & 1:
            c = _node_best(xs, ys, n, tree, l, q)
            dd = _d2(xs, ys, q, c)
            if dd > best_d or (dd == best_d and c < best_v):
                best_d = dd
                best_v = c
            l += 1
        if r & 1:
            r -= 1
            c = _node_best(xs, ys, n, tree, r, q)
            dd = _d2(xs, ys, q, c)
            if dd > best_d or (dd == best_d and c < best_v):
                best_d = dd
                best_v = c
        l >>= 1
        r >>= 1
    return best_v, best_d


@njit(cache=_CACHE)
def far_arc(xs, ys, n, tree, q, a, b):
    """Farthest vertex from vertex q over arc positions [a, b].

    Returns (vertex, squared distance), or (-1, -1.0) for an empty range.
    """
    if a > b:
        return -1, -1.0
    qp = q
    if qp < a:
        qp += n
    if qp <= b:
        bv, bd = _far_range(xs, ys, n, tree, q, a, qp - 1, -1, -1.0)
        bv, bd = _far_range(xs, ys, n, tree, q, qp + 1, b, bv, bd)
        if bv < 0:
            return q, 0.0
        return bv, bd
    return _far_range(xs, ys, n, tree, q, a, b, -1, -1.0)


# ---------------------------------------------------------------------------
# halfplanes
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def argmax_cyclic(xs, ys, wx, wy):
    """Index of a vertex maximizing wx*x + wy*y (smallest index on a plateau).

    O(log n) binary search; relies on the values being cyclically unimodal,
    which holds for the vertices of a convex polygon in either orientation.
    """
    n = xs.shape[0]
    if n == 1:
        return 0
    f0 = wx * xs[0] + wy * ys[0]
    up0 = (wx * xs[1] + wy * ys[1]) > f0
    lo = 0
    hi = n
    while lo < hi:
        mid = (lo + hi) >> 1
        fc = wx * xs[mid] + wy * ys[mid]
        nx = mid + 1
        if nx == n:
            nx = 0
        up = (wx * xs[nx] + wy * ys[nx]) > fc
        if up0:
            p = up and fc >= f0
        else:
            p = up or fc <= f0
        if p:
            lo = mid + 1
        else:
            hi = mid
    return lo % n


@njit(cache=_CACHE)
def _side(xs, ys, k, ox, oy, ux, uy):
    return ux * (ys[k] - oy) - uy * (xs[k] - ox)


@njit(cache=_CACHE)
def halfplane_arc(xs, ys, ox, oy, ux, uy):
    """Positions [a, b] of the vertices in the closed halfplane left of the
    directed line through (ox, oy) with direction (ux, uy); (0, -1) if none."""
    n = xs.shape[0]
    kmax = argmax_cyclic(xs, ys, -uy, ux)
    if _side(xs, ys, kmax, ox, oy, ux, uy) < 0.0:
        return 0, -1
    kmin = argmax_cyclic(xs, ys, uy, -ux)
    if _side(xs, ys, kmin, ox, oy, ux, uy) >= 0.0:
        return 0, n - 1
    # increasing run kmin -> kmax: first position with side >= 0
    lo = kmin
    hi = kmax if kmax >= kmin else kmax + n
    while lo < hi:
        mid = (lo + hi) >> 1
        if _side(xs, ys, mid % n, ox, oy, ux, uy) >= 0.0:
            hi = mid
        else:
            lo = mid + 1
    start = lo % n
    # decreasing run kmax -> kmin: last position with side >= 0
    lo = kmax
    hi = kmin if kmin > kmax else kmin + n
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if _side(xs, ys, mid % n, ox, oy, ux, uy) >= 0.0:
            lo = mid
        else:
            hi = mid - 1
    end = lo % n
    if end < start:
        end += n
    return start, end


@njit(cache=_CACHE)
def far_halfplane(xs, ys, n, tree, q, ox, oy, ux, uy):
    a, b = halfplane_arc(xs, ys, ox, oy, ux, uy)
    return far_arc(xs, ys, n, tree, q, a, b)


@njit(cache=_CACHE)
def farthest_radii(xs, ys, tree):
    # Distance from each vertex to its farthest vertex, via two closed
    # halfplane queries whose union is the plane.
    n = xs.shape[0]
    out = np.zeros(n)
    for i in range(n):
        v1, d1 = far_halfplane(xs, ys, n, tree, i, xs[i], ys[i], 1.0, 0.0)
        v2, d2 = far_halfplane(xs, ys, n, tree, i, xs[i], ys[i], -1.0, 0.0)
        v = v1
        if d2 > d1 or (d2 == d1 and v2 < v1):
            v = v2
        out[i] = seg_dist(xs[v], ys[v], xs[i], ys[i], xs[i], ys[i])
    return out


# ---------------------------------------------------------------------------
# cost_0
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def cost0(xs, ys, tree, i, j):
    """max distance from the vertices strictly clockwise-between i and j to
    the segment p_i p_j, by the cone/slab/cone decomposition."""
    n = xs.shape[0]
    jp = j if j > i else j + n
    a = i + 1
    b = jp - 1
    if a > b:
        return 0.0
    xi = xs[i]
    yi = ys[i]
    xj = xs[j]
    yj = ys[j]
    dx = xj - xi
    dy = yj - yi
    # slab: distance to the line is unimodal over the arc
    lo = a
    hi = b
    while lo < hi:
        mid = (lo + hi) >> 1
        k0 = mid % n
        k1 = (mid + 1) % n
        if dx * (ys[k1] - ys[k0]) - dy * (xs[k1] - xs[k0]) <= 0.0:
            hi = mid
        else:
            lo = mid + 1
    # a plateau resolves toward the smaller position
    k = lo % n
    best = seg_dist(xs[k], ys[k], xi, yi, xj, yj)
    # cone behind p_i: farthest from p_i left of the line through p_i along (-dy, dx)
    v, dd = far_halfplane(xs, ys, n, tree, i, xi, yi, -dy, dx)
    if v >= 0 and v != i:
        vp = v if v >= a else v + n
        if vp <= b:
            c = seg_dist(xs[v], ys[v], xi, yi, xj, yj)
            if c > best:
                best = c
    # cone beyond p_j
    v, dd = far_halfplane(xs, ys, n, tree, j, xj, yj, dy, -dx)
    if v >= 0 and v != j:
        vp = v if v >= a else v + n
        if vp <= b:
            c = seg_dist(xs[v], ys[v], xi, yi, xj, yj)
            if c > best:
                best = c
    return best


@njit(cache=_CACHE)
def brute_cost0(xs, ys, i, j):
    n = xs.shape[0]
    jp = j if j > i else j + n
    best = 0.0
    for p in range(i + 1, jp):
        k = p % n
        c = seg_dist(xs[k], ys[k], xs[i], ys[i], xs[j], ys[j])
        if c > best:
            best = c
    return best


@njit(cache=_CACHE)
def cost0_batch(xs, ys, tree, ii, jj):
    out = np.empty(ii.shape[0])
    for t in range(ii.shape[0]):
        out[t] = cost0(xs, ys, tree, ii[t], jj[t])
    return out


# ---------------------------------------------------------------------------
# friends, forest, extract
# ---------------------------------------------------------------------------

@njit(cache=_CACHE)
def friend_sweep(xs, ys, tree, eps):
    """Unrolled eps-friends F[i] in [i+1, i+n-1] and the number of cost0 calls.

    F is non-decreasing, so the candidate pointer only moves forward.
    """
    n = xs.shape[0]
    F = np.empty(n, dtype=np.int64)
    queries = 0
    j = 1
    for i in range(n):
        if i > 0:
            j = F[i - 1]
            if j < i + 1:
                j = i + 1
        while j + 1 <= i + n - 1:
            c = cost0(xs, ys, tree, i, (j + 1) % n)
            queries += 1
            if c <= eps:
                j += 1
            else:
                break
        F[i] = j
    return F, queries


@njit(cache=_CACHE)
def friend_forest(F):
    """Depth and root of every vertex in the friend forest (edge i -> F[i]
    when F[i] < n), and the minimum-depth valid start (-1 never happens)."""
    n = F.shape[0]
    depth = np.empty(n, dtype=np.int64)
    root = np.empty(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        if F[i] >= n:
            depth[i] = 1
            root[i] = i
        else:
            depth[i] = depth[F[i]] + 1
            root[i] = root[F[i]]
    best = -1
    for i in range(n):
        if F[root[i]] - n >= i:
            if best < 0 or depth[i] < depth[best]:
                best = i
    return depth, root, best


@njit(cache=_CACHE)
def extract(xs, ys, tree, alpha, beta):
    """All cost0(i, j), i != j, lying in [alpha, beta], and the query count."""
    n = xs.shape[0]
    cap = 16
    out = np.empty(cap)
    m = 0
    queries = 0
    for i in range(n):
        lo = 1
        hi = n
        while lo < hi:
            mid = (lo + hi) >> 1
            queries += 1
            if cost0(xs, ys, tree, i, (i + mid) % n) >= alpha:
                hi = mid
            else:
                lo = mid + 1
        off = lo
        while off <= n - 1:
            c = cost0(xs, ys, tree, i, (i + off) % n)
            queries += 1
            if c > beta:
                break
            if c >= alpha:
                if m == cap:
                    cap *= 2
                    grown = np.empty(cap)
                    grown[:m] = out[:m]
                    out = grown
                out[m] = c
                m += 1
            off += 1
    return out[:m].copy(), queries
