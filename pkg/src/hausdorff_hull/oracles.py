"""Exhaustive reference answers for small instances.

``brute_cost`` evaluates the Hausdorff cost straight from its definition.
``subset_costs`` does the same for every nonempty subset at once in compiled
code, which is what ``brute_mink`` and ``brute_mineps`` enumerate over.
Neither shares any logic with the solvers beyond the point-to-segment
distance formula.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from numba import njit

from ._kernels import seg_dist
from .geom_core import as_point, convex_hull, dist_point_hull, to_array


@dataclass(frozen=True)
class BruteConfig:
    max_n: int = 12
    tol: float = 1e-9  # relative to max(eps, extent of P)

    def __post_init__(self):
        if self.max_n < 3:
            raise ValueError("max_n must be at least 3")


DEFAULT = BruteConfig()


def brute_cost(Q, P) -> float:
    """max over p in P of the distance from p to the convex hull of Q."""
    Q = [as_point(q) for q in Q]
    if not Q:
        raise ValueError("empty subset")
    chain, _ = convex_hull(Q)
    return max((dist_point_hull(as_point(p), chain) for p in P), default=0.0)


@njit(cache=True)
def _mask_cost(px, py, order, mask):
    n = px.shape[0]
    sel = np.empty(n, dtype=np.int64)
    m = 0
    for t in range(n):
        i = order[t]
        if (mask >> i) & 1:
            sel[m] = i
            m += 1
    # Andrew's monotone chain, counter-clockwise, on the lexicographically sorted selection
    hull = np.empty(2 * m + 1, dtype=np.int64)
    h = 0
    for t in range(m):
        i = sel[t]
        while h >= 2 and ((px[hull[h - 1]] - px[hull[h - 2]]) * (py[i] - py[hull[h - 2]])
                          - (py[hull[h - 1]] - py[hull[h - 2]]) * (px[i] - px[hull[h - 2]])) <= 0.0:
            h -= 1
        hull[h] = i
        h += 1
    lower = h + 1
    for t in range(m - 2, -1, -1):
        i = sel[t]
        while h >= lower and ((px[hull[h - 1]] - px[hull[h - 2]]) * (py[i] - py[hull[h - 2]])
                              - (py[hull[h - 1]] - py[hull[h - 2]]) * (px[i] - px[hull[h - 2]])) <= 0.0:
            h -= 1
        hull[h] = i
        h += 1
    if m > 1:
        h -= 1  # last point repeats the first
    worst = 0.0
    for p in range(n):
        x = px[p]
        y = py[p]
        if h == 1:
            d = seg_dist(x, y, px[hull[0]], py[hull[0]], px[hull[0]], py[hull[0]])
        elif h == 2:
            d = seg_dist(x, y, px[hull[0]], py[hull[0]], px[hull[1]], py[hull[1]])
        else:
            inside = True
            d = np.inf
            for e in range(h):
                a = hull[e]
                b = hull[(e + 1) % h]
                if (px[b] - px[a]) * (y - py[a]) - (py[b] - py[a]) * (x - px[a]) < 0.0:
                    inside = False
                dd = seg_dist(x, y, px[a], py[a], px[b], py[b])
                if dd < d:
                    d = dd
            if inside:
                d = 0.0
        if d > worst:
            worst = d
    return worst


@njit(cache=True)
def _all_costs(px, py, order):
    n = px.shape[0]
    out = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        out[mask] = _mask_cost(px, py, order, mask)
    return out


def _prepared(P):
    A = to_array(P)
    px = np.ascontiguousarray(A[:, 0])
    py = np.ascontiguousarray(A[:, 1])
    return px, py, np.lexsort((py, px)).astype(np.int64)


def subset_costs(P) -> np.ndarray:
    """cost(Q, P) for every nonempty Q, indexed by bitmask over P (|P| <= 25 or so)."""
    return _all_costs(*_prepared(P))


def subset_cost(P, idx) -> float:
    """cost(P[idx], P) via the compiled evaluator; |P| <= 62."""
    idx = list(idx)
    if not idx:
        raise ValueError("empty subset")
    px, py, order = _prepared(P)
    if len(px) > 62:
        raise ValueError("at most 62 points")
    return float(_mask_cost(px, py, order, sum(1 << int(i) for i in set(idx))))


def _check(P, cfg: BruteConfig) -> np.ndarray:
    A = to_array(P)
    if len(A) == 0:
        raise ValueError("empty point set")
    if len(A) > cfg.max_n:
        raise ValueError(f"{len(A)} points exceeds the brute-force budget of {cfg.max_n}")
    return A


def _extent(A: np.ndarray) -> float:
    return float(np.ptp(A, axis=0).max()) if len(A) else 0.0


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc[1 << b:1 << (b + 1)] = pc[:1 << b] + 1
    return pc


def _first_comb(n: int, k: int, ok) -> tuple[int, ...]:
    for comb in combinations(range(n), k):
        if ok[sum(1 << i for i in comb)]:
            return comb
    raise AssertionError("no subset of the requested size")


def brute_mink(P, eps: float, cfg: BruteConfig = DEFAULT, costs=None) -> tuple[int, tuple[int, ...]]:
    """Smallest k with some k-subset of cost <= eps (up to the relative tolerance).

    The subset returned is the first of that size in lexicographic order.
    """
    A = _check(P, cfg)
    n = len(A)
    costs = subset_costs(A) if costs is None else costs
    ok = costs <= eps + cfg.tol * max(eps, _extent(A))
    ok[0] = False
    k = int(_popcounts(n)[ok].min())
    return k, _first_comb(n, k, ok)


def brute_mineps(P, k: int, cfg: BruteConfig = DEFAULT, costs=None) -> tuple[float, tuple[int, ...]]:
    """Smallest cost over subsets of size at most k."""
    A = _check(P, cfg)
    if k < 1:
        raise ValueError("k must be at least 1")
    n = len(A)
    costs = subset_costs(A) if costs is None else costs
    allowed = _popcounts(n) <= k
    allowed[0] = False
    best = float(costs[allowed].min())
    ok = allowed & (costs == best)
    size = int(_popcounts(n)[ok].min())
    return best, _first_comb(n, size, ok)
