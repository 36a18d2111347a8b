"""Exact and approximate solvers for arbitrary planar point sets.

Every directed pair (a, b) gets a weight w(a, b): the largest distance from
segment ab to any point in the closed halfplane left of a->b. A subset
listed clockwise around its hull costs at most the heaviest edge of that
cycle, and some optimal subset costs exactly that. The smallest subset with
cost <= eps is therefore the shortest cycle in the graph of edges with
w <= eps, found here by breadth-first search from every vertex. Lone points
are not cycles, so one-point covers are checked separately.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _graph_kernels as GK
from .convex_mineps import solve_cx_mineps
from .convex_mink import solve_cx_mink
from .geom_core import ConvexChain, convex_hull, dedupe, hull_cost, to_array
from .solution import Solution


@dataclass(frozen=True)
class WeightMatrix:
    w: np.ndarray
    fallbacks: int = 0  # pairs whose cone lookup was settled by a full scan

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class ThresholdGraph:
    eps: float
    adj: np.ndarray  # bool, adj[a, b] iff w(a, b) <= eps and a != b
    w: Optional[np.ndarray] = None

    @classmethod
    def from_weights(cls, wm: WeightMatrix, eps: float) -> "ThresholdGraph":
        adj = wm.w <= eps
        np.fill_diagonal(adj, False)
        return cls(float(eps), adj, wm.w)

    def edges(self) -> set[tuple[int, int]]:
        a, b = np.nonzero(self.adj)
        return set(zip(a.tolist(), b.tolist()))


@dataclass(frozen=True)
class CycleSolution:
    cycle: tuple[int, ...]
    weight: float  # heaviest edge on the cycle

    @property
    def cardinality(self) -> int:
        return len(self.cycle)


def cycle_weight(w: np.ndarray, cycle: Sequence[int]) -> float:
    c = list(cycle)
    return max(float(w[a, b]) for a, b in zip(c, c[1:] + c[:1]))


def compute_edge_weights(points) -> WeightMatrix:
    P = to_array(points)
    n = len(P)
    if n < 2:
        raise ValueError("need at least two points")
    if len(dedupe(map(tuple, P))[0]) != n:
        raise ValueError("points must be distinct")
    chain, _ = convex_hull([tuple(p) for p in P])
    W, fb = GK.edge_weights(np.ascontiguousarray(P[:, 0]), np.ascontiguousarray(P[:, 1]), chain.xs, chain.ys)
    return WeightMatrix(W, int(fb))


def min_cycle(tg: ThresholdGraph, through: Optional[int] = None,
              max_len: Optional[int] = None) -> Optional[CycleSolution]:
    """Shortest cycle (length >= 2), optionally forced through one vertex or capped in length."""
    n = tg.adj.shape[0]
    sources = np.arange(n, dtype=np.int64) if through is None else np.array([through], dtype=np.int64)
    limit = n if max_len is None else min(int(max_len), n)
    cyc = GK.min_cycle(tg.adj, sources, limit)
    if len(cyc) == 0:
        return None
    cycle = tuple(int(v) for v in cyc)
    return CycleSolution(cycle, float("nan") if tg.w is None else cycle_weight(tg.w, cycle))


class _Instance:
    """Deduplicated points with hull, one-point radii and (lazily) edge weights."""

    def __init__(self, points, weights: Optional[WeightMatrix] = None):
        uniq, first = dedupe(points)
        if not uniq:
            raise ValueError("empty point set")
        self.P = to_array(uniq)
        self.first = first
        self.n = len(uniq)
        self.chain, self.hull_idx = convex_hull(uniq)
        self.radii = GK.point_radii(np.ascontiguousarray(self.P[:, 0]), np.ascontiguousarray(self.P[:, 1]))
        self._wm = weights

    @property
    def wm(self) -> WeightMatrix:
        if self._wm is None:
            self._wm = compute_edge_weights(self.P)
        return self._wm

    def orig(self, idx) -> tuple[int, ...]:
        return tuple(self.first[i] for i in idx)

    def cost(self, idx) -> float:
        return hull_cost(self.P, idx)

    def candidates(self) -> np.ndarray:
        return np.unique(np.concatenate([self.wm.w[~np.eye(self.n, dtype=bool)], [self.radii.min()]]))

    def cycle(self, eps: float, through: Optional[int] = None, max_len: Optional[int] = None):
        return min_cycle(ThresholdGraph.from_weights(self.wm, eps), through, max_len)


def _meta(inst: _Instance, **kw) -> dict:
    m = {"apsp": "bfs", "n_unique": inst.n}
    if inst._wm is not None:
        m["weight_fallbacks"] = inst.wm.fallbacks
    m.update(kw)
    return m


def _mink(inst: _Instance, eps: float) -> tuple[tuple[int, ...], Optional[CycleSolution]]:
    hits = np.flatnonzero(inst.radii <= eps)
    if hits.size:
        return (int(hits[0]),), None
    cs = inst.cycle(eps)
    # The hull cycle has weight 0, so some cycle always exists here.
    assert cs is not None
    return cs.cycle, cs


def _solution(inst: _Instance, idx, eps: Optional[float] = None, **meta) -> Solution:
    cost = inst.cost(idx)
    return Solution(inst.orig(idx), cost if eps is None else eps, _meta(inst, realized_cost=cost, **meta))


def solve_mink(points, eps: float, weights: Optional[WeightMatrix] = None) -> Solution:
    if eps < 0:
        raise ValueError("eps must be non-negative")
    inst = _Instance(points, weights)
    if inst.n == 1:
        return _solution(inst, (0,))
    idx, cs = _mink(inst, eps)
    extra = {} if cs is None else {"bottleneck": cs.weight}
    return _solution(inst, idx, **extra)


def _search(values: np.ndarray, pred) -> float:
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(values[lo])


def solve_mineps(points, k: int, weights: Optional[WeightMatrix] = None) -> Solution:
    if k < 1:
        raise ValueError("k must be at least 1")
    inst = _Instance(points, weights)
    h = inst.chain.n
    if k >= h:
        return _solution(inst, tuple(inst.hull_idx), 0.0)
    if k == 1:
        i = int(np.argmin(inst.radii))
        return _solution(inst, (i,), float(inst.radii[i]))

    def ok(e):
        return inst.radii.min() <= e or inst.cycle(float(e), max_len=k) is not None

    eps = _search(inst.candidates(), ok)
    idx, _ = _mink(inst, eps)
    return _solution(inst, idx, eps)


def _hull_subinstance(points) -> tuple[ConvexChain, list[int], list[int]]:
    uniq, first = dedupe(points)
    if not uniq:
        raise ValueError("empty point set")
    chain, hidx = convex_hull(uniq)
    return chain, hidx, first


def approx2_mink(points, eps: float, backend: str = "canonical") -> Solution:
    """At most twice the optimal size: solve exactly over the hull vertices only."""
    chain, hidx, first = _hull_subinstance(points)
    sol = solve_cx_mink(chain, eps, backend=backend)
    return Solution(tuple(first[hidx[i]] for i in sol.indices), sol.eps, dict(sol.meta))


def approx2_mineps(points, k: int, rng=0, backend: str = "canonical") -> Solution:
    """At most 2k hull vertices with cost no worse than the best k-subset."""
    chain, hidx, first = _hull_subinstance(points)
    sol = solve_cx_mineps(chain, min(2 * k, chain.n), rng=rng, backend=backend)
    meta = dict(sol.meta, budget=min(2 * k, chain.n))
    return Solution(tuple(first[hidx[i]] for i in sol.indices), sol.eps, meta)


def _anchor(inst: _Instance) -> int:
    # hull vertex with the smallest input index
    return min(inst.hull_idx, key=lambda i: inst.first[i])


def _plus_one(inst: _Instance, p: int, eps: float, max_len: Optional[int] = None):
    if inst.radii[p] <= eps:
        return (p,)
    cs = inst.cycle(eps, through=p, max_len=max_len)
    return None if cs is None else cs.cycle


def plus_one_mink(points, eps: float, weights: Optional[WeightMatrix] = None) -> Solution:
    """At most one point more than optimal; the subset always contains a fixed hull vertex."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    inst = _Instance(points, weights)
    p = _anchor(inst)
    if inst.n == 1:
        return _solution(inst, (0,), anchor=inst.first[p])
    idx = _plus_one(inst, p, eps)
    assert idx is not None
    return _solution(inst, idx, anchor=inst.first[p])


def plus_one_mineps(points, k: int, weights: Optional[WeightMatrix] = None) -> Solution:
    """At most k + 1 points with cost no worse than the best k-subset."""
    if k < 1:
        raise ValueError("k must be at least 1")
    inst = _Instance(points, weights)
    p = _anchor(inst)
    if k + 1 >= inst.chain.n:
        return _solution(inst, tuple(inst.hull_idx), 0.0, anchor=inst.first[p])
    vals = np.unique(np.append(inst.candidates(), inst.radii[p]))
    eps = _search(vals, lambda e: _plus_one(inst, p, float(e), k + 1) is not None)
    idx = _plus_one(inst, p, eps, k + 1)
    return _solution(inst, idx, eps, anchor=inst.first[p])
