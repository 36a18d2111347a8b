"""Smallest subset of a convex chain whose hull is within eps of the whole chain.

The eps-friend of vertex i is the farthest clockwise j with cost0(i, j) <= eps.
Jumping from friend to friend gives a greedy sequence; it covers the chain
once the friend of its last vertex wraps around past its first. Friends are
non-decreasing in i, so all of them come out of one two-pointer sweep, and
the friend links that do not wrap form a forest. Every start's greedy
sequence is its path to the forest root, so the best start is the shallowest
vertex whose root wraps far enough.

Friend positions are kept unrolled: ``F[i]`` lies in ``[i + 1, i + n - 1]``
and means vertex ``F[i] % n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as K
from .cost_oracle import CostOracle, build_cost_oracle
from .farthest_query import FarthestIndex, build
from .geom_core import ConvexChain
from .solution import Solution


@dataclass(frozen=True)
class FriendArray:
    unrolled: np.ndarray
    eps: float

    @property
    def n(self) -> int:
        return len(self.unrolled)

    @property
    def f(self) -> np.ndarray:
        return self.unrolled % self.n


@dataclass(frozen=True)
class FriendForest:
    parent: np.ndarray  # -1 at sinks
    depth: np.ndarray  # sinks have depth 1
    root: np.ndarray
    best_start: int  # shallowest start whose greedy sequence is valid


def farthest_radii(fq: FarthestIndex) -> np.ndarray:
    """Distance from each vertex to the vertex farthest from it."""
    if fq.n == 1:
        return np.zeros(1)
    return K.farthest_radii(fq.xs, fq.ys, fq.tree)


def single_point_cover(chain: ConvexChain, eps: float, fq: Optional[FarthestIndex] = None) -> Optional[int]:
    """Smallest index whose eps-ball holds every vertex, or None."""
    if chain.n == 1:
        return 0
    if fq is None:
        fq = build(chain)
    hits = np.flatnonzero(farthest_radii(fq) <= eps)
    return int(hits[0]) if hits.size else None


def compute_friends(o: CostOracle, eps: float) -> FriendArray:
    F, q = K.friend_sweep(o.fq.xs, o.fq.ys, o.fq.tree, float(eps))
    o.add_queries(q)
    return FriendArray(F, float(eps))


def build_friend_forest(f: FriendArray) -> FriendForest:
    F = f.unrolled
    depth, root, best = K.friend_forest(F)
    parent = np.where(F < f.n, F, -1)
    return FriendForest(parent, depth, root, int(best))


def greedy_sequence(f: FriendArray, start: int) -> list[int]:
    seq = [start]
    F = f.unrolled
    while F[seq[-1]] < f.n:
        seq.append(int(F[seq[-1]]))
    return seq


def realized_cost(o: CostOracle, seq: list[int]) -> float:
    """Hausdorff cost of the chosen vertices: the worst cost0 over cyclically consecutive picks."""
    if len(seq) == 1:
        return float(farthest_radii(o.fq)[seq[0]])
    return max(o.cost0(a, b) for a, b in zip(seq, seq[1:] + seq[:1]))


def _min_k(o: CostOracle, radii: np.ndarray, eps: float) -> tuple[int, Optional[FriendArray], Optional[FriendForest]]:
    n = o.n
    if np.any(radii <= eps):
        return 1, None, None
    if n == 2:
        return 2, None, None
    f = compute_friends(o, eps)
    forest = build_friend_forest(f)
    return int(forest.depth[forest.best_start]), f, forest


def _solve(o: CostOracle, radii: np.ndarray, eps: float) -> Solution:
    n = o.n
    q0 = o.query_counter
    k, f, forest = _min_k(o, radii, eps)
    if k == 1:
        i = int(np.flatnonzero(radii <= eps)[0])
        seq = [i]
    elif f is None:
        seq = list(range(n))
    else:
        seq = greedy_sequence(f, forest.best_start)
    eps_real = realized_cost(o, seq)
    meta = {"backend": o.backend, "cost0_queries": o.query_counter - q0}
    return Solution(tuple(seq), eps_real, meta)


def solve_cx_mink(chain: ConvexChain, eps: float, backend: str = "canonical",
                  oracle: Optional[CostOracle] = None) -> Solution:
    """Minimum number of chain vertices whose hull is within ``eps`` of every vertex."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if chain.n == 1:
        return Solution((0,), 0.0, {"backend": backend, "cost0_queries": 0})
    o = oracle if oracle is not None else build_cost_oracle(chain, backend)
    return _solve(o, farthest_radii(o.fq), eps)
