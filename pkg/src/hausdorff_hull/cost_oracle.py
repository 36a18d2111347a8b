"""cost0(i, j): how far the vertices strictly clockwise-between i and j stray
from the chord p_i p_j.

The farthest such vertex is one of three candidates: the vertex farthest from
the chord's supporting line (found by binary search, since that distance is
unimodal along the arc), the vertex farthest from p_i within the cone behind
p_i, and the vertex farthest from p_j within the cone beyond p_j. Each cone
candidate is one farthest-in-halfplane query followed by a check that the
returned vertex actually lies on the arc; if it does not, the cone holds no
arc vertex at all.
"""
from __future__ import annotations

import threading

import numpy as np

from . import _kernels as K
from .farthest_query import FarthestIndex, build
from .geom_core import ConvexChain


class CostOracle:
    """cost0 queries over a fixed chain, with a running query count."""

    def __init__(self, chain: ConvexChain, fq: FarthestIndex):
        self.chain = chain
        self.fq = fq
        self._count = 0
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self.chain.n

    @property
    def backend(self) -> str:
        return self.fq.backend

    @property
    def query_counter(self) -> int:
        return self._count

    def add_queries(self, m: int) -> None:
        with self._lock:
            self._count += int(m)

    def _check(self, i: int, j: int) -> None:
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"index pair ({i}, {j}) outside chain of {n} vertices")
        if i == j:
            raise ValueError("cost0 needs two distinct indices")

    def cost0(self, i: int, j: int) -> float:
        self._check(i, j)
        self.add_queries(1)
        return float(K.cost0(self.fq.xs, self.fq.ys, self.fq.tree, i, j))

    def cost0_many(self, ii, jj) -> np.ndarray:
        """Vectorized cost0; counts one query per pair."""
        ii = np.asarray(ii, dtype=np.int64)
        jj = np.asarray(jj, dtype=np.int64)
        n = self.n
        if ii.shape != jj.shape:
            raise ValueError("index arrays differ in shape")
        if ii.size and (ii.min() < 0 or jj.min() < 0 or ii.max() >= n or jj.max() >= n):
            raise IndexError("index outside chain")
        if np.any(ii == jj):
            raise ValueError("cost0 needs two distinct indices")
        self.add_queries(ii.size)
        return K.cost0_batch(self.fq.xs, self.fq.ys, self.fq.tree, ii.ravel(), jj.ravel()).reshape(ii.shape)


def build_cost_oracle(chain: ConvexChain, backend: str = "canonical") -> CostOracle:
    if chain.n < 2:
        raise ValueError("chain too small")
    return CostOracle(chain, build(chain, backend))


def brute_cost0(chain: ConvexChain, i: int, j: int) -> float:
    """Linear-scan cost0."""
    n = chain.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"index pair ({i}, {j}) outside chain of {n} vertices")
    if i == j:
        raise ValueError("cost0 needs two distinct indices")
    return float(K.brute_cost0(chain.xs, chain.ys, i, j))
