"""Smallest eps reachable with at most k vertices of a convex chain.

The optimum (for k >= 2) is a critical value cost0(i, j). Sampling 4n of
those at random and binary searching them with the min-k decider pins the
optimum between two adjacent samples; only the few critical values in that
gap are then enumerated and searched.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels as K
from .convex_mink import _min_k, _solve, farthest_radii
from .cost_oracle import CostOracle, build_cost_oracle
from .geom_core import ConvexChain
from .solution import Solution

RngLike = Union[None, int, np.random.Generator]


@dataclass(frozen=True)
class CriticalValueSample:
    values: np.ndarray
    pairs: np.ndarray  # (count, 2) ordered pairs that produced the values
    seed: Optional[int]


def _rng(rng: RngLike) -> tuple[np.random.Generator, Optional[int]]:
    if isinstance(rng, np.random.Generator):
        return rng, None
    return np.random.default_rng(rng), rng


def decider(chain: ConvexChain, eps: float, k: int, oracle: Optional[CostOracle] = None) -> bool:
    """True when some subset of at most ``k`` vertices reaches cost ``eps``."""
    if k < 1 or eps < 0:
        raise ValueError("need k >= 1 and eps >= 0")
    if chain.n <= k:
        return True
    o = oracle if oracle is not None else build_cost_oracle(chain)
    return _min_k(o, farthest_radii(o.fq), eps)[0] <= k


def sample_critical(o: CostOracle, rng: RngLike, count: int) -> CriticalValueSample:
    """``count`` draws, with replacement, of cost0 over uniformly random ordered pairs."""
    gen, seed = _rng(rng)
    n = o.n
    i = gen.integers(0, n, size=count)
    j = gen.integers(0, n - 1, size=count)
    j = j + (j >= i)
    vals = o.cost0_many(i, j) if count else np.zeros(0)
    return CriticalValueSample(vals, np.stack([i, j], axis=1), seed)


def extract(o: CostOracle, alpha: float, beta: float) -> np.ndarray:
    """Sorted multiset of critical values in [alpha, beta]."""
    if alpha > beta:
        raise ValueError(f"empty interval [{alpha}, {beta}]")
    vals, q = K.extract(o.fq.xs, o.fq.ys, o.fq.tree, float(alpha), float(beta))
    o.add_queries(q)
    return np.sort(vals)


def _first_true(values: np.ndarray, pred) -> int:
    """Smallest position whose value satisfies the monotone ``pred``; len(values) if none."""
    lo, hi = 0, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def solve_cx_mineps(chain: ConvexChain, k: int, rng: RngLike = 0, backend: str = "canonical",
                    oracle: Optional[CostOracle] = None) -> Solution:
    n = chain.n
    if k < 1:
        raise ValueError("k must be at least 1")
    gen, seed = _rng(rng)
    if k >= n:
        return Solution(tuple(range(n)), 0.0, {"backend": backend, "seed": seed, "cost0_queries": 0})
    o = oracle if oracle is not None else build_cost_oracle(chain, backend)
    q0 = o.query_counter
    radii = farthest_radii(o.fq)
    meta = {"backend": o.backend, "seed": seed}
    if k == 1:
        # A lone vertex is not a pair, so its radius need not be a critical value.
        i = int(np.argmin(radii))
        meta.update(cost0_queries=o.query_counter - q0, decider_calls=0)
        return Solution((i,), float(radii[i]), meta)

    calls = 0

    def decide(e):
        nonlocal calls
        calls += 1
        return _min_k(o, radii, float(e))[0] <= k

    sample = sample_critical(o, gen, 4 * n)
    S = np.unique(sample.values)
    pos = _first_true(S, decide)
    if pos == len(S):
        alpha = float(S[-1])
        beta = float(o.cost0_many(np.arange(n), (np.arange(n) - 1) % n).max())
    else:
        beta = float(S[pos])
        alpha = float(S[pos - 1]) if pos > 0 else 0.0
    X = extract(o, alpha, beta)
    Xd = np.unique(X)
    eps = float(Xd[_first_true(Xd, decide)])
    sol = _solve(o, radii, eps)
    meta.update(
        cost0_queries=o.query_counter - q0,
        decider_calls=calls + 1,
        sample_size=int(len(sample.values)),
        extract_size=int(len(X)),
        alpha=alpha,
        beta=beta,
    )
    return Solution(sol.indices, eps, meta)
