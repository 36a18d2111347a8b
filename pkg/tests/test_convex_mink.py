import itertools

import numpy as np
import pytest

from hausdorff_hull.convex_mink import (
    FriendArray, build_friend_forest, compute_friends, greedy_sequence, single_point_cover, solve_cx_mink,
)
from hausdorff_hull.cost_oracle import brute_cost0, build_cost_oracle
from hausdorff_hull.geom_core import ConvexChain, Point2
from hausdorff_hull.oracles import brute_cost, brute_mink, subset_costs

from conftest import R2, random_convex_chain


def brute_friends(chain, eps):
    n = chain.n
    out = []
    for i in range(n):
        f = i + 1
        for s in range(1, n):
            if brute_cost0(chain, i, (i + s) % n) <= eps:
                f = i + s
        out.append(f)
    return out


def test_single_point_cover(square):
    i = single_point_cover(square, 1.5)
    assert i is not None
    assert max(np.hypot(v.x - square[i].x, v.y - square[i].y) for v in square.vertices) <= 1.5
    assert single_point_cover(square, 1.0) is None
    assert single_point_cover(ConvexChain([Point2(4, 4)]), 0.0) == 0


def test_friends_examples(square):
    o = build_cost_oracle(square)
    assert compute_friends(o, 0.75).f.tolist() == [2, 3, 0, 1]
    assert compute_friends(o, 0.5).f.tolist() == [1, 2, 3, 0]
    assert compute_friends(o, 0.0).f.tolist() == [1, 2, 3, 0]


def test_forest_examples():
    forest = build_friend_forest(FriendArray(np.array([2, 3, 4, 5]), 0.75))
    assert forest.parent.tolist() == [2, 3, -1, -1]
    assert forest.depth.tolist() == [2, 2, 1, 1]
    assert forest.root.tolist() == [2, 3, 2, 3]

    forest = build_friend_forest(FriendArray(np.array([1, 2, 3, 4]), 0.5))
    assert forest.parent.tolist() == [1, 2, 3, -1]
    assert forest.depth[0] == 4

    forest = build_friend_forest(FriendArray(np.array([1, 2]), 0.0))
    assert forest.parent.tolist() == [1, -1]


def test_solve_examples(square):
    sol = solve_cx_mink(square, 0.75)
    assert sol.k == 2 and sol.eps == pytest.approx(R2)
    assert brute_cost([square[i] for i in sol.indices], square.vertices) <= 0.75
    # three corners leave the fourth at 1/sqrt(2) > 0.7
    assert solve_cx_mink(square, 0.7).k == brute_mink(square.vertices, 0.7)[0] == 4
    assert solve_cx_mink(square, 2.0).k == 1
    assert solve_cx_mink(square, 0.0).k == 4


def test_tiny_chains():
    assert solve_cx_mink(ConvexChain([Point2(1, 2)]), 0.0).indices == (0,)
    two = ConvexChain([Point2(0, 0), Point2(3, 4)])
    assert solve_cx_mink(two, 4.9).k == 2
    assert solve_cx_mink(two, 5.0).k == 1


def test_friends_match_brute_and_are_monotone():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(3, 40))
        chain = random_convex_chain(rng, n)
        o = build_cost_oracle(chain)
        eps = brute_cost0(chain, *(int(x) for x in rng.choice(n, 2, replace=False)))
        f = compute_friends(o, eps)
        assert f.unrolled.tolist() == brute_friends(chain, eps)
        F = f.unrolled
        assert np.all(np.diff(F) >= 0) and F[0] + n >= F[-1]
        assert np.all(F > np.arange(n)) and np.all(F < np.arange(n) + n)


def test_query_budget():
    rng = np.random.default_rng(1)
    for n in (10, 100, 1000, 5000):
        chain = random_convex_chain(rng, n)
        for eps in (0.0, 1e-4, 1e-2, 0.3):
            o = build_cost_oracle(chain)
            compute_friends(o, eps)
            assert o.query_counter <= 4 * n


def test_optimal_and_feasible_against_brute():
    rng = np.random.default_rng(2)
    for _ in range(150):
        n = int(rng.integers(3, 11))
        chain = random_convex_chain(rng, n)
        costs = subset_costs(chain.vertices)
        E = sorted({brute_cost0(chain, i, j) for i, j in itertools.permutations(range(n), 2)})
        for eps in rng.choice(E, 4):
            sol = solve_cx_mink(chain, float(eps))
            assert sol.k == brute_mink(chain.vertices, float(eps), costs=costs)[0]
            assert brute_cost([chain[i] for i in sol.indices], chain.vertices) <= eps + 1e-9
            assert sol.eps <= eps


def test_greedy_sequence_follows_friends(square):
    o = build_cost_oracle(square)
    f = compute_friends(o, 0.75)
    assert greedy_sequence(f, 0) == [0, 2]
