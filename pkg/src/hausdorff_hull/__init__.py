"""Small subsets of planar point sets whose convex hull stays within a
Hausdorff distance of the full hull."""
from .convex_mineps import decider, extract, sample_critical, solve_cx_mineps
from .convex_mink import compute_friends, single_point_cover, solve_cx_mink
from .cost_oracle import CostOracle, brute_cost0, build_cost_oracle
from .farthest_query import EMPTY_ARC, Arc, DirectedLine, FarthestIndex
from .general_solver import (
    approx2_mineps,
    approx2_mink,
    compute_edge_weights,
    plus_one_mineps,
    plus_one_mink,
    solve_mineps,
    solve_mink,
)
from .geom_core import ConvexChain, Point2, Segment, convex_hull, dist_point_hull, dist_point_segment, orient
from .solution import Solution

__all__ = [
    "Arc", "ConvexChain", "CostOracle", "DirectedLine", "EMPTY_ARC", "FarthestIndex", "Point2", "Segment",
    "Solution", "approx2_mineps", "approx2_mink", "brute_cost0", "build_cost_oracle", "compute_edge_weights",
    "compute_friends", "convex_hull", "decider", "dist_point_hull", "dist_point_segment", "extract", "orient",
    "plus_one_mineps", "plus_one_mink", "sample_critical", "single_point_cover", "solve_cx_mineps",
    "solve_cx_mink", "solve_mineps", "solve_mink",
]
