"""Farthest vertex of a convex chain from a query vertex, within an arc or a halfplane.

The ``canonical`` backend is a segment tree over the doubled index range of
the chain. A node covering a clockwise arc ``B`` stores, for query vertices
outside ``B``, which vertex of ``B`` is farthest. For any two columns
``k1 < k2`` of ``B`` and query rows ``r1 < r2`` taken in clockwise order
after ``B``, the quadrilateral ``k1 k2 r1 r2`` is convex, so its diagonals
outweigh its opposite sides. The answer is then a monotone step function of
the row, with at most ``|B|`` steps. Each node keeps those steps, so a query
costs one binary search per canonical node.

Queries must come from a chain vertex. An off-chain point is accepted only
by the ``naive`` backend.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from . import _kernels as K
from .geom_core import ConvexChain, Point2, as_point

BACKENDS = ("naive", "canonical")


@dataclass(frozen=True)
class Arc:
    """Clockwise run of chain indices from ``start`` to ``end``, inclusive."""

    start: int
    end: int


class _EmptyArc:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "EMPTY_ARC"


EMPTY_ARC = _EmptyArc()


@dataclass(frozen=True)
class DirectedLine:
    origin: Point2
    direction: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "origin", as_point(self.origin))
        dx, dy = (float(c) for c in self.direction)
        norm = math.hypot(dx, dy)
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("direction must be a finite nonzero vector")
        object.__setattr__(self, "direction", (dx / norm, dy / norm))

    @classmethod
    def through(cls, a, b) -> "DirectedLine":
        a, b = as_point(a), as_point(b)
        return cls(a, (b.x - a.x, b.y - a.y))


class FarthestIndex:
    """Preprocessed chain answering farthest-vertex queries.

    Build with :func:`build`. Immutable after construction.
    """

    def __init__(self, chain: ConvexChain, backend: str = "canonical"):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
        self.chain = chain
        self.backend = backend
        self.xs = chain.xs
        self.ys = chain.ys
        if backend == "canonical" and chain.n >= 2:
            self.tree = K.build_tree_arrays(self.xs, self.ys)
        else:
            self.tree = K.empty_tree()

    @property
    def n(self) -> int:
        return self.chain.n

    def _vertex(self, q: Union[int, Point2, tuple]) -> int:
        if isinstance(q, (int,)) and not isinstance(q, bool):
            self._check_index(q)
            return q
        p = as_point(q)
        idx = self.chain.index_of.get((p.x, p.y))
        if idx is None:
            raise ValueError(f"query point {p} is not a chain vertex")
        return idx

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} outside chain of {self.n} vertices")

    def _positions(self, arc) -> tuple[int, int]:
        if arc is EMPTY_ARC:
            return 0, -1
        self._check_index(arc.start)
        self._check_index(arc.end)
        end = arc.end if arc.end >= arc.start else arc.end + self.n
        return arc.start, end

    def farthest_in_arc(self, q, arc) -> Optional[tuple[int, float]]:
        """(index, distance) of the arc vertex farthest from ``q``; None for EMPTY_ARC."""
        a, b = self._positions(arc)
        if a > b:
            return None
        if self.backend == "naive" and not self._is_vertex(q):
            return self._scan(as_point(q), range(a, b + 1))
        v, d2 = K.far_arc(self.xs, self.ys, self.n, self.tree, self._vertex(q), a, b)
        return v, math.sqrt(d2)

    def farthest_in_halfplane(self, q, line: DirectedLine) -> Optional[tuple[int, float]]:
        """Farthest vertex from ``q`` among vertices in the closed halfplane left of ``line``."""
        arc = self.halfplane_arc(line)
        return self.farthest_in_arc(q, arc)

    def halfplane_arc(self, line: DirectedLine):
        """Vertices in the closed halfplane left of ``line``, as an Arc (or EMPTY_ARC)."""
        o = line.origin
        ux, uy = line.direction
        a, b = K.halfplane_arc(self.xs, self.ys, o.x, o.y, ux, uy)
        if a > b:
            return EMPTY_ARC
        return Arc(a % self.n, b % self.n)

    def canonical_nodes(self, arc) -> int:
        """How many tree nodes the arc decomposes into (canonical backend only)."""
        if self.backend != "canonical":
            raise ValueError("only the canonical backend has a decomposition")
        a, b = self._positions(arc)
        if a > b:
            return 0
        return int(K.count_nodes(self.tree[0], a, b))

    def _is_vertex(self, q) -> bool:
        if isinstance(q, int) and not isinstance(q, bool):
            return True
        p = as_point(q)
        return (p.x, p.y) in self.chain.index_of

    def _scan(self, p: Point2, positions) -> tuple[int, float]:
        best, best_d2 = -1, -1.0
        for pos in positions:
            k = pos % self.n
            dx = self.xs[k] - p.x
            dy = self.ys[k] - p.y
            d2 = dx * dx + dy * dy
            if d2 > best_d2 or (d2 == best_d2 and k < best):
                best, best_d2 = k, d2
        return best, math.sqrt(best_d2)


def build(chain: ConvexChain, backend: str = "canonical") -> FarthestIndex:
    return FarthestIndex(chain, backend)
