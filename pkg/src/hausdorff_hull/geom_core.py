"""Planar geometry kernel.

Points are double precision. The orientation predicate is exact: a floating
point filter decides almost every call and rational arithmetic settles the
rest. Distances are plain floating point, but every reported point-to-segment
distance in the package goes through :func:`seg_dist` (or its compiled twin in
``_kernels``), which evaluate the identical expression sequence. Two routes to
the same critical value therefore produce the same bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

LEFT = 1
COLLINEAR = 0
RIGHT = -1

# Shewchuk's ccwerrboundA: (3 + 16 eps) eps with eps = 2**-53.
_CCW_ERRBOUND = (3.0 + 16.0 * 2.0**-53) * 2.0**-53


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        x = float(self.x)
        y = float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite coordinate in Point2({self.x!r}, {self.y!r})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2


def as_point(p) -> Point2:
    return p if isinstance(p, Point2) else Point2(p[0], p[1])


def orient(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the signed area of triangle (a, b, c).

    Returns LEFT (+1) when c lies left of the directed line a->b, RIGHT (-1)
    when it lies right, COLLINEAR (0) otherwise. Exact for all finite doubles.
    """
    detleft = (a.x - c.x) * (b.y - c.y)
    detright = (a.y - c.y) * (b.x - c.x)
    det = detleft - detright
    bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return LEFT
    if -det > bound:
        return RIGHT
    ax, ay = Fraction(a.x), Fraction(a.y)
    bx, by = Fraction(b.x), Fraction(b.y)
    cx, cy = Fraction(c.x), Fraction(c.y)
    exact = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (exact > 0) - (exact < 0)


def seg_dist(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    """Distance from (px, py) to the segment from (ax, ay) to (bx, by).

    The compiled copy in ``_kernels.seg_dist`` must stay expression-for-expression
    identical to this one.
    """
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


def dist_point_segment(p: Point2, s: Segment) -> float:
    return seg_dist(p.x, p.y, s.a.x, s.a.y, s.b.x, s.b.y)


def dist(p: Point2, q: Point2) -> float:
    return seg_dist(p.x, p.y, q.x, q.y, q.x, q.y)


@dataclass(frozen=True)
class ConvexChain:
    """Vertices of a convex polygon in clockwise order, strictly convex.

    Indices are 0-based. Construction validates the invariants with exact
    predicates; pass ``validate=False`` only for chains produced by
    :func:`convex_hull`.
    """

    vertices: tuple[Point2, ...]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(as_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.validate:
            _check_chain(verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Point2:
        return self.vertices[i]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([v.x for v in self.vertices], dtype=np.float64)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.array([v.y for v in self.vertices], dtype=np.float64)

    @cached_property
    def index_of(self) -> dict[tuple[float, float], int]:
        return {(v.x, v.y): i for i, v in enumerate(self.vertices)}

    def signed_area(self) -> float:
        xs, ys = self.xs, self.ys
        return 0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1)))


def _check_chain(verts: Sequence[Point2]) -> None:
    n = len(verts)
    if n < 1:
        raise ValueError("convex chain needs at least one vertex")
    if len({(v.x, v.y) for v in verts}) != n:
        raise ValueError("convex chain has duplicate vertices")
    if n < 3:
        return
    for k in range(n):
        if orient(verts[k - 2], verts[k - 1], verts[k]) != RIGHT:
            raise ValueError(f"vertices {(k - 2) % n}, {(k - 1) % n}, {k} are not a strict clockwise turn")
    # Local right turns plus a clockwise fan from vertex 0 rule out chains that wind twice.
    for k in range(1, n - 1):
        if orient(verts[0], verts[k], verts[k + 1]) != RIGHT:
            raise ValueError("chain is not a simple convex polygon")


def dedupe(points: Iterable) -> tuple[list[Point2], list[int]]:
    """Drop repeated points, keeping the first occurrence.

    Returns the unique points and, for each, its index in the input.
    """
    seen: set[tuple[float, float]] = set()
    out: list[Point2] = []
    idx: list[int] = []
    for i, p in enumerate(points):
        p = as_point(p)
        key = (p.x, p.y)
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
        idx.append(i)
    return out, idx


def convex_hull(points: Sequence) -> tuple[ConvexChain, list[int]]:
    """Clockwise convex hull with collinear and duplicate points removed.

    Returns the chain and, for each chain vertex, its index in ``points``.
    The chain starts at the lexicographically smallest (x, y) vertex.
    """
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    uniq, first = dedupe(pts)
    order = sorted(range(len(uniq)), key=lambda i: (uniq[i].x, uniq[i].y))
    if len(order) == 1:
        return ConvexChain((uniq[order[0]],), validate=False), [first[order[0]]]

    def half(seq):
        h: list[int] = []
        for i in seq:
            while len(h) >= 2 and orient(uniq[h[-2]], uniq[h[-1]], uniq[i]) != LEFT:
                h.pop()
            h.append(i)
        return h

    lower = half(order)
    upper = half(reversed(order))
    ccw = lower[:-1] + upper[:-1]
    cw = [ccw[0]] + ccw[:0:-1]
    chain = ConvexChain(tuple(uniq[i] for i in cw), validate=False)
    return chain, [first[i] for i in cw]


def dist_point_hull(p: Point2, chain: ConvexChain) -> float:
    verts = chain.vertices
    n = len(verts)
    if n == 1:
        return dist(p, verts[0])
    if n == 2:
        return dist_point_segment(p, Segment(verts[0], verts[1]))
    inside = True
    for k in range(n):
        if orient(verts[k - 1], verts[k], p) == LEFT:
            inside = False
            break
    if inside:
        return 0.0
    return min(dist_point_segment(p, Segment(verts[k - 1], verts[k])) for k in range(n))


def to_array(points: Sequence) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return np.array([[x, y] for x, y in points], dtype=np.float64).reshape(-1, 2)


def _seg_dist_vec(px, py, ax, ay, bx, by):
    # Vectorized seg_dist; same branch structure, used for bulk cost evaluation.
    dx = bx - ax
    dy = by - ay
    ux = px - ax
    uy = py - ay
    l2 = dx * dx + dy * dy
    t = ux * dx + uy * dy
    da = np.sqrt(ux * ux + uy * uy)
    vx = px - bx
    vy = py - by
    db = np.sqrt(vx * vx + vy * vy)
    with np.errstate(divide="ignore", invalid="ignore"):
        dl = np.abs(dx * uy - dy * ux) / np.sqrt(l2)
    return np.where((l2 == 0.0) | (t <= 0.0), da, np.where(t >= l2, db, dl))


def hull_cost(points: Sequence, subset: Iterable[int], chunk: int = 1 << 22) -> float:
    """cost(Q, P): max over P of the distance to the convex hull of Q = P[subset].

    Vectorized; intended for validating solver output at scale.
    """
    P = to_array(points)
    sub = list(subset)
    if not sub:
        raise ValueError("empty subset")
    chain, _ = convex_hull([tuple(P[i]) for i in sub])
    hx, hy = chain.xs, chain.ys
    h = len(hx)
    ax, ay = hx, hy
    bx, by = np.roll(hx, -1), np.roll(hy, -1)
    if h == 2:
        ax, ay, bx, by = hx[:1], hy[:1], hx[1:], hy[1:]
    step = max(1, chunk // max(1, len(ax)))
    worst = 0.0
    for s in range(0, len(P), step):
        px = P[s:s + step, 0][:, None]
        py = P[s:s + step, 1][:, None]
        d = _seg_dist_vec(px, py, ax[None, :], ay[None, :], bx[None, :], by[None, :]).min(axis=1)
        if h >= 3:
            cross = (bx - ax)[None, :] * (py - ay[None, :]) - (by - ay)[None, :] * (px - ax[None, :])
            d = np.where((cross <= 0.0).all(axis=1), 0.0, d)
        if len(d):
            worst = max(worst, float(d.max()))
    return worst
