"""Point files, instance generators and run records."""
from __future__ import annotations

import csv
import hashlib
import json
import math
import struct
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .geom_core import Point2, dedupe

KINDS = ("convex-circle", "convex-perturbed", "uniform-square", "clustered", "collinear")
FORMATS = ("csv", "json")


class InputError(ValueError):
    """Bad input data (as opposed to bad command-line usage)."""


def _format_for(path, fmt: Optional[str]) -> str:
    if fmt:
        return fmt
    return "json" if str(path).lower().endswith(".json") else "csv"


def _point(x, y, where: str) -> Point2:
    try:
        return Point2(float(x), float(y))
    except (TypeError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None


def parse_points(path, fmt: Optional[str] = None) -> list[Point2]:
    """Read points; repeated points are dropped (with a warning), first occurrence kept."""
    fmt = _format_for(path, fmt)
    text = Path(path).read_text()
    pts: list[Point2] = []
    if fmt == "csv":
        for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise InputError(f"line {lineno}: expected 'x,y', got {','.join(row)!r}")
            pts.append(_point(row[0], row[1], f"line {lineno}"))
    elif fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"line {e.lineno}: {e.msg}") from None
        if not isinstance(data, list):
            raise InputError("expected a JSON array of [x, y] pairs")
        for k, item in enumerate(data):
            if not (isinstance(item, list) and len(item) == 2):
                raise InputError(f"item {k}: expected [x, y], got {item!r}")
            pts.append(_point(item[0], item[1], f"item {k}"))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    uniq, _ = dedupe(pts)
    if len(uniq) < len(pts):
        warnings.warn(f"dropped {len(pts) - len(uniq)} duplicate point(s)", stacklevel=2)
    return uniq


def emit(points, path, fmt: Optional[str] = None) -> None:
    fmt = _format_for(path, fmt)
    rows = [(float(x), float(y)) for x, y in points]
    if fmt == "csv":
        Path(path).write_text("".join(f"{x!r},{y!r}\n" for x, y in rows))
    elif fmt == "json":
        Path(path).write_text(json.dumps([list(r) for r in rows]) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _stratified_angles(rng: np.random.Generator, n: int) -> np.ndarray:
    # One angle per sector, kept away from the sector edges so neighbours never
    # get close enough for rounding to break strict convexity.
    u = rng.uniform(0.1, 0.9, n)
    return 2.0 * np.pi * (np.arange(n) + u) / n


def gen_instance(kind: str, n: int, seed: int) -> list[Point2]:
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    if kind == "convex-circle":
        t = -_stratified_angles(rng, n)  # decreasing angle: clockwise
        P = np.stack([np.cos(t), np.sin(t)], axis=1)
    elif kind == "convex-perturbed":
        t = -_stratified_angles(rng, n)
        C = np.stack([np.cos(t), np.sin(t)], axis=1)
        rot = rng.uniform(0, 2 * np.pi)
        R = np.array([[np.cos(rot), -np.sin(rot)], [np.sin(rot), np.cos(rot)]])
        S = np.diag(rng.uniform(0.5, 2.0, 2))
        P = C @ (R @ S).T + rng.uniform(-1, 1, 2)
    elif kind == "uniform-square":
        P = rng.random((n, 2))
    elif kind == "clustered":
        m = max(1, int(round(math.sqrt(n) / 2)))
        centers = rng.random((m, 2))
        P = centers[rng.integers(0, m, n)] + rng.normal(scale=0.05, size=(n, 2))
    elif kind == "collinear":
        t = rng.permutation(np.linspace(0.0, 1.0, n)) if n > 1 else np.zeros(1)
        P = np.stack([t, t / 2.0], axis=1)  # halving is exact, so these are exactly collinear
    else:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {KINDS}")
    return [Point2(x, y) for x, y in P]


def digest(points) -> str:
    h = hashlib.sha256()
    for x, y in points:
        h.update(struct.pack("<dd", float(x), float(y)))
    return h.hexdigest()[:16]


def _round(v: Any) -> Any:
    if isinstance(v, float):
        return v if not math.isfinite(v) else float(f"{v:.12g}")
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return _round(float(v))
    return v


@dataclass
class RunRecord:
    problem: str
    n: int
    input_digest: str
    eps_in: Optional[float]
    k_in: Optional[int]
    indices: list[int]
    k: int
    eps: float
    backend: Optional[str] = None
    seed: Optional[int] = None
    elapsed_ms: int = 0
    cost0_queries: Optional[int] = None
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(_round(asdict(self)), indent=2, sort_keys=False)
