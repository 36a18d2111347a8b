import math

import numpy as np
import pytest

from hausdorff_hull.geom_core import ConvexChain, Point2, convex_hull

SQUARE = [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]  # clockwise
SQUARE_CENTER = SQUARE + [(0.5, 0.5)]
R2 = 1 / math.sqrt(2)

_acceptance_lines = []


def random_convex_chain(rng, n, radius=None):
    """Strictly convex clockwise chain on a jittered ellipse."""
    ang = 2 * np.pi * (np.arange(n) + rng.uniform(0.1, 0.9, n)) / n
    a, b = rng.uniform(0.5, 2.0, 2) if radius is None else (radius, radius)
    pts = np.stack([a * np.cos(-ang), b * np.sin(-ang)], axis=1) + rng.uniform(-1, 1, 2)
    chain, _ = convex_hull([tuple(p) for p in pts])
    assert chain.n == n
    return chain


@pytest.fixture
def square():
    return ConvexChain([Point2(*p) for p in SQUARE])


@pytest.fixture
def acceptance_report():
    def report(line):
        print(line)
        _acceptance_lines.append(line)
    return report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
