import math
import random

import pytest

from rotohull.geom import DirectionSet, validate_point_set


def random_points(rng: random.Random, n: int, kind: str = "uniform"):
    """Instance generators used across the suite.  'clustered' makes a few
    tight blobs, 'ring' puts points near a circle (hull-heavy), 'band'
    makes a thin elongated set (overlap-heavy)."""
    if kind == "uniform":
        pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
    elif kind == "clustered":
        m = max(1, n // 8)
        centers = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(m)]
        pts = []
        for i in range(n):
            cx, cy = centers[i % m]
            pts.append((cx + rng.gauss(0, 0.03), cy + rng.gauss(0, 0.03)))
    elif kind == "ring":
        pts = []
        for _ in range(n):
            a = rng.uniform(0, 2 * math.pi)
            r = rng.uniform(0.9, 1.0)
            pts.append((r * math.cos(a), r * math.sin(a)))
    elif kind == "band":
        pts = [(rng.uniform(-1, 1), rng.uniform(-0.02, 0.02)) for _ in range(n)]
    else:
        raise ValueError(kind)
    return validate_point_set(pts)


SQUARE = validate_point_set([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


@pytest.fixture
def square():
    return SQUARE


@pytest.fixture
def axes():
    return DirectionSet.axes()
