import math
import random

import pytest

from rotohull.angles import (AngleInterval, interval_intersection, norm_angle,
                             TWO_PI)
from rotohull.errors import DuplicatePoint, EmptyInput, NonFinite
from rotohull.geom import (DirectionSet, Point2, convex_hull, orient,
                           rotate_point, validate_point_set)
from rotohull.oracle import gift_wrap_hull

from conftest import random_points


def test_convex_hull_square():
    ps = validate_point_set([(0, 0), (1, 0), (1, 1), (0, 1)])
    hull = convex_hull(ps)
    assert len(hull) == 4
    verts = list(hull.vertices)
    i = verts.index(Point2(0.0, 0.0))
    cyc = verts[i:] + verts[:i]
    assert cyc == [Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)]


def test_convex_hull_interior_point():
    ps = validate_point_set([(0, 0), (2, 0), (1, 1), (1, 0.2)])
    hull = convex_hull(ps)
    assert set(hull.vertices) == {Point2(0, 0), Point2(2, 0), Point2(1, 1)}


def test_convex_hull_matches_gift_wrapping():
    rng = random.Random(42)
    for _ in range(20):
        pts = []
        for _ in range(200):
            a = rng.uniform(0, TWO_PI)
            r = math.sqrt(rng.random())
            pts.append((r * math.cos(a), r * math.sin(a)))
        ps = validate_point_set(pts)
        fast = set(convex_hull(ps).vertices)
        slow = set(gift_wrap_hull(ps))
        assert fast == slow


def test_convex_hull_rotation_equivariance():
    rng = random.Random(7)
    for _ in range(100):
        ps = random_points(rng, 30)
        phi = rng.uniform(0, TWO_PI)
        rot = validate_point_set([rotate_point(p, phi) for p in ps])
        h1 = {(round(p.x, 9), round(p.y, 9))
              for p in (rotate_point(q, phi) for q in convex_hull(ps).vertices)}
        h2 = {(round(p.x, 9), round(p.y, 9)) for p in convex_hull(rot).vertices}
        assert h1 == h2


def test_convex_hull_empty():
    with pytest.raises(EmptyInput):
        convex_hull(validate_point_set([]))


def test_convex_hull_degenerate_sizes():
    assert len(convex_hull(validate_point_set([(1, 2)]))) == 1
    assert len(convex_hull(validate_point_set([(0, 0), (1, 0), (2, 0)]))) == 2


def test_orient_exactness():
    # collinear points at awkward magnitudes must give exactly zero
    a, b = (0.5, 0.5), (12.0, 12.0)
    for t in [1e-3, 0.25, 0.75, 1 - 1e-3]:
        c = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        got = orient(a, b, c)
        # the exact fallback must agree with rational arithmetic
        from fractions import Fraction
        det = ((Fraction(a[0]) - Fraction(c[0])) * (Fraction(b[1]) - Fraction(c[1]))
               - (Fraction(a[1]) - Fraction(c[1])) * (Fraction(b[0]) - Fraction(c[0])))
        assert got == (det > 0) - (det < 0)
    assert orient((0, 0), (1 << 30, 1 << 30), (1 << 29, 1 << 29)) == 0


def test_validate_rejects_duplicates_and_nonfinite():
    with pytest.raises(DuplicatePoint):
        validate_point_set([(0, 0), (0, 0)])
    with pytest.raises(NonFinite):
        validate_point_set([(0, 0), (float("nan"), 1)])


def test_validate_flags():
    ps = validate_point_set([(0, 0), (1, 0), (2, 0)])
    assert ps.degeneracy.collinear_triples
    assert ps.degeneracy.coordinate_ties
    ps2 = validate_point_set([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert ps2.degeneracy.coordinate_ties
    ps3 = validate_point_set([(0, 0), (1.1, 0.2), (0.4, 0.9)])
    assert not ps3.degeneracy.any_flag()


def test_interval_intersection_basic():
    a = AngleInterval(0.0, math.pi)
    b = AngleInterval(math.pi / 2, 3 * math.pi / 2)
    pieces = interval_intersection(a, b)
    assert len(pieces) == 1
    assert pieces[0].start == pytest.approx(math.pi / 2)
    assert pieces[0].end == pytest.approx(math.pi)


def test_interval_intersection_wraparound_two_pieces():
    a = AngleInterval(3 * math.pi / 2, math.pi / 2)   # wraps through 0
    b = AngleInterval(math.pi / 4, 7 * math.pi / 4)
    pieces = interval_intersection(a, b)
    got = sorted((round(p.start, 12), round(p.end, 12)) for p in pieces)
    want = sorted([(round(3 * math.pi / 2, 12), round(7 * math.pi / 4, 12)),
                   (round(math.pi / 4, 12), round(math.pi / 2, 12))])
    assert got == want


def test_interval_contains_wraparound():
    a = AngleInterval(3 * math.pi / 2, math.pi / 2)
    assert a.contains(0.0)
    assert a.contains(3 * math.pi / 2)
    assert not a.contains(math.pi / 2)  # half-open end
    assert not a.contains(math.pi)


def test_interval_ops_pointwise_agreement():
    rng = random.Random(3)
    for _ in range(50):
        a = AngleInterval(rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI))
        b = AngleInterval(rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI))
        pieces = interval_intersection(a, b)
        for _ in range(20):
            t = rng.uniform(0, TWO_PI)
            direct = a.contains(t) and b.contains(t)
            via = any(p.contains(t) for p in pieces)
            assert direct == via, (a, b, t)


def test_direction_set_invariants():
    d = DirectionSet((0.0, math.pi / 3, 2 * math.pi / 3))
    assert d.k == 3
    assert len(d.ray_angles) == 6
    assert sum(d.sector_angles) == pytest.approx(TWO_PI)
    assert all(0 < t < math.pi for t in d.apertures)
    assert d.theta_min == pytest.approx(math.pi - max(d.sector_angles))
    axes = DirectionSet.axes()
    assert axes.apertures == (math.pi / 2,) * 4
    lo, hi = axes.family_bounds(3, 0.0)
    assert norm_angle(lo) == pytest.approx(0.0)
    assert hi - lo == pytest.approx(math.pi / 2)


def test_direction_set_rejects_bad_input():
    with pytest.raises(ValueError):
        DirectionSet((0.0,))
    with pytest.raises(ValueError):
        DirectionSet((0.0, 0.0))
    with pytest.raises(ValueError):
        DirectionSet((0.0, math.pi))
