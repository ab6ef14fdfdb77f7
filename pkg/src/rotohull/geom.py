"""Foundational geometric types and robust predicates.

Points are (x, y) named tuples.  The orientation predicate uses a
floating-point filter with an exact rational fallback, so staircase and
hull decisions never depend on float luck.  All types are immutable and
all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .angles import TWO_PI, norm_angle
from .errors import DuplicatePoint, EmptyInput, NonFinite


class Point2(NamedTuple):
    x: float
    y: float


# Error-bound coefficient for the orientation filter (Shewchuk-style
# first stage: 3 + 16*eps times eps on the detsum magnitude).
_ORIENT_ERRBOUND = (3.0 + 16.0 * 2.0 ** -52) * 2.0 ** -52


def orient(pa: Sequence[float], pb: Sequence[float], pc: Sequence[float]) -> int:
    """Sign of twice the signed area of triangle (pa, pb, pc).

    +1 for a left turn (ccw), -1 for right, 0 for collinear.  Falls back
    to exact rational arithmetic when the float determinant lands inside
    its error bound.
    """
    detleft = (pa[0] - pc[0]) * (pb[1] - pc[1])
    detright = (pa[1] - pc[1]) * (pb[0] - pc[0])
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return 1 if det != 0.0 else 0
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return -1 if det != 0.0 else 0
        detsum = -detleft - detright
    else:
        return (det > 0.0) - (det < 0.0)
    if abs(det) > _ORIENT_ERRBOUND * detsum:
        return (det > 0.0) - (det < 0.0)
    ax, ay = Fraction(pa[0]), Fraction(pa[1])
    bx, by = Fraction(pb[0]), Fraction(pb[1])
    cx, cy = Fraction(pc[0]), Fraction(pc[1])
    exact = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (exact > 0) - (exact < 0)


def dot(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[0] + u[1] * v[1]


def cross(u: Sequence[float], v: Sequence[float]) -> float:
    return u[0] * v[1] - u[1] * v[0]


def unit(angle: float) -> tuple[float, float]:
    return (math.cos(angle), math.sin(angle))


def rotate_point(p: Sequence[float], phi: float) -> Point2:
    c, s = math.cos(phi), math.sin(phi)
    return Point2(c * p[0] - s * p[1], s * p[0] + c * p[1])


@dataclass(frozen=True)
class DegeneracyReport:
    """Flags attached by validate_point_set; nothing here rejects input."""

    coordinate_ties: bool = False
    collinear_triples: bool | None = None  # None: not checked (large n)

    def any_flag(self) -> bool:
        return self.coordinate_ties or bool(self.collinear_triples)


@dataclass(frozen=True)
class PointSet:
    """Validated, immutable planar point set."""

    points: tuple[Point2, ...]
    degeneracy: DegeneracyReport = field(default_factory=DegeneracyReport)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point2:
        return self.points[i]

    def diameter(self) -> float:
        xs = [p.x for p in self.points]
        ys = [p.y for p in self.points]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys)) if self.points else 0.0


_COLLINEAR_CHECK_LIMIT = 120


def validate_point_set(raw: Iterable[Sequence[float]]) -> PointSet:
    """Validate raw coordinates into a PointSet.

    Rejects non-finite coordinates and exact duplicates.  Collinear
    triples and coordinate ties are flagged, not rejected; downstream
    dominance logic resolves them with lexicographic tie-breaking.
    The cubic collinearity scan is skipped above a size threshold.
    """
    pts: list[Point2] = []
    seen: set[tuple[float, float]] = set()
    for p in raw:
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFinite(f"non-finite coordinate: ({x}, {y})")
        key = (x, y)
        if key in seen:
            raise DuplicatePoint(f"duplicate point ({x}, {y})")
        seen.add(key)
        pts.append(Point2(x, y))

    ties = (len({p.x for p in pts}) < len(pts)
            or len({p.y for p in pts}) < len(pts))
    collinear: bool | None
    if len(pts) > _COLLINEAR_CHECK_LIMIT:
        collinear = None
    else:
        collinear = False
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    if orient(pts[i], pts[j], pts[k]) == 0:
                        collinear = True
                        break
                if collinear:
                    break
            if collinear:
                break
    return PointSet(tuple(pts), DegeneracyReport(ties, collinear))


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise, strictly convex vertex cycle (h >= 1).

    Degenerate inputs produce h = 1 (single point) or h = 2 (segment
    endpoints); collinear interior points are dropped.
    """

    vertices: tuple[Point2, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def area(self) -> float:
        v = self.vertices
        h = len(v)
        if h < 3:
            return 0.0
        return 0.5 * sum(cross(v[i], v[(i + 1) % h]) for i in range(h))

    def edges(self) -> list[tuple[Point2, Point2]]:
        v = self.vertices
        h = len(v)
        if h < 2:
            return []
        return [(v[i], v[(i + 1) % h]) for i in range(h)]


def convex_hull(points: PointSet | Sequence[Sequence[float]]) -> ConvexPolygon:
    """Andrew's monotone chain with the robust orientation predicate.

    Interior and boundary-interior points are excluded; output is ccw.
    """
    if isinstance(points, PointSet):
        pts = list(points.points)
    else:
        pts = [Point2(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise EmptyInput("convex hull of an empty set")
    pts = sorted(set(pts))
    if len(pts) == 1:
        return ConvexPolygon((pts[0],))
    if len(pts) == 2:
        return ConvexPolygon(tuple(pts))

    def half(seq: list[Point2]) -> list[Point2]:
        out: list[Point2] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:  # all points collinear
        return ConvexPolygon((pts[0], pts[-1]))
    return ConvexPolygon(tuple(cycle))


@dataclass(frozen=True)
class DirectionSet:
    """A set of k >= 2 lines through the origin, plus derived data.

    line_angles live in [0, pi), strictly increasing.  The 2k rays are the
    line angles and their antipodes; sector_angles[i] is the ccw angle
    from ray i to ray i+1, and apertures[i] = pi - sector_angles[i] is the
    opening of the wedge family whose bounding rays are ray i+1 and
    ray i+k.  theta_min is the smallest aperture.
    """

    line_angles: tuple[float, ...]

    def __post_init__(self):
        k = len(self.line_angles)
        if k < 2:
            raise ValueError("need at least 2 lines")
        for a in self.line_angles:
            if not (0.0 <= a < math.pi):
                raise ValueError(f"line angle {a} outside [0, pi)")
        for a, b in zip(self.line_angles, self.line_angles[1:]):
            if not a < b:
                raise ValueError("line angles must be strictly increasing")

    @staticmethod
    def axes() -> "DirectionSet":
        return DirectionSet((0.0, math.pi / 2.0))

    @property
    def k(self) -> int:
        return len(self.line_angles)

    @property
    def ray_angles(self) -> tuple[float, ...]:
        return tuple(self.line_angles) + tuple(a + math.pi for a in self.line_angles)

    @property
    def sector_angles(self) -> tuple[float, ...]:
        rays = self.ray_angles
        n = len(rays)
        return tuple(norm_angle(rays[(i + 1) % n] - rays[i]) for i in range(n))

    @property
    def apertures(self) -> tuple[float, ...]:
        return tuple(math.pi - a for a in self.sector_angles)

    @property
    def theta_min(self) -> float:
        return min(self.apertures)

    def family_bounds(self, i: int, theta: float = 0.0) -> tuple[float, float]:
        """Bounding ray directions (phi_lo, phi_hi) of wedge family i at
        rotation theta; phi_hi - phi_lo = apertures[i] (mod 2*pi)."""
        rays = self.ray_angles
        n = len(rays)
        lo = norm_angle(rays[(i + 1) % n] + theta)
        return lo, lo + self.apertures[i]

    def n_families(self) -> int:
        return 2 * self.k

    def opposite(self, i: int) -> int:
        return (i + self.k) % (2 * self.k)
