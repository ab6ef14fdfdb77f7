"""Fixed-orientation hulls: staircase maxima, boundary structure, metrics.

A wedge family i (bounding directions phi_lo, phi_hi = phi_lo + aperture)
induces an oblique dominance: q blocks p exactly when q lies in the open
wedge anchored at p, i.e. when both

    mu(q) > mu(p)   with mu = <., unit(phi_lo + pi/2)>
    nu(q) > nu(p)   with nu = <., unit(phi_hi - pi/2)>

The family's staircase vertices are the undominated points, ordered by
decreasing nu.  Coordinate ties are resolved by lexicographic (x, then y)
tie-breaking so degenerate inputs give deterministic output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .angles import norm_angle
from .errors import EmptyInput
from .geom import (ConvexPolygon, DirectionSet, Point2, PointSet, convex_hull,
                   cross, dot, unit)

# Relative tolerance deciding when a staircase step degenerates (apex
# coincides with a supporting vertex) and when an overlap has zero area.
EPS_DEGEN = 1e-12


@dataclass(frozen=True)
class FamilyFrame:
    """Per-family geometry at a fixed rotation."""

    family: int
    theta: float
    phi_lo: float
    phi_hi: float
    aperture: float
    m1: tuple[float, float]  # inward normal of the phi_lo bounding ray
    m2: tuple[float, float]  # inward normal of the phi_hi bounding ray
    e_lo: tuple[float, float]
    e_hi: tuple[float, float]

    def mu(self, p: Sequence[float]) -> float:
        return p[0] * self.m1[0] + p[1] * self.m1[1]

    def nu(self, p: Sequence[float]) -> float:
        return p[0] * self.m2[0] + p[1] * self.m2[1]


def family_frame(dirs: DirectionSet, family: int, theta: float) -> FamilyFrame:
    phi_lo, phi_hi = dirs.family_bounds(family, theta)
    return FamilyFrame(
        family=family,
        theta=theta,
        phi_lo=phi_lo,
        phi_hi=phi_hi,
        aperture=dirs.apertures[family],
        m1=unit(phi_lo + math.pi / 2.0),
        m2=unit(phi_hi - math.pi / 2.0),
        e_lo=unit(phi_lo),
        e_hi=unit(phi_hi),
    )


def family_maxima(points: PointSet, frame: FamilyFrame) -> list[int]:
    """Indices of undominated points for one wedge family, ordered along
    the staircase (nu descending, mu ascending on ties).

    Dominance is strict in both oblique coordinates; exact ties defer to
    lexicographic (x, y) order, so e.g. (1,0) is treated as dominated by
    (1,1) for the first-quadrant family.
    """
    pts = points.points
    n = len(pts)
    if n == 0:
        raise EmptyInput("maxima of an empty set")
    keyed = []
    for i, p in enumerate(pts):
        keyed.append((frame.nu(p), frame.mu(p), p, i))
    # nu descending; within nu ties, lexicographically larger points first
    # so that every predecessor "gt"-beats the current point in nu.
    order = sorted(range(n), key=lambda i: (-keyed[i][0], (-keyed[i][2].x, -keyed[i][2].y)))
    best_mu = -math.inf
    best_lex = None
    out: list[int] = []
    for i in order:
        nu_i, mu_i, p, _ = keyed[i]
        dominated = best_mu > mu_i or (best_mu == mu_i and best_lex is not None
                                       and best_lex > (p.x, p.y))
        if not dominated:
            out.append(i)
        if mu_i > best_mu or (mu_i == best_mu and (best_lex is None or (p.x, p.y) > best_lex)):
            best_mu = mu_i
            best_lex = (p.x, p.y)
    out.sort(key=lambda i: (-keyed[i][0], keyed[i][1]))
    return out


def quadrant_maxima(points: PointSet, theta: float, family: int) -> list[int]:
    """Rectilinear special case: maxima of the rotated quadrant family
    (0=NW, 1=SW, 2=SE, 3=NE in ray order), ordered along the staircase."""
    dirs = DirectionSet.axes()
    return family_maxima(points, family_frame(dirs, family, theta))


def step_apex(frame: FamilyFrame, w: Point2, u: Point2) -> tuple[Point2, float, float]:
    """Apex of the extremal wedge supported by chain-consecutive (w, u):
    w sits on the phi_lo ray, u on the phi_hi ray.  Returns (apex, t, s)
    with ray parameters t, s >= 0 (zero means a degenerate step)."""
    sin_t = math.sin(frame.aperture)
    d = (w.x - u.x, w.y - u.y)
    t = (d[0] * frame.m2[0] + d[1] * frame.m2[1]) / sin_t   # = nu(w)-nu(u)
    s = (-d[0] * frame.m1[0] - d[1] * frame.m1[1]) / sin_t  # = mu(u)-mu(w)
    apex = Point2(w.x - t * frame.e_lo[0], w.y - t * frame.e_lo[1])
    return apex, t, s


@dataclass(frozen=True)
class Staircase:
    """One family's boundary chain: supporting vertices (left turns)
    alternating with extremal apexes (right turns).  apexes[j] sits between
    vertices j and j+1; None marks a degenerate step (apex coincides with a
    supporting vertex within tolerance)."""

    family: int
    aperture: float
    vertices: tuple[int, ...]
    apexes: tuple[Point2 | None, ...]

    def step_count(self) -> int:
        return sum(1 for a in self.apexes if a is not None)


@dataclass(frozen=True)
class OverlapRegion:
    """Intersection of two opposite extremal wedges (rectangle for the
    rectilinear case, rhomboid in general).  key = (p, q, r, s) point
    indices: (p, q) support the family-i wedge, (r, s) the opposite one."""

    key: tuple[int, int, int, int]
    family_pair: tuple[int, int]
    area: float
    corners: tuple[Point2, Point2, Point2, Point2]


@dataclass(frozen=True)
class StabbingIntervals:
    """Per wedge family, the inclusive range of hull-cycle indices its
    wedges can stab; a single repeated index means the family contributes
    only that hull vertex."""

    hull: ConvexPolygon
    per_family: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class HullBoundary:
    """Boundary of the hull at one fixed orientation."""

    theta: float
    dirs: DirectionSet
    staircases: tuple[Staircase, ...]
    cycle: tuple[int, ...]              # vertex indices, ccw, junctions deduped
    overlaps: tuple[OverlapRegion, ...]
    components: tuple[tuple[Point2, ...], ...]
    area: float
    polygon_area: float
    triangle_area_sum: float
    points: PointSet

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.cycle)

    def steps(self) -> int:
        return sum(st.step_count() for st in self.staircases)


def stabbing_intervals(points: PointSet, dirs: DirectionSet,
                       theta: float = 0.0) -> StabbingIntervals:
    """For each ray, the ccw-last hull vertex extreme in the ray's left
    normal direction; family i stabs hull edges between anchors i and i+1."""
    hull = convex_hull(points)
    verts = hull.vertices
    h = len(verts)
    n_fam = dirs.n_families()
    rays = dirs.ray_angles
    anchors: list[int] = []
    for i in range(n_fam):
        nrm = unit(rays[i] + theta + math.pi / 2.0)
        best = max(dot(v, nrm) for v in verts)
        touching = [j for j, v in enumerate(verts) if dot(v, nrm) >= best - 1e-12 * (1 + abs(best))]
        # ccw-last touching vertex: the one whose successor is not touching
        touch_set = set(touching)
        pick = touching[0]
        for j in touching:
            if (j + 1) % h not in touch_set:
                pick = j
                break
        anchors.append(pick)
    per = tuple((anchors[i], anchors[(i + 1) % n_fam]) for i in range(n_fam))
    return StabbingIntervals(hull, per)


def _walk_nodes(staircases: Sequence[Staircase], points: PointSet):
    """Concatenate per-family chains into the full ccw boundary walk.
    Nodes are ('v', point_index) and ('a', family, (p_idx, q_idx), Point2);
    consecutive duplicate vertices (family junctions) are dropped."""
    nodes: list[tuple] = []
    for st in staircases:
        vs = st.vertices
        for j, vi in enumerate(vs):
            nodes.append(("v", vi))
            if j < len(vs) - 1 and st.apexes[j] is not None:
                nodes.append(("a", st.family, (vs[j], vs[j + 1]), st.apexes[j]))
    # dedup consecutive identical vertex nodes, including the cyclic wrap
    out: list[tuple] = []
    for nd in nodes:
        if out and nd[0] == "v" and out[-1][0] == "v" and out[-1][1] == nd[1]:
            continue
        out.append(nd)
    while len(out) > 1 and out[0][0] == "v" and out[-1][0] == "v" and out[0][1] == out[-1][1]:
        out.pop()
    return out


def _node_xy(nd, points: PointSet) -> Point2:
    return points[nd[1]] if nd[0] == "v" else nd[3]


def _components_from_walk(walk, overlaps: Sequence[OverlapRegion],
                          frames: Sequence[FamilyFrame],
                          points: PointSet, scale: float):
    """Split the boundary walk into connected-component cycles.

    Two mechanisms disconnect the hull: positive-area overlaps of opposite
    extremal wedges (each cuts one piece in two at the overlap's crossing
    corners) and degenerate pinches where several apexes coincide at one
    position (symmetric inputs; each coincident copy starts its own piece).
    """
    if not walk:
        return tuple()
    pieces: list[list] = []

    # pinch split at coincident apex positions
    tol = max(1e-9 * scale, 1e-15)
    apex_nodes: dict[tuple[int, int], list[int]] = {}
    for idx, nd in enumerate(walk):
        if nd[0] == "a":
            key = (round(nd[3].x / tol) if tol else 0, round(nd[3].y / tol) if tol else 0)
            apex_nodes.setdefault(key, []).append(idx)
    pinch_positions = sorted(i for k, v in apex_nodes.items() if len(v) > 1 for i in v)
    if pinch_positions:
        m = len(pinch_positions)
        for a, b in zip(pinch_positions, pinch_positions[1:] + [pinch_positions[0]]):
            if b > a:
                piece = walk[a:b + 1]
            else:
                piece = walk[a:] + walk[:b + 1]
            pieces.append(piece)
    else:
        pieces.append(list(walk))

    # overlap cuts: remove the two wedge apexes, close each side with the
    # crossing corner of the overlap region
    for ov in overlaps:
        p_i, q_i, r_i, s_i = ov.key
        fam_i = ov.family_pair[0]
        target = None
        pos_a = pos_b = None
        for pi, piece in enumerate(pieces):
            pa = pb = None
            for idx, nd in enumerate(piece):
                if nd[0] == "a":
                    if nd[1] == fam_i and nd[2] == (p_i, q_i):
                        pa = idx
                    elif nd[2] == (r_i, s_i):
                        pb = idx
            if pa is not None and pb is not None:
                target, pos_a, pos_b = pi, pa, pb
                break
        if target is None:
            continue  # degenerate: apex already consumed by a pinch
        piece = pieces.pop(target)
        corner_qr, corner_sp = ov.corners[1], ov.corners[3]
        lo, hi = min(pos_a, pos_b), max(pos_a, pos_b)
        mid = piece[lo + 1:hi]
        rest = piece[hi + 1:] + piece[:lo]
        first_corner = corner_qr if pos_a < pos_b else corner_sp
        second_corner = corner_sp if pos_a < pos_b else corner_qr
        pieces.append([("x", first_corner)] + mid)
        pieces.append([("x", second_corner)] + rest)

    comps: list[tuple[Point2, ...]] = []
    for piece in pieces:
        xy: list[Point2] = []
        for nd in piece:
            pt = nd[1] if nd[0] == "x" else _node_xy(nd, points)
            if xy and abs(xy[-1].x - pt.x) <= tol and abs(xy[-1].y - pt.y) <= tol:
                continue
            xy.append(pt)
        while len(xy) > 1 and abs(xy[0].x - xy[-1].x) <= tol and abs(xy[0].y - xy[-1].y) <= tol:
            xy.pop()
        comps.append(tuple(xy))
    return tuple(comps)


def _overlaps_for_pair(points: PointSet, frame_i: FamilyFrame,
                       chain_i: Sequence[int], fam_o: int,
                       chain_o: Sequence[int], scale: float) -> list[OverlapRegion]:
    """All positive-area intersections between extremal wedges of family i
    and its opposite family, by a two-pointer merge along both chains."""
    pts = points.points
    sin_t = math.sin(frame_i.aperture)
    eps = EPS_DEGEN * max(scale, 1.0) ** 2

    m = len(chain_i) - 1
    mm = len(chain_o) - 1
    if m <= 0 or mm <= 0:
        return []
    # wedge j of family i: a1 = mu(c_j) (increasing), a2 = nu(c_{j+1}) (decreasing)
    # wedge l of opposite:  b1 = mu(d_l) (decreasing), b2 = nu(d_{l+1}) (increasing)
    a1 = [frame_i.mu(pts[chain_i[j]]) for j in range(m)]
    a2 = [frame_i.nu(pts[chain_i[j + 1]]) for j in range(m)]
    b1 = [frame_i.mu(pts[chain_o[l]]) for l in range(mm)]
    b2 = [frame_i.nu(pts[chain_o[l + 1]]) for l in range(mm)]

    from bisect import bisect_left, bisect_right

    neg_b1 = [-x for x in b1]  # increasing
    out: list[OverlapRegion] = []
    for j in range(m):
        lo = bisect_right(b2, a2[j])          # first l with b2[l] > a2[j]
        hi = bisect_left(neg_b1, -a1[j])      # count of l with b1[l] > a1[j]
        for l in range(lo, hi):
            d1 = b1[l] - a1[j]
            d2 = b2[l] - a2[j]
            if d1 > 0 and d2 > 0 and d1 * d2 > eps:
                area = d1 * d2 / sin_t
                corners = _parallelogram_corners(frame_i, a1[j], a2[j], b1[l], b2[l])
                out.append(OverlapRegion(
                    key=(chain_i[j], chain_i[j + 1], chain_o[l], chain_o[l + 1]),
                    family_pair=(frame_i.family, fam_o),
                    area=area, corners=corners))
    return out


def _parallelogram_corners(frame: FamilyFrame, a1: float, a2: float,
                           b1: float, b2: float):
    """Corners of {a1 <= <x,m1> <= b1, a2 <= <x,m2> <= b2} in xy space,
    ordered (apex_i, corner_qr, apex_opp, corner_sp)."""
    det = cross(frame.m1, frame.m2)

    def solve(c1: float, c2: float) -> Point2:
        x = (c1 * frame.m2[1] - c2 * frame.m1[1]) / det
        y = (frame.m1[0] * c2 - frame.m2[0] * c1) / det
        return Point2(x, y)

    return (solve(a1, a2), solve(b1, a2), solve(b1, b2), solve(a1, b2))


def hull_at(points: PointSet, dirs: DirectionSet, theta: float) -> HullBoundary:
    """Compute the restricted-orientation hull boundary at one rotation."""
    if len(points) == 0:
        raise EmptyInput("hull of an empty set")
    theta = norm_angle(theta)
    pts = points.points
    scale = points.diameter()
    n_fam = dirs.n_families()
    frames = [family_frame(dirs, i, theta) for i in range(n_fam)]
    chains = [family_maxima(points, fr) for fr in frames]

    staircases: list[Staircase] = []
    tri_sum = 0.0
    degen = EPS_DEGEN * max(scale, 1.0)
    for fr, chain in zip(frames, chains):
        apexes: list[Point2 | None] = []
        for j in range(len(chain) - 1):
            w, u = pts[chain[j]], pts[chain[j + 1]]
            apex, t, s = step_apex(fr, w, u)
            if t <= degen or s <= degen:
                apexes.append(None)
            else:
                apexes.append(apex)
                tri_sum += 0.5 * t * s * math.sin(fr.aperture)
        staircases.append(Staircase(fr.family, fr.aperture, tuple(chain), tuple(apexes)))

    walk = _walk_nodes(staircases, points)
    cycle = tuple(nd[1] for nd in walk if nd[0] == "v")
    if not cycle:
        cycle = (chains[0][0],)

    poly_area = 0.0
    if len(cycle) >= 3:
        for i in range(len(cycle)):
            poly_area += cross(pts[cycle[i]], pts[cycle[(i + 1) % len(cycle)]])
        poly_area *= 0.5

    overlaps: list[OverlapRegion] = []
    k = dirs.k
    for i in range(k):
        o = dirs.opposite(i)
        overlaps.extend(_overlaps_for_pair(
            points, frames[i], chains[i], o, chains[o], scale))

    area = poly_area - tri_sum + sum(ov.area for ov in overlaps)
    if abs(area) < EPS_DEGEN * max(scale, 1.0) ** 2:
        area = 0.0
    components = _components_from_walk(walk, overlaps, frames, points, scale)

    return HullBoundary(
        theta=theta, dirs=dirs, staircases=tuple(staircases), cycle=cycle,
        overlaps=tuple(overlaps), components=components, area=area,
        polygon_area=poly_area, triangle_area_sum=tri_sum, points=points)


def rch_at(points: PointSet, theta: float) -> HullBoundary:
    """Rectilinear convex hull at rotation theta (axes direction set)."""
    return hull_at(points, DirectionSet.axes(), theta)


def ohull_at(points: PointSet, dirs: DirectionSet) -> HullBoundary:
    """Restricted-orientation hull at the base orientation."""
    return hull_at(points, dirs, 0.0)


def boundary_metrics(h: HullBoundary) -> dict:
    """Area, component count, staircase count, and step total of a
    boundary.  Degenerate pieces (segments, isolated points) count as
    components with zero area."""
    return {
        "area": h.area,
        "components": len(h.components),
        "staircases": sum(1 for st in h.staircases if st.vertices),
        "steps": h.steps(),
    }
