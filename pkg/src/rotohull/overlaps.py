"""Overlap/release events via the chain of arcs.

For one opposite family pair {i, i+k} the apexes of extremal wedges trace
a chain of circular arcs as the orientation rotates.  Each arc belongs to
a supporting pair (w, u) and carries a tracing interval of rotation
angles; arcs are grouped into links (chain pieces between two touches of
input points).  Two arcs admit an overlapping wedge configuration exactly
when the rotation windows

    (theta1, theta2)  [both overlap side lengths positive]
    T_A               [A's pair extremal, as family i]
    T_B + pi          [B's pair extremal, as family i+k]

intersect; window endpoints are the overlap/release events.

Only configurations with four distinct supporting points generate events
here: wedge pairs sharing a support are alive exactly while both pairs
are chain-adjacent, so their churn rides on vertex events and is handled
by the merged area sweep.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

from .angles import EPS_THETA, TWO_PI, AngleInterval, circ_delta, interval_intersection, norm_angle
from .errors import InconsistentEvent, PreconditionTheta
from .events import EventSchedule, VertexCursor, vertex_event_schedule
from .fixed_hull import HullBoundary, OverlapRegion, family_frame, step_apex
from .geom import DirectionSet, Point2, PointSet, convex_hull, cross, dot, unit

_KIND_RANK = {"out": 0, "release": 1, "in": 2, "overlap": 3}


@dataclass(frozen=True)
class Arc:
    """One arc of the chain: apex locus of the extremal wedge supported by
    an ordered pair, over its tracing interval (canonical rotation of the
    lower family of the pair).  Geometry: circle (center, radius); the
    apex position angle advances ccw at twice the rotation rate."""

    pair: tuple[int, int]
    t_start: float          # tracing interval [t_start, t_start + t_span)
    t_span: float
    center: Point2
    radius: float
    psi_start: float        # apex position angle at t_start
    link_id: int = -1
    color: str = ""

    def tracing_interval(self) -> AngleInterval:
        if self.t_span >= TWO_PI:
            return AngleInterval.full_circle()
        return AngleInterval(norm_angle(self.t_start),
                             norm_angle(self.t_start + self.t_span))

    def psi_span(self) -> float:
        return min(2.0 * self.t_span, TWO_PI)

    def apex_at(self, theta: float) -> Point2:
        psi = self.psi_start + 2.0 * circ_delta(self.t_start, theta)
        return Point2(self.center.x + self.radius * math.cos(psi),
                      self.center.y + self.radius * math.sin(psi))


@dataclass(frozen=True)
class Link:
    """Maximal run of chain-connected arcs between two P-touches.  The
    endpoints are input-point indices (-1 for a closed loop без touches);
    the link is contained in the disk with the endpoints as diameter."""

    link_id: int
    family: int
    endpoints: tuple[int, int]
    arcs: tuple[Arc, ...]
    color: str

    def disk(self, points: PointSet) -> tuple[float, float, float]:
        if self.endpoints[0] >= 0 and self.endpoints[1] >= 0:
            p = points[self.endpoints[0]]
            q = points[self.endpoints[1]]
            return (0.5 * (p.x + q.x), 0.5 * (p.y + q.y),
                    0.5 * math.hypot(p.x - q.x, p.y - q.y))
        cx = sum(a.center.x for a in self.arcs) / len(self.arcs)
        cy = sum(a.center.y for a in self.arcs) / len(self.arcs)
        r = max(math.hypot(a.center.x - cx, a.center.y - cy) + a.radius
                for a in self.arcs)
        return (cx, cy, r)


@dataclass(frozen=True)
class OverlapEvent:
    theta: float
    kind: str  # 'overlap' | 'release'
    key: tuple[int, int, int, int]
    family_pair: tuple[int, int]

    def sort_key(self):
        return (self.theta, _KIND_RANK[self.kind], self.family_pair, self.key)


# --- arc construction --------------------------------------------------------


def _arc_geometry(points: PointSet, dirs: DirectionSet, family: int,
                  pair: tuple[int, int], t_start: float, t_span: float):
    """Circle and starting position angle of one arc."""
    w, u = points[pair[0]], points[pair[1]]
    aperture = dirs.apertures[family]
    radius = 0.5 * math.hypot(w.x - u.x, w.y - u.y) / math.sin(aperture)
    t_mid = t_start + 0.5 * min(t_span, TWO_PI)
    frame_mid = family_frame(dirs, family, t_mid)
    apex_mid, _, _ = step_apex(frame_mid, w, u)
    mx, my = 0.5 * (w.x + u.x), 0.5 * (w.y + u.y)
    half = 0.5 * math.hypot(w.x - u.x, w.y - u.y)
    h2 = radius * radius - half * half
    h = math.sqrt(h2) if h2 > 0 else 0.0
    nx, ny = -(u.y - w.y), (u.x - w.x)
    nn = math.hypot(nx, ny)
    if nn > 0:
        nx, ny = nx / nn, ny / nn
    c1 = Point2(mx + h * nx, my + h * ny)
    c2 = Point2(mx - h * nx, my - h * ny)
    d1 = abs(math.hypot(apex_mid.x - c1.x, apex_mid.y - c1.y) - radius)
    d2 = abs(math.hypot(apex_mid.x - c2.x, apex_mid.y - c2.y) - radius)
    center = c1 if d1 <= d2 else c2
    frame0 = family_frame(dirs, family, t_start)
    apex0, _, _ = step_apex(frame0, w, u)
    psi_start = math.atan2(apex0.y - center.y, apex0.x - center.x)
    return center, radius, psi_start


def build_arc_chain(points: PointSet, dirs: DirectionSet,
                    family_pair: tuple[int, int],
                    schedule: EventSchedule | None = None) -> list[Link]:
    """Chain of arcs for one opposite family pair, grouped into links.

    The chain is parameterized by the rotation of the lower family of the
    pair (the opposite family traces the same arcs half a turn later).
    Links are colored red when the hull edge their wedges stab lies on the
    upper chain of the convex hull, blue otherwise.
    """
    i = min(family_pair)
    o = max(family_pair)
    if dirs.opposite(i) != o:
        raise ValueError("family_pair must be opposite families")
    if schedule is None:
        schedule = vertex_event_schedule(points, dirs)
    cursor = VertexCursor(points, dirs, schedule)

    alive: dict[tuple[int, int], dict] = {}

    def open_arc(pair, theta, from_p: bool):
        alive[pair] = {"birth": theta, "start_at_p": from_p, "prev": None}

    # Register initial pairs (birth unknown until the replay closes them).
    chain0 = cursor.staircase(i)
    initial_pairs = list(zip(chain0, chain0[1:]))
    records: list[dict] = []
    for pair in initial_pairs:
        alive[pair] = {"birth": None, "start_at_p": False, "prev": None}

    def close_arc(pair, theta, end_at_p: bool, succ_pair):
        rec = alive.pop(pair)
        rec.update(pair=pair, death=theta, end_at_p=end_at_p, succ=succ_pair)
        records.append(rec)

    while not cursor.exhausted():
        tr = cursor.advance()
        e = tr.event
        if e.family != i:
            continue
        if e.kind == "in":
            # dying (w,u) continues into (p,u); (w,p) starts at point p
            w, u = tr.prev_neighbor, tr.next_neighbor
            p = e.point
            if w is not None and u is not None:
                close_arc((w, u), e.theta, False, (p, u))
            if w is not None:
                open_arc((w, p), e.theta, True)
            if u is not None:
                open_arc((p, u), e.theta, False)
                if w is not None:
                    alive[(p, u)]["prev"] = (w, u)
        else:
            w, u = tr.prev_neighbor, tr.next_neighbor
            p = e.point
            if u is not None:
                close_arc((p, u), e.theta, True, None)
            if w is not None:
                close_arc((w, p), e.theta, False, (w, u) if u is not None else None)
            if w is not None and u is not None:
                open_arc((w, u), e.theta, False)
                alive[(w, u)]["prev"] = (w, p)

    # Stitch arcs still alive at the end of the cycle with the unknown
    # births of the initial pairs (they are the same arcs across the seam).
    leftover_records: list[dict] = []
    for pair, rec in alive.items():
        if rec["birth"] is None:
            # never touched during the whole rotation: full-circle arc
            rec.update(pair=pair, birth=0.0, death=TWO_PI, end_at_p=False,
                       succ=None, full=True)
            leftover_records.append(rec)
        else:
            match = None
            for r in records:
                if r["pair"] == pair and r.get("birth") is None:
                    match = r
                    break
            if match is None:
                rec.update(pair=pair, death=rec["birth"], end_at_p=False, succ=None)
                leftover_records.append(rec)
            else:
                match["birth"] = rec["birth"]
                match["start_at_p"] = rec["start_at_p"]
                match["prev"] = rec["prev"]
    records.extend(leftover_records)

    # Build Arc objects, then group into links by following successors.
    arcs: dict[int, Arc] = {}
    key_of: dict[tuple, int] = {}
    for idx, rec in enumerate(records):
        if rec.get("full"):
            span = TWO_PI
            start = 0.0
        else:
            start = rec["birth"]
            span = circ_delta(rec["birth"], rec["death"])
            if span <= 0.0:
                span = TWO_PI if rec["birth"] == rec["death"] else span
        center, radius, psi0 = _arc_geometry(points, dirs, i, rec["pair"], start, span)
        arcs[idx] = Arc(rec["pair"], start, span, center, radius, psi0)
        key_of[(rec["pair"], rec["birth"])] = idx

    succ_idx: dict[int, int] = {}
    has_pred: set[int] = set()
    for idx, rec in enumerate(records):
        succ = rec.get("succ")
        if succ is not None:
            j = key_of.get((succ, rec["death"]))
            if j is not None:
                succ_idx[idx] = j
                has_pred.add(j)

    hull = convex_hull(points)
    links: list[Link] = []
    visited: set[int] = set()
    order = sorted(arcs.keys(), key=lambda t: (arcs[t].t_start, arcs[t].pair))
    for start_idx in order:
        if start_idx in visited or start_idx in has_pred:
            continue
        run = [start_idx]
        visited.add(start_idx)
        cur = start_idx
        while cur in succ_idx and succ_idx[cur] not in visited:
            cur = succ_idx[cur]
            run.append(cur)
            visited.add(cur)
        links.append(_make_link(points, dirs, i, hull, len(links),
                                [records[t] for t in run], [arcs[t] for t in run]))
    # closed loops (full-circle arcs or cycles with no P-touch)
    for idx in order:
        if idx not in visited:
            run = [idx]
            visited.add(idx)
            cur = idx
            while cur in succ_idx and succ_idx[cur] not in visited:
                cur = succ_idx[cur]
                run.append(cur)
                visited.add(cur)
            links.append(_make_link(points, dirs, i, hull, len(links),
                                    [records[t] for t in run], [arcs[t] for t in run]))
    return links


def _upper_chain_edge(hull, edge_dir: float) -> bool:
    d = norm_angle(edge_dir)
    return math.pi / 2 <= d < 3 * math.pi / 2


def _make_link(points, dirs, family, hull, link_id, recs, arcs_run) -> Link:
    first, last = recs[0], recs[-1]
    start_pt = first["pair"][1] if first.get("start_at_p") else -1
    end_pt = last["pair"][0] if last.get("end_at_p") else -1
    # color: direction of the hull edge stabbed by the wedge at the middle
    # of the run (the chord direction of the supporting pair is a proxy
    # aligned with the stabbed edge's sector)
    mid_arc = arcs_run[len(arcs_run) // 2]
    w = points[mid_arc.pair[0]]
    u = points[mid_arc.pair[1]]
    color = "red" if _upper_chain_edge(hull, math.atan2(u.y - w.y, u.x - w.x)) else "blue"
    arcs_colored = tuple(
        Arc(a.pair, a.t_start, a.t_span, a.center, a.radius, a.psi_start,
            link_id, color) for a in arcs_run)
    return Link(link_id, family, (start_pt, end_pt), arcs_colored, color)


# --- overlap windows and events ----------------------------------------------


def _half_window(start: float) -> AngleInterval:
    """Open half-circle window (start, start + pi)."""
    return AngleInterval(norm_angle(start), norm_angle(start + math.pi),
                         closed_start=False, closed_end=False)


def delta_windows(points: PointSet, dirs: DirectionSet, family_i: int,
                  pair_a: tuple[int, int], pair_b: tuple[int, int]) -> list[AngleInterval]:
    """Maximum overlapping interval(s) of two opposite wedges: rotations
    where both side lengths of the wedge intersection are positive.  The
    window is bounded by the orientations at which a bounding ray becomes
    parallel to the segment joining first supports (p,r) and to the one
    joining second supports (q,s)."""
    p, q = pair_a
    r, s = pair_b
    pr = (points[r].x - points[p].x, points[r].y - points[p].y)
    qs = (points[s].x - points[q].x, points[s].y - points[q].y)
    if (pr[0] == 0 and pr[1] == 0) or (qs[0] == 0 and qs[1] == 0):
        return []
    rho = dirs.ray_angles[(family_i + 1) % dirs.n_families()]
    aperture = dirs.apertures[family_i]
    w2 = _half_window(math.atan2(pr[1], pr[0]) - rho - math.pi)
    w1 = _half_window(math.atan2(qs[1], qs[0]) - rho - aperture)
    return interval_intersection(w1, w2)


def _intersect_windows(pieces: list[AngleInterval],
                       other: AngleInterval) -> list[AngleInterval]:
    out: list[AngleInterval] = []
    for p in pieces:
        out.extend(interval_intersection(p, other))
    return out


def _grid_candidate_link_pairs(points: PointSet, links: Sequence[Link]):
    """Broad-phase: unordered link pairs whose link disks intersect,
    via a uniform grid over disk bounding boxes."""
    disks = [lk.disk(points) for lk in links]
    if not disks:
        return []
    sizes = sorted(2 * r for _, _, r in disks)
    cell = max(sizes[len(sizes) // 2], 1e-9)
    grid: dict[tuple[int, int], list[int]] = {}
    for idx, (cx, cy, r) in enumerate(disks):
        x0 = int(math.floor((cx - r) / cell))
        x1 = int(math.floor((cx + r) / cell))
        y0 = int(math.floor((cy - r) / cell))
        y1 = int(math.floor((cy + r) / cell))
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                grid.setdefault((gx, gy), []).append(idx)
    seen: set[tuple[int, int]] = set()
    out: list[tuple[int, int]] = []
    for bucket in grid.values():
        for ii in range(len(bucket)):
            for jj in range(ii, len(bucket)):
                a, b = bucket[ii], bucket[jj]
                if a > b:
                    a, b = b, a
                if (a, b) in seen:
                    continue
                seen.add((a, b))
                ca, cb = disks[a], disks[b]
                if math.hypot(ca[0] - cb[0], ca[1] - cb[1]) <= ca[2] + cb[2] + 1e-12:
                    out.append((a, b))
    return out


def _tau_compatible_arc_pairs(l_a: Link, l_b: Link):
    """Ordered arc pairs (A in l_a, B in l_b) whose tracing windows admit
    simultaneous opposite tracing: T_A intersects T_B + pi."""
    shifted = []
    for b in l_b.arcs:
        shifted.append((b, AngleInterval.full_circle() if b.t_span >= TWO_PI
                        else AngleInterval(norm_angle(b.t_start + math.pi),
                                           norm_angle(b.t_start + b.t_span + math.pi))))
    for a in l_a.arcs:
        ta = a.tracing_interval()
        for b, tb_shift in shifted:
            if a.pair == b.pair and l_a.link_id == l_b.link_id and a.t_start == b.t_start:
                continue
            if interval_intersection(ta, tb_shift):
                yield a, b, ta, tb_shift


def overlap_release_events(points: PointSet, dirs: DirectionSet,
                           schedule: EventSchedule | None = None) -> list[OverlapEvent]:
    """Circularly sorted overlap/release events across all opposite family
    pairs, for direction sets with every aperture >= pi/2.

    Both role assignments of every candidate arc pair are examined, so the
    half-turn recurrences of each geometric configuration all appear.
    Wedge pairs sharing a supporting point are excluded (their lifetime
    coincides with chain adjacency, i.e. vertex events)."""
    if dirs.theta_min < math.pi / 2 - EPS_THETA:
        raise PreconditionTheta(
            f"overlap events need min aperture >= pi/2, got {dirs.theta_min}")
    if schedule is None:
        schedule = vertex_event_schedule(points, dirs)
    events: list[OverlapEvent] = []
    for i in range(dirs.k):
        o = dirs.opposite(i)
        links = build_arc_chain(points, dirs, (i, o), schedule)
        pair_ids = _grid_candidate_link_pairs(points, links)
        for a_id, b_id in pair_ids:
            for (la, lb) in (((links[a_id], links[b_id]),)
                             if a_id == b_id else
                             ((links[a_id], links[b_id]),
                              (links[b_id], links[a_id]))):
                for a, b, ta, tb_shift in _tau_compatible_arc_pairs(la, lb):
                    pa, pb = a.pair, b.pair
                    if len({pa[0], pa[1], pb[0], pb[1]}) < 4:
                        continue
                    windows = delta_windows(points, dirs, i, pa, pb)
                    if not windows:
                        continue
                    pieces = _intersect_windows(windows, ta)
                    pieces = _intersect_windows(pieces, tb_shift)
                    for piece in pieces:
                        span = piece.length()
                        if span <= 2 * EPS_THETA:
                            continue
                        key = (pa[0], pa[1], pb[0], pb[1])
                        events.append(OverlapEvent(piece.start, "overlap", key, (i, o)))
                        events.append(OverlapEvent(norm_angle(piece.start + span),
                                                   "release", key, (i, o)))
    events.sort(key=OverlapEvent.sort_key)
    return events


# --- geometric arc intersections ---------------------------------------------

DISC_EPS = 1e-10


def _on_arc(arc: Arc, pt: Point2, endpoint_tol: float = 1e-9) -> bool:
    psi = math.atan2(pt.y - arc.center.y, pt.x - arc.center.x)
    span = arc.psi_span()
    if span >= TWO_PI - endpoint_tol:
        return True
    d = circ_delta(arc.psi_start, psi)
    return endpoint_tol < d < span - endpoint_tol


def arc_intersections(a: Arc, b: Arc) -> list[Point2]:
    """Transversal intersection points of two arcs.  Tangent, coincident
    and endpoint contacts are discarded (they cannot bound positive-area
    overlaps)."""
    dx = b.center.x - a.center.x
    dy = b.center.y - a.center.y
    d = math.hypot(dx, dy)
    scale = max(a.radius, b.radius, 1e-30)
    if d <= DISC_EPS * scale:
        return []  # concentric or coincident circles
    if d >= a.radius + b.radius - DISC_EPS * scale:
        return []  # separate or externally tangent
    if d <= abs(a.radius - b.radius) + DISC_EPS * scale:
        return []  # nested or internally tangent
    alpha = (a.radius ** 2 - b.radius ** 2 + d * d) / (2 * d)
    h2 = a.radius ** 2 - alpha ** 2
    if h2 <= (DISC_EPS * scale) ** 2:
        return []
    h = math.sqrt(h2)
    mx = a.center.x + alpha * dx / d
    my = a.center.y + alpha * dy / d
    out = []
    for sgn in (1.0, -1.0):
        pt = Point2(mx + sgn * h * (-dy) / d, my + sgn * h * dx / d)
        if _on_arc(a, pt) and _on_arc(b, pt):
            out.append(pt)
    return out


def bichromatic_link_intersections(points: PointSet, links: Sequence[Link]):
    """Red-blue link pairs admitting opposite tracing whose arcs
    geometrically intersect, with the intersection points.

    Monochromatic contacts are discarded (they never correspond to
    overlapping opposite wedges), as are pairs whose tracing windows can
    never be simultaneously opposite."""
    out = []
    pair_ids = _grid_candidate_link_pairs(points, links)
    for a_id, b_id in pair_ids:
        la, lb = links[a_id], links[b_id]
        if la.color == lb.color:
            continue
        pts: list[Point2] = []
        for a, b, _, _ in _tau_compatible_arc_pairs(la, lb):
            pts.extend(arc_intersections(a, b))
        if pts:
            out.append((la, lb, pts))
    return out


# --- standalone overlap sweep --------------------------------------------------


class OverlapCursor:
    """Single-owner cursor maintaining the map of overlap regions keyed by
    their supporting tuples, over the circular overlap/release schedule.

    This cursor tracks the four-distinct-support overlaps the event list
    describes; wedge pairs sharing supports live exactly as long as their
    chain adjacencies and are maintained by the merged area sweep."""

    def __init__(self, events: Sequence[OverlapEvent], initial: HullBoundary):
        self.events = tuple(sorted(events, key=OverlapEvent.sort_key))
        theta0 = initial.theta
        self.active: dict[tuple[int, int, int, int], tuple[int, int]] = {}
        for ov in initial.overlaps:
            if len(set(ov.key)) == 4:
                self.active[ov.key] = ov.family_pair
        # rotate the schedule so it starts just after theta0
        order = sorted(range(len(self.events)),
                       key=lambda j: (circ_delta(theta0, self.events[j].theta),
                                      _KIND_RANK[self.events[j].kind]))
        self._order = order
        self.pos = 0
        self._initial = dict(self.active)

    def exhausted(self) -> bool:
        return self.pos >= len(self._order)

    def advance(self) -> OverlapEvent:
        from .errors import CursorExhausted
        if self.exhausted():
            raise CursorExhausted("full overlap cycle done")
        e = self.events[self._order[self.pos]]
        if e.kind == "overlap":
            self.active[e.key] = e.family_pair
        else:
            if e.key not in self.active:
                raise InconsistentEvent(f"release for absent key {e.key}")
            del self.active[e.key]
        self.pos += 1
        return e

    def matches_initial(self) -> bool:
        return self.active == self._initial

    def reset(self) -> None:
        self.active = dict(self._initial)
        self.pos = 0


def sweep_overlaps(events: Sequence[OverlapEvent],
                   initial: HullBoundary) -> OverlapCursor:
    return OverlapCursor(events, initial)
