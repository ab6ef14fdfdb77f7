"""Maximal P-free escaping wedges and per-point vertex intervals.

For every point p, an escaping wedge is a maximal open wedge with apex p,
aperture at least theta_min, containing no other input point.  Wedge
boundaries are the directions of the two blocking neighbors.  These gaps
drive everything downstream: a point is a staircase vertex of wedge
family i at rotation theta exactly when the family's direction span fits
inside one of its escaping wedges.

Two implementations:

* a per-point angular scan, O(n^2 log n), used at desk scale and for
  degenerate inputs;
* a filtered path for large general-position inputs: points that own a
  gap of length >= theta_min must have some fully empty aligned sector of
  width theta_min/2, so sector-maxima scans find all candidates, and the
  exact gap boundaries come from tangent sweeps (angular nearest neighbor
  on each side of a fixed direction via an insert-only convex hull).
"""

from __future__ import annotations

import math
from bisect import bisect_left, insort
from dataclasses import dataclass

import numpy as np

from .angles import TWO_PI, AngleInterval, norm_angle
from .errors import EmptyInput
from .geom import PointSet, unit


@dataclass(frozen=True)
class EscapingWedge:
    """Maximal P-free wedge with apex at a point of the set.

    Directions run ccw from start to end (end = start + aperture, not
    normalized).  blockers are the point indices lying exactly on the two
    bounding rays; both are None only for the full-circle wedge of an
    isolated point."""

    apex: int
    start: float
    end: float
    blockers: tuple[int | None, int | None]

    @property
    def aperture(self) -> float:
        return self.end - self.start

    def direction_interval(self) -> AngleInterval:
        if self.aperture >= TWO_PI:
            return AngleInterval.full_circle()
        return AngleInterval(norm_angle(self.start), norm_angle(self.end),
                             closed_start=False, closed_end=False)


@dataclass(frozen=True)
class EscapingTable:
    theta_min: float
    per_point: tuple[tuple[EscapingWedge, ...], ...]

    def wedge_count(self) -> int:
        return sum(len(w) for w in self.per_point)


def _scan_point(pts, i, theta_min) -> list[EscapingWedge]:
    p = pts[i]
    n = len(pts)
    if n == 1:
        return [EscapingWedge(i, 0.0, TWO_PI, (None, None))]
    dx = np.array([q.x - p.x for j, q in enumerate(pts) if j != i])
    dy = np.array([q.y - p.y for j, q in enumerate(pts) if j != i])
    idx = np.array([j for j in range(n) if j != i])
    dirs = np.mod(np.arctan2(dy, dx), TWO_PI)
    order = np.argsort(dirs, kind="stable")
    dirs = dirs[order]
    idx = idx[order]
    m = len(dirs)
    out: list[EscapingWedge] = []
    if m == 1:
        g1 = float(dirs[0])
        out.append(EscapingWedge(i, g1, g1 + TWO_PI, (int(idx[0]), int(idx[0]))))
        return out
    for a in range(m):
        b = (a + 1) % m
        gap = float(dirs[b] - dirs[a]) if b > a else float(dirs[b] + TWO_PI - dirs[a])
        if gap >= theta_min and gap > 0.0:
            g1 = float(dirs[a])
            out.append(EscapingWedge(i, g1, g1 + gap, (int(idx[a]), int(idx[b]))))
    return out


def escaping_table_scan(points: PointSet, theta_min: float) -> EscapingTable:
    """Reference path: full angular scan around every point."""
    pts = points.points
    if not pts:
        raise EmptyInput("empty point set")
    per = tuple(tuple(_scan_point(pts, i, theta_min)) for i in range(len(pts)))
    return EscapingTable(theta_min, per)


# --- filtered path ----------------------------------------------------------

class _UpperHull:
    """Insert-only upper convex hull keyed by x; supports the tangent
    query 'vertex maximizing dir(v - p)' for p strictly above all
    inserted points (all directions then lie in (-pi, 0))."""

    __slots__ = ("xs", "ys", "ids")

    def __init__(self):
        self.xs: list[float] = []
        self.ys: list[float] = []
        self.ids: list[int] = []

    def insert(self, x: float, y: float, pid: int) -> None:
        xs, ys, ids = self.xs, self.ys, self.ids
        pos = bisect_left(xs, x)
        if pos < len(xs) and xs[pos] == x:
            if ys[pos] >= y:
                return
            xs.pop(pos)
            ys.pop(pos)
            ids.pop(pos)
        if 0 < pos < len(xs):
            ax, ay = xs[pos - 1], ys[pos - 1]
            bx, by = xs[pos], ys[pos]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) <= 0.0:
                return  # on or below the covering hull edge
        xs.insert(pos, x)
        ys.insert(pos, y)
        ids.insert(pos, pid)
        # pop left neighbors that stop making right turns
        while pos >= 2:
            ax, ay = xs[pos - 2], ys[pos - 2]
            bx, by = xs[pos - 1], ys[pos - 1]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) >= 0.0:
                xs.pop(pos - 1)
                ys.pop(pos - 1)
                ids.pop(pos - 1)
                pos -= 1
            else:
                break
        # pop right neighbors likewise
        while pos + 2 < len(xs):
            ax, ay = xs[pos + 1], ys[pos + 1]
            bx, by = xs[pos + 2], ys[pos + 2]
            if (ax - x) * (by - y) - (ay - y) * (bx - x) >= 0.0:
                xs.pop(pos + 1)
                ys.pop(pos + 1)
                ids.pop(pos + 1)
            else:
                break

def _angular_closest(us: np.ndarray, vs: np.ndarray, queries: list[int]) -> dict[int, int]:
    """For each query point p, the index q minimizing the clockwise angular
    distance from the +u axis to dir(q - p), where (us, vs) are frame
    coordinates.

    Sweep points by v ascending.  Whenever the open lower halfplane of p
    is nonempty the minimizer lies in it (directions there measure
    clockwise distances below pi, everything else above), and it is a
    vertex of the halfplane's convex hull; both hull chains are scanned
    because the extreme-direction vertex may sit on either one.
    """
    n = len(us)
    order = sorted(range(n), key=lambda i: (vs[i], us[i]))
    qset = set(queries)
    upper = _UpperHull()
    lower = _UpperHull()  # fed with flipped v: the lower chain
    out: dict[int, int] = {}
    pending_fallback: list[int] = []
    for i in order:
        if i in qset:
            px, py = us[i], vs[i]
            best = None
            best_key = None
            for chain, flip in ((upper, 1.0), (lower, -1.0)):
                for cx, cy, cid in zip(chain.xs, chain.ys, chain.ids):
                    d = math.atan2(flip * cy - py, cx - px)
                    if best_key is None or d > best_key:
                        best_key = d
                        best = cid
            if best is None:
                pending_fallback.append(i)
            else:
                out[i] = best
        upper.insert(us[i], vs[i], i)
        lower.insert(us[i], -vs[i], i)
    for i in pending_fallback:
        # lower halfplane empty: direct scan over everything
        best = None
        best_delta = math.inf
        for j in range(n):
            if j == i:
                continue
            d = math.atan2(vs[j] - vs[i], us[j] - us[i])
            delta = (-d) % TWO_PI
            if delta == 0.0:
                delta = TWO_PI
            if delta < best_delta:
                best_delta = delta
                best = j
        if best is not None:
            out[i] = best
    return out


def _strict_sector_maxima(xs: np.ndarray, ys: np.ndarray,
                          lo: float, hi: float) -> np.ndarray:
    """Indices whose open wedge spanning directions (lo, hi) is point-free;
    over-inclusive on exact coordinate ties (safe for a candidate filter)."""
    m1 = unit(lo + math.pi / 2.0)
    m2 = unit(hi - math.pi / 2.0)
    mu = xs * m1[0] + ys * m1[1]
    nu = xs * m2[0] + ys * m2[1]
    order = np.lexsort((mu, -nu))
    nu_s = nu[order]
    mu_s = mu[order]
    n = len(order)
    # prefix max of mu over strictly larger nu (block-aware)
    new_block = np.empty(n, dtype=bool)
    new_block[0] = True
    new_block[1:] = nu_s[1:] < nu_s[:-1]
    block_id = np.cumsum(new_block) - 1
    run_max = np.maximum.accumulate(mu_s)
    n_blocks = block_id[-1] + 1
    block_end_max = np.full(n_blocks, -np.inf)
    np.maximum.at(block_end_max, block_id, mu_s)
    block_end_max = np.maximum.accumulate(block_end_max)
    strict_prev = np.full(n, -np.inf)
    has_prev = block_id > 0
    strict_prev[has_prev] = block_end_max[block_id[has_prev] - 1]
    keep = mu_s >= strict_prev
    return order[keep]


def _escaping_table_filtered(points: PointSet, theta_min: float) -> EscapingTable:
    pts = points.points
    n = len(pts)
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    m = int(math.ceil(4.0 * math.pi / theta_min))
    w = TWO_PI / m

    free_sectors: dict[int, set[int]] = {}
    for j in range(m):
        for i in _strict_sector_maxima(xs, ys, j * w, (j + 1) * w):
            free_sectors.setdefault(int(i), set()).add(j)

    # group free sectors into circular runs; queries per boundary direction
    cw_queries: dict[int, list[int]] = {}
    ccw_queries: dict[int, list[int]] = {}
    full_scan: list[int] = []
    runs: dict[int, list[tuple[int, int]]] = {}
    for i, sect in free_sectors.items():
        if len(sect) == m:
            full_scan.append(i)
            continue
        rr: list[tuple[int, int]] = []
        for j in sorted(sect):
            if (j - 1) % m in sect:
                continue
            end = j
            while (end + 1) % m in sect:
                end = (end + 1) % m
            rr.append((j, end))
        runs[i] = rr
        for j0, j1 in rr:
            cw_queries.setdefault(j0, []).append(i)
            ccw_queries.setdefault((j1 + 1) % m, []).append(i)

    cw_ans: dict[tuple[int, int], int] = {}
    ccw_ans: dict[tuple[int, int], int] = {}
    for j, qs in cw_queries.items():
        a = j * w
        e1, e2 = unit(a), unit(a + math.pi / 2.0)
        us = xs * e1[0] + ys * e1[1]
        vs = xs * e2[0] + ys * e2[1]
        for i, b in _angular_closest(us, vs, qs).items():
            cw_ans[(i, j)] = b
    for j, qs in ccw_queries.items():
        a = j * w
        e1, e2 = unit(a), unit(a + math.pi / 2.0)
        us = xs * e1[0] + ys * e1[1]
        vs = -(xs * e2[0] + ys * e2[1])  # reflect: ccw becomes cw
        for i, b in _angular_closest(us, vs, qs).items():
            ccw_ans[(i, j)] = b

    full_scan_set = set(full_scan)
    per: list[tuple[EscapingWedge, ...]] = []
    for i in range(n):
        p = pts[i]
        wedges: list[EscapingWedge] = []
        if i in runs:
            seen = set()
            for j0, j1 in runs[i]:
                b1 = cw_ans.get((i, j0))
                b2 = ccw_ans.get((i, (j1 + 1) % m))
                if b1 is None or b2 is None:
                    continue
                if (b1, b2) in seen:
                    continue
                seen.add((b1, b2))
                g1 = norm_angle(math.atan2(pts[b1].y - p.y, pts[b1].x - p.x))
                g2 = norm_angle(math.atan2(pts[b2].y - p.y, pts[b2].x - p.x))
                gap = norm_angle(g2 - g1)
                if gap == 0.0 and b1 == b2:
                    gap = TWO_PI
                if gap >= theta_min:
                    wedges.append(EscapingWedge(i, g1, g1 + gap, (b1, b2)))
            wedges.sort(key=lambda wdg: wdg.start)
        elif i in full_scan_set:
            wedges = _scan_point(pts, i, theta_min)
        per.append(tuple(wedges))
    return EscapingTable(theta_min, tuple(per))


_FILTER_THRESHOLD = 600


def escaping_table(points: PointSet, theta_min: float,
                   method: str = "auto") -> EscapingTable:
    """Maximal P-free escaping wedges of aperture >= theta_min for every
    point.

    method 'scan' is the per-point angular sweep; 'filtered' restricts the
    expensive work to points owning an empty aligned sector (exact for
    inputs in general position); 'auto' picks 'filtered' only for large,
    non-degenerate sets.
    """
    if not (0.0 < theta_min <= TWO_PI):
        raise ValueError("theta_min must lie in (0, 2*pi]")
    if len(points) == 0:
        raise EmptyInput("empty point set")
    if method == "auto":
        degenerate = points.degeneracy.any_flag()
        method = ("filtered"
                  if len(points) > _FILTER_THRESHOLD and not degenerate
                  else "scan")
    if method == "scan":
        return escaping_table_scan(points, theta_min)
    if method == "filtered":
        return _escaping_table_filtered(points, theta_min)
    raise ValueError(f"unknown method {method!r}")


def vertex_interval_for_quadrant(table: EscapingTable, p: int,
                                 wedge_class: AngleInterval) -> list[AngleInterval]:
    """Rotation angles at which the rotating wedge family whose base span
    is wedge_class fits inside one of p's escaping wedges, i.e. p is a
    staircase vertex for that family.  Interval endpoints are the in/out
    event angles; intervals are reported half-open [in, out)."""
    if wedge_class.full:
        aperture = TWO_PI
        lo = 0.0
    else:
        aperture = wedge_class.length()
        lo = wedge_class.start
    out: list[AngleInterval] = []
    for wdg in table.per_point[p]:
        if wdg.blockers == (None, None):  # isolated point: fits always
            out.append(AngleInterval.full_circle())
            continue
        slack = wdg.aperture - aperture
        if slack <= 0.0:
            continue  # measure-zero fits are dropped (deterministic choice)
        start = norm_angle(wdg.start - lo)
        out.append(AngleInterval(start, norm_angle(start + slack)))
    return out

