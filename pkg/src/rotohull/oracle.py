"""Brute-force reference implementations for acceptance and property tests.

Everything here is deliberately naive: quadratic dominance scans, per-point
angular gap scans, dense theta grids, and polygon boolean operations via
shapely.  This module depends only on the core geometry module, never on
the optimized staircase or event code, so cross-checks stay meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .angles import TWO_PI, norm_angle
from .errors import EmptyInput
from .geom import (DirectionSet, Point2, PointSet, convex_hull, cross, dot,
                   orient, unit)


@dataclass(frozen=True)
class GridSpec:
    """Resolution knobs for grid-based oracles."""

    theta_resolution: float = 1e-3
    spatial_resolution: int = 200
    refine_tol: float = 1e-10

    def __post_init__(self):
        if self.theta_resolution <= 0 or self.spatial_resolution <= 0:
            raise ValueError("grid resolutions must be positive")


def gift_wrap_hull(points: PointSet) -> list[Point2]:
    """Jarvis march; O(n h).  Independent check for the monotone chain."""
    pts = sorted(set(points.points))
    if not pts:
        raise EmptyInput("empty point set")
    if len(pts) <= 2:
        return list(pts)
    start = min(pts)
    hull = [start]
    current = start
    while True:
        candidate = None
        for q in pts:
            if q == current:
                continue
            if candidate is None:
                candidate = q
                continue
            turn = orient(current, candidate, q)
            if turn < 0:
                candidate = q
            elif turn == 0:
                # keep the farther point so collinear boundary points drop out
                if (abs(q.x - current.x) + abs(q.y - current.y)
                        > abs(candidate.x - current.x) + abs(candidate.y - current.y)):
                    candidate = q
        if candidate == start:
            break
        hull.append(candidate)
        current = candidate
        if len(hull) > len(pts):  # degenerate safety
            break
    return hull


def escaping_oracle(points: PointSet, theta_min: float):
    """Per point, the maximal P-free wedges of aperture >= theta_min, by a
    full angular scan around the point.

    Returns a list (indexed like the point set) of wedge records
    (start_dir, end_dir, blocker_start, blocker_end); an isolated point
    yields the single record (0, 2*pi, None, None).
    """
    pts = points.points
    n = len(pts)
    table = []
    for i, p in enumerate(pts):
        dirs = sorted(
            (norm_angle(math.atan2(q.y - p.y, q.x - p.x)), j)
            for j, q in enumerate(pts) if j != i)
        wedges = []
        if not dirs:
            wedges.append((0.0, TWO_PI, None, None))
        else:
            m = len(dirs)
            for a in range(m):
                g1, b1 = dirs[a]
                g2, b2 = dirs[(a + 1) % m]
                gap = norm_angle(g2 - g1) if m > 1 else TWO_PI
                if m == 1:
                    gap = TWO_PI
                    g2 = g1 + TWO_PI
                    b2 = b1
                if gap >= theta_min:
                    wedges.append((g1, g1 + gap, b1, b2))
                if m == 1:
                    break
        table.append(wedges)
    return table


def membership_oracle(points: PointSet, dirs: DirectionSet, theta: float,
                      x: Sequence[float]) -> bool:
    """True when x is inside the hull: no wedge family admits a P-free
    open wedge containing x.  The candidate wedge is anchored with its
    apex retracted from x along the family bisector by a small fraction
    of the point-set diameter (cone nesting makes this exact away from
    the boundary)."""
    eps = 1e-9 * max(points.diameter(), 1.0)
    px, py = float(x[0]), float(x[1])
    for i in range(dirs.n_families()):
        phi_lo, phi_hi = dirs.family_bounds(i, theta)
        mid = unit(0.5 * (phi_lo + phi_hi))
        ax, ay = px - eps * mid[0], py - eps * mid[1]
        m1 = unit(phi_lo + math.pi / 2.0)
        m2 = unit(phi_hi - math.pi / 2.0)
        free = True
        for q in points.points:
            dx, dy = q.x - ax, q.y - ay
            if dx * m1[0] + dy * m1[1] > 0.0 and dx * m2[0] + dy * m2[1] > 0.0:
                free = False
                break
        if free:
            return False
    return True


@dataclass(frozen=True)
class OracleHull:
    """Reference boundary at a fixed rotation."""

    theta: float
    chains: tuple[tuple[int, ...], ...]        # per family, staircase order
    apexes: tuple[tuple[Point2 | None, ...], ...]
    cycle: tuple[int, ...]
    area: float

    def vertex_set(self) -> frozenset[int]:
        return frozenset(i for ch in self.chains for i in ch)


def _brute_maxima(xs, ys, mu, nu, lexkeys) -> list[int]:
    """Quadratic dominance scan with lexicographic tie-breaking."""
    n = len(mu)
    out = []
    for i in range(n):
        dominated = False
        for j in range(n):
            if i == j:
                continue
            g1 = mu[j] > mu[i] or (mu[j] == mu[i] and lexkeys[j] > lexkeys[i])
            g2 = nu[j] > nu[i] or (nu[j] == nu[i] and lexkeys[j] > lexkeys[i])
            if g1 and g2:
                dominated = True
                break
        if not dominated:
            out.append(i)
    out.sort(key=lambda i: (-nu[i], mu[i]))
    return out


def hull_at_oracle(points: PointSet, dirs: DirectionSet, theta: float) -> OracleHull:
    """Boundary by pairwise dominance scans per family plus direct
    ray-intersection apexes; area by the polygon-minus-triangles-plus-
    overlaps identity evaluated with quadratic wedge-pair enumeration."""
    pts = points.points
    n = len(pts)
    if n == 0:
        raise EmptyInput("empty point set")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    lexkeys = [(p.x, p.y) for p in pts]
    scale = max(points.diameter(), 1.0)

    n_fam = dirs.n_families()
    chains: list[list[int]] = []
    apexes_all: list[list[Point2 | None]] = []
    frames = []
    for i in range(n_fam):
        phi_lo, phi_hi = dirs.family_bounds(i, theta)
        m1 = unit(phi_lo + math.pi / 2.0)
        m2 = unit(phi_hi - math.pi / 2.0)
        mu = [xs[j] * m1[0] + ys[j] * m1[1] for j in range(n)]
        nu = [xs[j] * m2[0] + ys[j] * m2[1] for j in range(n)]
        chain = _brute_maxima(xs, ys, mu, nu, lexkeys)
        chains.append(chain)
        frames.append((phi_lo, phi_hi, m1, m2, mu, nu))
        apx: list[Point2 | None] = []
        e_lo, e_hi = unit(phi_lo), unit(phi_hi)
        for a, b in zip(chain, chain[1:]):
            w, u = pts[a], pts[b]
            # apex z solves z + t*e_lo = w, z + s*e_hi = u
            det = cross(e_lo, (-e_hi[0], -e_hi[1]))
            rhs = (w.x - u.x, w.y - u.y)
            t = cross(rhs, (-e_hi[0], -e_hi[1])) / det
            s = cross(e_lo, rhs) / det
            if t <= 1e-12 * scale or s <= 1e-12 * scale:
                apx.append(None)
            else:
                apx.append(Point2(w.x - t * e_lo[0], w.y - t * e_lo[1]))
        apexes_all.append(apx)

    cycle: list[int] = []
    for chain in chains:
        for idx in chain:
            if cycle and cycle[-1] == idx:
                continue
            cycle.append(idx)
    while len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle.pop()

    poly_area = 0.0
    if len(cycle) >= 3:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            poly_area += xs[a] * ys[b] - xs[b] * ys[a]
        poly_area *= 0.5

    tri_sum = 0.0
    for i in range(n_fam):
        chain = chains[i]
        for j, apex in enumerate(apexes_all[i]):
            if apex is None:
                continue
            w, u = pts[chain[j]], pts[chain[j + 1]]
            tri_sum += 0.5 * abs(cross((w.x - apex.x, w.y - apex.y),
                                       (u.x - apex.x, u.y - apex.y)))

    ov_sum = 0.0
    for i in range(dirs.k):
        o = dirs.opposite(i)
        phi_lo, phi_hi, m1, m2, mu, nu = frames[i]
        ci, co = chains[i], chains[o]
        sin_t = math.sin(dirs.apertures[i])
        eps = 1e-12 * scale * scale
        for j in range(len(ci) - 1):
            a1, a2 = mu[ci[j]], nu[ci[j + 1]]
            for l in range(len(co) - 1):
                d1 = mu[co[l]] - a1
                d2 = nu[co[l + 1]] - a2
                if d1 > 0 and d2 > 0 and d1 * d2 > eps:
                    ov_sum += d1 * d2 / sin_t

    area = poly_area - tri_sum + ov_sum
    if abs(area) < 1e-12 * scale * scale:
        area = 0.0
    return OracleHull(theta=norm_angle(theta),
                      chains=tuple(tuple(c) for c in chains),
                      apexes=tuple(tuple(a) for a in apexes_all),
                      cycle=tuple(cycle), area=area)


def _wedge_polygon(apex, phi_lo: float, phi_hi: float, reach: float):
    e_lo, e_hi = unit(phi_lo), unit(phi_hi)
    mid = unit(0.5 * (phi_lo + phi_hi))
    half = 0.5 * (phi_hi - phi_lo)
    far = reach / max(math.cos(half), 0.05)
    return [
        (apex[0], apex[1]),
        (apex[0] + reach * e_lo[0], apex[1] + reach * e_lo[1]),
        (apex[0] + far * mid[0], apex[1] + far * mid[1]),
        (apex[0] + reach * e_hi[0], apex[1] + reach * e_hi[1]),
    ]


def region_oracle(points: PointSet, dirs: DirectionSet, theta: float):
    """Hull region as explicit polygons: convex hull minus the union of
    every maximal P-free wedge, via shapely boolean ops.  Measure-zero
    pieces vanish here, so this oracle speaks only about area and the
    positive-area component count."""
    from shapely.geometry import MultiPolygon, Polygon
    from shapely.ops import unary_union

    pts = points.points
    hull = convex_hull(points)
    if len(hull) < 3:
        return None, 0.0
    reach = 10.0 * max(points.diameter(), 1.0)
    hull_poly = Polygon([(p.x, p.y) for p in hull.vertices])

    oracle = hull_at_oracle(points, dirs, theta)
    wedges = []
    for i in range(dirs.n_families()):
        phi_lo, phi_hi = dirs.family_bounds(i, theta)
        chain = oracle.chains[i]
        e_lo, e_hi = unit(phi_lo), unit(phi_hi)
        for a, b in zip(chain, chain[1:]):
            w, u = pts[a], pts[b]
            det = cross(e_lo, (-e_hi[0], -e_hi[1]))
            rhs = (w.x - u.x, w.y - u.y)
            t = cross(rhs, (-e_hi[0], -e_hi[1])) / det
            apex = (w.x - t * e_lo[0], w.y - t * e_lo[1])
            wedges.append(Polygon(_wedge_polygon(apex, phi_lo, phi_hi, reach)))
    if not wedges:
        return hull_poly, hull_poly.area
    carved = hull_poly.difference(unary_union(wedges))
    return carved, carved.area


def area_at_oracle(points: PointSet, dirs: DirectionSet, theta: float) -> float:
    """Hull area at one rotation, vectorized but still brute force:
    quadratic dominance matrices per family, then the polygon-minus-
    triangles-plus-overlaps identity with all-pairs overlap enumeration."""
    pts = points.points
    n = len(pts)
    if n == 0:
        raise EmptyInput("empty point set")
    if n == 1:
        return 0.0
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    lexrank = np.empty(n, dtype=np.int64)
    lexrank[np.lexsort((ys, xs))] = np.arange(n)
    scale = max(points.diameter(), 1.0)
    eps2 = 1e-12 * scale * scale

    n_fam = dirs.n_families()
    chains = []
    mus, nus = [], []
    for i in range(n_fam):
        phi_lo, phi_hi = dirs.family_bounds(i, theta)
        m1, m2 = unit(phi_lo + math.pi / 2.0), unit(phi_hi - math.pi / 2.0)
        mu = xs * m1[0] + ys * m1[1]
        nu = xs * m2[0] + ys * m2[1]
        lex_gt = lexrank[:, None] > lexrank[None, :]
        g1 = (mu[:, None] > mu[None, :]) | ((mu[:, None] == mu[None, :]) & lex_gt)
        g2 = (nu[:, None] > nu[None, :]) | ((nu[:, None] == nu[None, :]) & lex_gt)
        dominated = (g1 & g2).any(axis=0)
        idx = np.flatnonzero(~dominated)
        order = np.lexsort((mu[idx], -nu[idx]))
        chains.append(idx[order])
        mus.append(mu)
        nus.append(nu)

    cycle: list[int] = []
    for chain in chains:
        for j in chain:
            if cycle and cycle[-1] == j:
                continue
            cycle.append(int(j))
    while len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle.pop()
    poly_area = 0.0
    if len(cycle) >= 3:
        cx, cy = xs[cycle], ys[cycle]
        poly_area = 0.5 * float(np.sum(cx * np.roll(cy, -1) - np.roll(cx, -1) * cy))

    tri_sum = 0.0
    for i in range(n_fam):
        c = chains[i]
        if len(c) < 2:
            continue
        dnu = nus[i][c[:-1]] - nus[i][c[1:]]
        dmu = mus[i][c[1:]] - mus[i][c[:-1]]
        good = (dnu > 1e-12 * scale) & (dmu > 1e-12 * scale)
        tri_sum += 0.5 * float(np.sum(dnu[good] * dmu[good])) / math.sin(dirs.apertures[i])

    ov_sum = 0.0
    for i in range(dirs.k):
        o = dirs.opposite(i)
        ci, co = chains[i], chains[o]
        if len(ci) < 2 or len(co) < 2:
            continue
        mu, nu = mus[i], nus[i]
        a1, a2 = mu[ci[:-1]], nu[ci[1:]]
        b1, b2 = mu[co[:-1]], nu[co[1:]]
        d1 = b1[None, :] - a1[:, None]
        d2 = b2[None, :] - a2[:, None]
        mask = (d1 > 0) & (d2 > 0) & (d1 * d2 > eps2)
        ov_sum += float(np.sum((d1 * d2)[mask])) / math.sin(dirs.apertures[i])

    area = poly_area - tri_sum + ov_sum
    return 0.0 if abs(area) < eps2 else area


def min_area_grid_oracle(points: PointSet, dirs: DirectionSet,
                         grid: GridSpec, sense: str = "min"):
    """Scan hull area on a theta grid, then refine the best bracket by
    golden-section search.  Returns (theta_hat, area_hat)."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    sign = 1.0 if sense == "min" else -1.0

    def f(theta: float) -> float:
        return sign * area_at_oracle(points, dirs, theta)

    m = max(8, int(math.ceil(TWO_PI / grid.theta_resolution)))
    thetas = [i * TWO_PI / m for i in range(m)]
    vals = [f(t) for t in thetas]
    spread = max(vals) - min(vals)
    if spread <= 1e-15 * (1.0 + abs(vals[0])):
        return 0.0, sign * vals[0]  # constant area: smallest-angle convention
    best = min(range(m), key=lambda i: (vals[i], thetas[i]))
    lo = thetas[best] - TWO_PI / m
    hi = thetas[best] + TWO_PI / m

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > grid.refine_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    theta_hat = norm_angle(0.5 * (a + b))
    return theta_hat, sign * f(theta_hat)
