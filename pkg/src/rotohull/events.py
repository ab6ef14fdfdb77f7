"""Vertex in/out event schedules and staircase maintenance under rotation.

Every endpoint of a per-point fitting interval (escaping wedge minus
family aperture) is an event: the point starts or stops being a staircase
vertex of that wedge family.  Replaying the circular schedule maintains
all 2k chains through a full turn.

Tie order at equal angles processes shrinking before growing:
out, release, in, overlap (release/overlap belong to the merged schedule
built in the area module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .angles import EPS_THETA, TWO_PI, circ_delta, norm_angle
from .errors import CursorExhausted, EmptyInput
from .fixed_hull import FamilyFrame, family_frame, family_maxima
from .geom import DirectionSet, PointSet
from .wedges import EscapingTable, escaping_table

_KIND_RANK = {"out": 0, "release": 1, "in": 2, "overlap": 3}


@dataclass(frozen=True)
class VertexEvent:
    theta: float
    kind: str  # 'in' | 'out'
    point: int
    family: int

    def sort_key(self):
        return (self.theta, _KIND_RANK[self.kind], self.family, self.point)


@dataclass(frozen=True)
class EventSchedule:
    """Circularly sorted vertex events for all wedge families."""

    dirs: DirectionSet
    n_points: int
    events: tuple[VertexEvent, ...]

    def groups(self) -> Iterator[list[VertexEvent]]:
        """Events grouped by equal angle (within the angle tolerance)."""
        group: list[VertexEvent] = []
        for e in self.events:
            if group and abs(e.theta - group[-1].theta) > EPS_THETA:
                yield group
                group = []
            group.append(e)
        if group:
            yield group

    def interval_midpoints(self) -> list[float]:
        """One probe angle inside every event-free interval."""
        if not self.events:
            return [0.0]
        thetas = sorted({e.theta for e in self.events})
        mids = []
        for a, b in zip(thetas, thetas[1:] + [thetas[0] + TWO_PI]):
            if b - a > 4 * EPS_THETA:
                mids.append(norm_angle(0.5 * (a + b)))
        return mids


def vertex_event_schedule(points: PointSet, dirs: DirectionSet,
                          table: EscapingTable | None = None,
                          method: str = "auto") -> EventSchedule:
    """All in/out events over a full rotation, from the escaping table.

    A point enters family i when the family's rotating span starts to fit
    inside one of its escaping wedges and leaves when the fit ends; wedges
    without slack contribute nothing (their fit is a single angle).
    """
    if len(points) == 0:
        raise EmptyInput("empty point set")
    if table is None:
        table = escaping_table(points, dirs.theta_min, method=method)
    events: list[VertexEvent] = []
    n_fam = dirs.n_families()
    for i in range(n_fam):
        lo, hi = dirs.family_bounds(i, 0.0)
        aperture = hi - lo
        for p, wedges in enumerate(table.per_point):
            for w in wedges:
                if w.blockers == (None, None):
                    continue  # vertex for every theta, no events
                slack = w.aperture - aperture
                if slack <= 0.0:
                    continue
                start = norm_angle(w.start - lo)
                end = norm_angle(start + slack)
                events.append(VertexEvent(start, "in", p, i))
                events.append(VertexEvent(end, "out", p, i))
    events.sort(key=VertexEvent.sort_key)
    return EventSchedule(dirs, len(points), tuple(events))


@dataclass(frozen=True)
class Transition:
    """What one event application did to the chains."""

    event: VertexEvent
    removed_pairs: tuple[tuple[int, int], ...]
    added_pairs: tuple[tuple[int, int], ...]
    prev_neighbor: int | None
    next_neighbor: int | None


class VertexCursor:
    """Single-owner cursor replaying a vertex event schedule.

    State between events: one staircase chain per family, ordered along
    the staircase.  advance() applies one event; values exactly at an
    event angle use the post-event state (half-open validity intervals).
    A full cycle must restore the initial chains; advancing further
    raises CursorExhausted until reset().
    """

    def __init__(self, points: PointSet, dirs: DirectionSet,
                 schedule: EventSchedule | None = None, table=None):
        self.points = points
        self.dirs = dirs
        self.schedule = schedule or vertex_event_schedule(points, dirs, table=table)
        self._frames0 = [family_frame(dirs, i, 0.0) for i in range(dirs.n_families())]
        self.reset()

    # -- state bookkeeping ---------------------------------------------------

    def reset(self) -> None:
        ev = self.schedule.events
        if ev:
            gap = circ_delta(ev[-1].theta, ev[0].theta)
            if gap <= 0.0:
                gap = TWO_PI
            theta_init = norm_angle(ev[0].theta - 0.5 * gap)
        else:
            theta_init = 0.0
        self.pos = 0
        self._theta_prev = theta_init
        self.chains: list[list[int]] = [
            list(family_maxima(self.points, family_frame(self.dirs, i, theta_init)))
            for i in range(self.dirs.n_families())
        ]
        self._initial = [tuple(c) for c in self.chains]

    def clone(self) -> "VertexCursor":
        c = object.__new__(VertexCursor)
        c.points = self.points
        c.dirs = self.dirs
        c.schedule = self.schedule
        c._frames0 = self._frames0
        c.pos = self.pos
        c._theta_prev = self._theta_prev
        c.chains = [list(ch) for ch in self.chains]
        c._initial = self._initial
        return c

    def exhausted(self) -> bool:
        return self.pos >= len(self.schedule.events)

    def current_interval(self) -> tuple[float, float]:
        """Half-open validity interval [theta_event, theta_next) of the
        current state."""
        ev = self.schedule.events
        if not ev:
            return (0.0, TWO_PI)
        start = self._theta_prev if self.pos > 0 else norm_angle(ev[-1].theta)
        end = ev[self.pos].theta if self.pos < len(ev) else norm_angle(ev[0].theta)
        return (norm_angle(start), norm_angle(end))

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for c in self.chains:
            out.update(c)
        return out

    def staircase(self, family: int) -> tuple[int, ...]:
        return tuple(self.chains[family])

    def matches_initial(self) -> bool:
        return [tuple(c) for c in self.chains] == self._initial

    # -- event application ---------------------------------------------------

    def _nu(self, frame: FamilyFrame, idx: int, theta: float) -> float:
        c, s = math.cos(theta), math.sin(theta)
        p = self.points[idx]
        # nu at rotation theta: dot(p, e(base_angle + theta)) with base the
        # family's nu-normal at theta=0
        nx, ny = frame.m2
        return p.x * (nx * c - ny * s) + p.y * (nx * s + ny * c)

    def _locate(self, family: int, idx: int, theta_probe: float) -> int:
        """Index of point idx inside its chain, via nu binary search at a
        probe angle where the order is strict, with a local identity scan."""
        chain = self.chains[family]
        fr = self._frames0[family]
        target = self._nu(fr, idx, theta_probe)
        lo, hi = 0, len(chain) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self._nu(fr, chain[mid], theta_probe) > target:
                lo = mid + 1
            else:
                hi = mid
        j = lo
        while j < len(chain) and chain[j] != idx:
            j += 1
        if j < len(chain):
            return j
        j = lo
        while j >= 0 and chain[j] != idx:
            j -= 1
        if j < 0:
            raise ValueError(f"point {idx} not in chain {family}")
        return j

    def advance(self) -> Transition:
        ev = self.schedule.events
        if self.pos >= len(ev):
            raise CursorExhausted("full cycle done; reset() to go around again")
        e = ev[self.pos]
        chain = self.chains[e.family]
        fr = self._frames0[e.family]
        removed: list[tuple[int, int]] = []
        added: list[tuple[int, int]] = []
        if e.kind == "in":
            nu_p = self._nu(fr, e.point, e.theta)
            lo, hi = 0, len(chain)
            while lo < hi:
                mid = (lo + hi) // 2
                if self._nu(fr, chain[mid], e.theta) > nu_p:
                    lo = mid + 1
                else:
                    hi = mid
            w = chain[lo - 1] if lo > 0 else None
            u = chain[lo] if lo < len(chain) else None
            if w is not None and u is not None:
                removed.append((w, u))
            if w is not None:
                added.append((w, e.point))
            if u is not None:
                added.append((e.point, u))
            chain.insert(lo, e.point)
        else:
            probe = norm_angle(self._theta_prev
                               + 0.5 * circ_delta(self._theta_prev, e.theta))
            j = self._locate(e.family, e.point, probe)
            w = chain[j - 1] if j > 0 else None
            u = chain[j + 1] if j + 1 < len(chain) else None
            if w is not None:
                removed.append((w, e.point))
            if u is not None:
                removed.append((e.point, u))
            if w is not None and u is not None:
                added.append((w, u))
            chain.pop(j)
        self._theta_prev = e.theta
        self.pos += 1
        return Transition(e, tuple(removed), tuple(added), w, u)


def sweep_vertices(points: PointSet, dirs: DirectionSet,
                   schedule: EventSchedule | None = None) -> VertexCursor:
    """Rotation cursor over the vertex event schedule."""
    return VertexCursor(points, dirs, schedule)
