"""Angle arithmetic on the circle.

Angles are plain floats in radians, normalized to [0, 2*pi).  Circular
intervals are half-open [start, end) by default; closure flags exist for
the few places that distinguish open endpoints.  An interval with
``full=True`` denotes the whole circle (used e.g. for the escaping wedge
of an isolated point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

TWO_PI = 2.0 * math.pi

# Absolute tolerance for angle comparisons.  Event angles come out of
# atan2 of coordinate differences, so exact equality is meaningless.
EPS_THETA = 1e-12


def norm_angle(a: float) -> float:
    """Normalize an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:  # fmod can round back up to 2*pi
        a -= TWO_PI
    return a


def circ_delta(start: float, end: float) -> float:
    """Counterclockwise distance from start to end, in [0, 2*pi)."""
    return norm_angle(end - start)


def angles_close(a: float, b: float, tol: float = EPS_THETA) -> bool:
    """True when a and b coincide on the circle within tol."""
    d = norm_angle(a - b)
    return d <= tol or TWO_PI - d <= tol


@dataclass(frozen=True)
class AngleInterval:
    """A circular angular interval.

    Runs counterclockwise from ``start`` to ``end``.  ``closed_start`` and
    ``closed_end`` control endpoint membership.  ``full=True`` marks the
    whole circle (start/end then irrelevant).  An interval with
    start == end and full=False is the single point {start} when both ends
    are closed, otherwise empty.
    """

    start: float
    end: float
    closed_start: bool = True
    closed_end: bool = False
    full: bool = False

    @staticmethod
    def full_circle() -> "AngleInterval":
        return AngleInterval(0.0, 0.0, full=True)

    def length(self) -> float:
        if self.full:
            return TWO_PI
        return circ_delta(self.start, self.end)

    def is_empty(self) -> bool:
        if self.full:
            return False
        if circ_delta(self.start, self.end) > 0.0:
            return False
        return not (self.closed_start and self.closed_end)

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        """Membership test consistent with the closure flags."""
        if self.full:
            return True
        span = circ_delta(self.start, self.end)
        t = circ_delta(self.start, theta)
        if span == 0.0:
            return (self.closed_start and self.closed_end
                    and angles_close(theta, self.start, max(tol, EPS_THETA)))
        if tol > 0.0 and (t <= tol or TWO_PI - t <= tol or t <= span + tol):
            return True  # widened at both endpoints
        if t < span:
            return True if t > 0.0 else self.closed_start
        if t == span:
            return self.closed_end
        return False


def interval_intersection(a: AngleInterval, b: AngleInterval) -> list[AngleInterval]:
    """Intersection of two circular intervals: 0, 1, or 2 pieces.

    Endpoint closure of each piece comes from whichever input supplies
    that endpoint (logical AND where both coincide).
    """
    if a.is_empty() or b.is_empty():
        return []
    if a.full:
        return [b]
    if b.full:
        return [a]

    span_a = circ_delta(a.start, a.end)
    span_b = circ_delta(b.start, b.end)
    b0 = circ_delta(a.start, b.start)

    pieces: list[AngleInterval] = []
    # b, unrolled relative to a.start, may appear at offset b0 and b0-2pi.
    for lo in (b0, b0 - TWO_PI):
        hi = lo + span_b
        s = max(0.0, lo)
        e = min(span_a, hi)
        if e < s:
            continue
        from_a_start = s == 0.0 and lo < 0.0
        from_b_start = s == lo
        cs = ((a.closed_start and b.closed_start) if (s == 0.0 and s == lo)
              else (a.closed_start if from_a_start else b.closed_start))
        from_a_end = e == span_a and hi > e
        from_b_end = e == hi
        ce = ((a.closed_end and b.closed_end) if (e == span_a and e == hi)
              else (a.closed_end if from_a_end else b.closed_end))
        piece = AngleInterval(norm_angle(a.start + s), norm_angle(a.start + e), cs, ce)
        if piece.is_empty():
            continue
        if not any(angles_close(piece.start, p.start) and angles_close(piece.end, p.end)
                   for p in pieces):
            pieces.append(piece)
    return pieces


def interval_from_window(start: float, length: float) -> AngleInterval:
    """Half-open interval [start, start+length) given a ccw length."""
    if length >= TWO_PI:
        return AngleInterval.full_circle()
    return AngleInterval(norm_angle(start), norm_angle(start + length))


def merge_windows(windows: list[tuple[float, float]],
                  tol: float = EPS_THETA) -> list[tuple[float, float]]:
    """Merge (start, ccw-length) windows on the circle; used when reporting
    sets of optimal angles.  Zero-length windows are kept as points unless
    absorbed by a neighbor."""
    if not windows:
        return []
    total = sum(l for _, l in windows)
    if total >= TWO_PI:
        return [(0.0, TWO_PI)]
    items = sorted((norm_angle(s), max(0.0, l)) for s, l in windows)
    merged: list[list[float]] = [list(items[0])]
    for s, l in items[1:]:
        end_prev = merged[-1][0] + merged[-1][1]
        if s <= end_prev + tol:
            merged[-1][1] = max(end_prev, s + l) - merged[-1][0]
        else:
            merged.append([s, l])
    if len(merged) > 1:
        s_last, l_last = merged[-1]
        if s_last + l_last >= TWO_PI + merged[0][0] - tol:
            extra = s_last + l_last - TWO_PI
            if extra >= merged[0][0] - tol:
                merged[0][1] = max(merged[0][0] + merged[0][1], extra) - merged[0][0]
                merged[0][0] = s_last - TWO_PI
                merged.pop()
                merged[0][1] += 0.0
    out = []
    for s, l in merged:
        out.append((norm_angle(s), min(l, TWO_PI)))
    return out
