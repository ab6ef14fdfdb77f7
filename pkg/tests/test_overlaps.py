import math
import random

import pytest

from rotohull.angles import TWO_PI, circ_delta, norm_angle
from rotohull.errors import InconsistentEvent, PreconditionTheta
from rotohull.events import vertex_event_schedule
from rotohull.fixed_hull import family_frame, hull_at, rch_at, step_apex
from rotohull.geom import DirectionSet, Point2, validate_point_set
from rotohull.overlaps import (arc_intersections, bichromatic_link_intersections,
                               build_arc_chain, overlap_release_events,
                               sweep_overlaps)

from conftest import SQUARE, random_points


AXES = DirectionSet.axes()


def distinct4_keys(h):
    return {ov.key for ov in h.overlaps if len(set(ov.key)) == 4}


def test_arc_chain_single_point_empty():
    ps = validate_point_set([(0.1, 0.2)])
    links = build_arc_chain(ps, AXES, (0, 2))
    assert links == []


def test_arc_chain_square_four_semicircles():
    for pair in ((0, 2), (1, 3)):
        links = build_arc_chain(SQUARE, AXES, pair)
        assert len(links) == 4
        for lk in links:
            assert len(lk.arcs) == 1
            (arc,) = lk.arcs
            assert arc.radius == pytest.approx(0.5, abs=1e-9)
            assert arc.t_span == pytest.approx(math.pi / 2, abs=1e-9)
            assert arc.psi_span() == pytest.approx(math.pi, abs=1e-9)
            # bulging inward: arc midpoint is the square center side
            mid = arc.apex_at(norm_angle(arc.t_start + arc.t_span / 2))
            assert 0.2 < mid.x < 0.8 and 0.2 < mid.y < 0.8
        # endpoints are the edge corners
        eps = {frozenset(lk.endpoints) for lk in links}
        assert eps == {frozenset({0, 1}), frozenset({1, 2}),
                       frozenset({2, 3}), frozenset({3, 0})}


def test_arc_apex_matches_step_apex_and_p_free():
    rng = random.Random(51)
    for _ in range(6):
        ps = random_points(rng, 20)
        for fam_pair in ((0, 2), (1, 3)):
            links = build_arc_chain(ps, AXES, fam_pair)
            fam = min(fam_pair)
            for lk in links:
                for arc in lk.arcs:
                    for frac in (0.2, 0.5, 0.8):
                        theta = norm_angle(arc.t_start + frac * min(arc.t_span, TWO_PI))
                        fr = family_frame(AXES, fam, theta)
                        w, u = ps[arc.pair[0]], ps[arc.pair[1]]
                        ref, t, s = step_apex(fr, w, u)
                        got = arc.apex_at(theta)
                        assert got.x == pytest.approx(ref.x, abs=1e-8)
                        assert got.y == pytest.approx(ref.y, abs=1e-8)
                        # the wedge at the apex is P-free
                        for j, q in enumerate(ps):
                            if j in arc.pair:
                                continue
                            dxq = (q.x - ref.x, q.y - ref.y)
                            in1 = dxq[0] * fr.m1[0] + dxq[1] * fr.m1[1] > 1e-9
                            in2 = dxq[0] * fr.m2[0] + dxq[1] * fr.m2[1] > 1e-9
                            assert not (in1 and in2)


def test_links_inside_link_disks():
    rng = random.Random(53)
    for _ in range(6):
        ps = random_points(rng, 15)
        links = build_arc_chain(ps, AXES, (0, 2))
        for lk in links:
            if lk.endpoints[0] < 0 or lk.endpoints[1] < 0:
                continue
            cx, cy, r = lk.disk(ps)
            for arc in lk.arcs:
                for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
                    theta = norm_angle(arc.t_start + frac * min(arc.t_span, TWO_PI))
                    a = arc.apex_at(theta)
                    assert math.hypot(a.x - cx, a.y - cy) <= r + 1e-7


def test_overlap_events_empty_small_and_square():
    for pts in ([(0.3, 0.4)], [(0, 0), (1, 1)], [(0, 0), (1, 0), (0.2, 1)]):
        ps = validate_point_set(pts)
        assert overlap_release_events(ps, AXES) == []
    assert overlap_release_events(SQUARE, AXES) == []


def test_overlap_events_require_theta_precondition():
    ps = validate_point_set([(0, 0), (1, 0), (0.2, 1)])
    dirs = DirectionSet((0.0, math.pi / 3))  # theta_min = pi/3 < pi/2
    with pytest.raises(PreconditionTheta):
        overlap_release_events(ps, dirs)


@pytest.mark.parametrize("kind,n,trials", [("uniform", 20, 4), ("band", 14, 4)])
def test_overlap_events_match_dense_grid(kind, n, trials):
    rng = random.Random(55 + n)
    for _ in range(trials):
        ps = random_points(rng, n, kind)
        events = overlap_release_events(ps, AXES)
        angles = sorted(e.theta for e in events)
        # dense scan: the set of 4-distinct overlap keys changes only at
        # event angles
        m = 1200
        prev = distinct4_keys(hull_at(ps, AXES, 0.0))
        for j in range(1, m + 1):
            theta = j * TWO_PI / m
            cur = distinct4_keys(hull_at(ps, AXES, theta))
            if cur != prev:
                lo, hi = theta - TWO_PI / m, theta
                state = prev
                for _ in range(40):
                    mid = 0.5 * (lo + hi)
                    if distinct4_keys(hull_at(ps, AXES, mid)) == state:
                        lo = mid
                    else:
                        hi = mid
                change = 0.5 * (lo + hi)
                assert angles, "change found but no events"
                best = min(abs(norm_angle(change - a + math.pi) - math.pi)
                           for a in angles)
                assert best <= 1e-6, (change, best)
            prev = cur


def test_overlap_event_replay_matches_midpoint_recompute():
    rng = random.Random(61)
    for _ in range(6):
        ps = random_points(rng, 16, "band")
        events = overlap_release_events(ps, AXES)
        if not events:
            continue
        h0_theta = norm_angle(events[0].theta
                              - 0.5 * circ_delta(events[-1].theta, events[0].theta))
        initial = rch_at(ps, h0_theta)
        cur = sweep_overlaps(events, initial)
        thetas = [events[j].theta for j in cur._order]
        while not cur.exhausted():
            cur.advance()
            j = cur.pos
            end = thetas[j] if j < len(thetas) else norm_angle(h0_theta + TWO_PI - 1e-12)
            start = thetas[j - 1]
            span = circ_delta(start, end)
            if span <= 1e-9:
                continue
            mid = norm_angle(start + 0.5 * span)
            assert set(cur.active) == distinct4_keys(hull_at(ps, AXES, mid)), mid
        assert cur.matches_initial()


def test_overlap_cursor_inconsistent_release():
    rng = random.Random(63)
    ps = random_points(rng, 16, "band")
    events = overlap_release_events(ps, AXES)
    releases = [e for e in events if e.kind == "release"]
    if not releases:
        pytest.skip("instance produced no events")
    initial = rch_at(ps, norm_angle(releases[0].theta - 1e-4))
    bogus = [e for e in events if e.kind == "release"][:1]
    cur = sweep_overlaps(bogus, initial)
    if bogus[0].key in cur.active:
        cur.advance()  # legitimate release of an active key
        with pytest.raises(Exception):
            cur2 = sweep_overlaps(bogus + bogus, initial)
            cur2.advance()
            cur2.advance()
    else:
        with pytest.raises(InconsistentEvent):
            cur.advance()


def test_bichromatic_square_empty_and_tangency():
    links = build_arc_chain(SQUARE, AXES, (0, 2))
    assert bichromatic_link_intersections(SQUARE, links) == []


def test_bichromatic_matches_bruteforce_pairs():
    rng = random.Random(67)
    for _ in range(5):
        ps = random_points(rng, 20, "band")
        links = build_arc_chain(ps, AXES, (0, 2))
        got = {(min(a.link_id, b.link_id), max(a.link_id, b.link_id))
               for a, b, _ in bichromatic_link_intersections(ps, links)}
        # quadratic oracle over all bichromatic tau-compatible arc pairs
        want = set()
        from rotohull.overlaps import _tau_compatible_arc_pairs
        for a_id in range(len(links)):
            for b_id in range(len(links)):
                la, lb = links[a_id], links[b_id]
                if la.color == lb.color:
                    continue
                for a, b, _, _ in _tau_compatible_arc_pairs(la, lb):
                    if arc_intersections(a, b):
                        want.add((min(a_id, b_id), max(a_id, b_id)))
        assert got == want


def test_link_pair_at_most_two_transversal_intersections():
    rng = random.Random(71)
    for _ in range(8):
        ps = random_points(rng, 18, "band")
        links = build_arc_chain(ps, AXES, (1, 3))
        for la, lb, pts in bichromatic_link_intersections(ps, links):
            dedup = []
            for p in pts:
                if not any(math.hypot(p.x - q.x, p.y - q.y) < 1e-9 for q in dedup):
                    dedup.append(p)
            assert len(dedup) <= 2, (la.link_id, lb.link_id, dedup)
