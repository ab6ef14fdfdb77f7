import math
import random

import pytest

from rotohull.angles import TWO_PI, norm_angle
from rotohull.errors import CursorExhausted
from rotohull.events import sweep_vertices, vertex_event_schedule
from rotohull.fixed_hull import family_frame, family_maxima, hull_at
from rotohull.geom import DirectionSet, validate_point_set

from conftest import SQUARE, random_points


def test_single_point_empty_schedule():
    ps = validate_point_set([(0.4, -0.2)])
    sched = vertex_event_schedule(ps, DirectionSet.axes())
    assert sched.events == ()
    cur = sweep_vertices(ps, DirectionSet.axes())
    assert cur.vertices() == {0}
    with pytest.raises(CursorExhausted):
        cur.advance()


def test_square_family_churn():
    axes = DirectionSet.axes()
    sched = vertex_event_schedule(SQUARE, axes)
    # every corner enters/leaves individual families at multiples of pi/2
    assert all(abs(math.remainder(e.theta, math.pi / 2)) < 1e-9 for e in sched.events)
    cur = sweep_vertices(SQUARE, axes)
    seen = set()
    while not cur.exhausted():
        cur.advance()
        assert cur.vertices() == {0, 1, 2, 3}  # V is all corners at every theta
        seen.add(cur.schedule.events[cur.pos - 1].kind)
    assert seen == {"in", "out"}
    assert cur.matches_initial()


@pytest.mark.parametrize("dirs", [
    DirectionSet.axes(),
    DirectionSet((0.0, math.pi / 3, 2 * math.pi / 3)),
])
def test_replay_matches_fixed_hull(dirs):
    rng = random.Random(13)
    for _ in range(6):
        ps = random_points(rng, 25)
        sched = vertex_event_schedule(ps, dirs)
        cur = sweep_vertices(ps, dirs, sched)
        # state before any event
        lo, hi = cur.current_interval()
        mids = [norm_angle(lo + 0.5 * ((hi - lo) % TWO_PI))]
        states = [[tuple(c) for c in cur.chains]]
        while not cur.exhausted():
            cur.advance()
            lo, hi = cur.current_interval()
            span = (hi - lo) % TWO_PI
            if span <= 1e-9:
                mids.append(None)
            else:
                mids.append(norm_angle(lo + 0.5 * span))
            states.append([tuple(c) for c in cur.chains])
        assert cur.matches_initial()
        for mid, chains in zip(mids, states):
            if mid is None:
                continue
            ref = hull_at(ps, dirs, mid)
            for f in range(dirs.n_families()):
                assert chains[f] == ref.staircases[f].vertices, (mid, f)


def test_vertex_count_changes_by_event_delta():
    rng = random.Random(15)
    dirs = DirectionSet.axes()
    ps = random_points(rng, 30)
    cur = sweep_vertices(ps, dirs)
    sizes = [sum(len(c) for c in cur.chains)]
    while not cur.exhausted():
        tr = cur.advance()
        new_size = sum(len(c) for c in cur.chains)
        assert new_size - sizes[-1] == (1 if tr.event.kind == "in" else -1)
        sizes.append(new_size)


def test_constant_between_events():
    rng = random.Random(25)
    dirs = DirectionSet.axes()
    for _ in range(4):
        ps = random_points(rng, 10)
        sched = vertex_event_schedule(ps, dirs)
        cur = sweep_vertices(ps, dirs, sched)
        for _ in range(len(sched.events)):
            cur.advance()
            lo, hi = cur.current_interval()
            span = (hi - lo) % TWO_PI
            if span < 1e-8:
                continue
            for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
                pr = norm_angle(lo + frac * span)
                ref = hull_at(ps, dirs, pr)
                for f in range(4):
                    assert cur.staircase(f) == ref.staircases[f].vertices


def test_event_count_linear_bound():
    rng = random.Random(35)
    for n in (16, 32, 64, 128):
        ps = random_points(rng, n, "ring")
        sched = vertex_event_schedule(ps, DirectionSet.axes())
        assert len(sched.events) <= 24 * n  # 3 wedges x 4 families x 2 ends
        for e in sched.events:
            assert 0.0 <= e.theta < TWO_PI
    # each point generates at most 3 in-events per family
    ps = random_points(rng, 64, "uniform")
    sched = vertex_event_schedule(ps, DirectionSet.axes())
    per = {}
    for e in sched.events:
        if e.kind == "in":
            per[(e.point, e.family)] = per.get((e.point, e.family), 0) + 1
    assert all(v <= 3 for v in per.values())


def test_cursor_clone_independent():
    ps = random_points(random.Random(45), 12)
    cur = sweep_vertices(ps, DirectionSet.axes())
    cur.advance()
    snap = [tuple(c) for c in cur.chains]
    c2 = cur.clone()
    c2.advance()
    assert [tuple(c) for c in cur.chains] == snap
    assert c2.pos == cur.pos + 1
