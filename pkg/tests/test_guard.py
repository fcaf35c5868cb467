import math

import pytest

from polypursuit.geom import Point, Polyline
from polypursuit.guard import (
    GuardError,
    GuardState,
    GuardWalk,
    check_minimal,
    guard_move,
    initialize_guard,
    project,
)
from polypursuit.kpaths import shortest_path
from polypursuit.regions import SideRegion, initial_region
from polypursuit.visgraph import geodesic, visgraph_of

SQRT = math.sqrt


def P(x, y):
    return Point(float(x), float(y))


def donut_pi1_setup(donut, e):
    g = visgraph_of(donut)
    u = g.key_index[(0, 0)]
    v = [i for i, p in enumerate(g.nodes) if p == P(10, 10)][0]
    pi1 = shortest_path(g, u, v)
    region, side, faces = initial_region(donut, pi1, "pi1", e)
    return pi1, region, side


class TestProject:
    def test_donut_interior_point(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        ap = project(pi1, P(8, 2), side)
        assert ap.s == pytest.approx(SQRT(68), rel=1e-9)
        assert ap.pt.x == pytest.approx(5.416, abs=2e-3)
        assert ap.pt.y == pytest.approx(6.180, abs=2e-3)

    def test_evader_at_anchor(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        ap = project(pi1, P(0, 0), side)
        assert ap.s == 0.0
        assert ap.pt == P(0, 0)

    def test_far_evader_caps_at_v(self, square):
        # a short two-vertex path in the square; the far corner exceeds it
        g = visgraph_of(square)
        path = shortest_path(g, 0, 1)  # (0,0)->(10,0), length 10
        ap = project(path, P(0, 10), square.shape)
        # d((0,10),(0,0)) = 10 = len(path): capped exactly at v
        assert ap.s == pytest.approx(10.0)
        assert ap.pt == P(10, 0)
        ap2 = project(path, P(5, 10), square.shape)
        assert ap2.s == pytest.approx(10.0)  # sqrt(125) > 10 caps at v

    def test_rejects_outside(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        with pytest.raises(GuardError):
            project(pi1, P(5, 4), side)  # inside the hole

    def test_feasibility_lemma(self, donut):
        # the projection is no farther from any sampled path point than the
        # evader is (the defining property)
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        e = P(8, 2)
        ap = project(pi1, e, side)
        pl = pi1.polyline
        for i in range(200):
            s = pl.length * i / 199
            x = pl.point_at(s)
            d_path = abs(ap.s - s)
            d_evader = side.geodesic(e, x).length
            assert d_path <= d_evader + 1e-6


class TestCheckMinimal:
    def test_pi1_is_minimal(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        ok, witness = check_minimal(pi1, side, samples=2000)
        assert ok, witness

    def test_boundary_detour_not_minimal(self, donut):
        detour = Polyline([P(0, 0), P(10, 0), P(10, 10)])
        ok, witness = check_minimal(detour, donut.shape, samples=2000)
        assert not ok
        assert witness is not None

    def test_straight_segment_minimal(self, square):
        seg = Polyline([P(0, 0), P(10, 10)])
        ok, _ = check_minimal(seg, square.shape, samples=1000)
        assert ok


class TestGuardMove:
    def test_projection_update(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        gs = GuardState(path=pi1, region=side, s=project(pi1, P(8, 2), side).s)
        out = guard_move(gs, P(8, 2), P(8, 3), geodesic(donut, P(8, 2), P(8, 3)).polyline)
        assert out[0] == "move"
        new_s = out[1].s
        assert new_s == pytest.approx(SQRT(73), rel=1e-9)
        assert abs(new_s - gs.s) == pytest.approx(SQRT(73) - SQRT(68), rel=1e-6)
        assert abs(new_s - gs.s) <= 1.0

    def test_stationary_evader(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))
        gs = GuardState(path=pi1, region=side, s=project(pi1, P(8, 2), side).s)
        out = guard_move(gs, P(8, 2), P(8, 2), None)
        assert out[0] == "move"
        assert out[1].s == gs.s

    def test_crossing_is_capture(self, donut):
        e_old = P(5.5, 6.2)  # just below the (4,5)-(10,10) leg of pi1
        pi1, region, side = donut_pi1_setup(donut, e_old)
        gs = GuardState(path=pi1, region=side, s=project(pi1, e_old, side).s)
        e_new = P(5.55, 6.5)  # a short legal move across the path
        move = geodesic(donut, e_old, e_new)
        assert move.length <= 1.0
        out = guard_move(gs, e_old, e_new, move.polyline)
        assert out[0] == "capture"
        # Lemma: the pursuer reaches the evader within one move
        p = pi1.polyline.point_at(gs.s)
        assert geodesic(donut, p, e_new).length <= 1.0 + 1e-6


class TestGuardWalk:
    def test_static_target_turn_count(self, square):
        g = visgraph_of(square)
        path = shortest_path(g, 0, 2)  # length sqrt(200)
        walk = GuardWalk(path)
        turns = 0
        while not walk.established:
            walk.step(5.2)
            turns += 1
        assert turns == 6  # ceil(5.2)
        assert walk.s == pytest.approx(5.2)

    def test_receding_target_caps_at_far_end(self, square):
        g = visgraph_of(square)
        path = shortest_path(g, 0, 2)
        L = path.polyline.length
        walk = GuardWalk(path)
        target = 5.0
        turns = 0
        while not walk.established and turns < 100:
            walk.step(target)
            target = min(L, target + 1.0)
            turns += 1
        assert walk.established
        assert turns <= int(L) + 2

    def test_crossover_snaps(self, square):
        g = visgraph_of(square)
        path = shortest_path(g, 0, 2)
        walk = GuardWalk(path)
        walk.step(10.0)  # moves to 1
        walk.step(10.0)  # 2
        walk.step(2.5)   # within one unit: snaps, established
        assert walk.established
        assert walk.s == pytest.approx(2.5)

    def test_initialize_guard_driver(self, donut):
        pi1, region, side = donut_pi1_setup(donut, P(8, 2))

        def evader_positions():
            while True:
                yield P(8, 2)

        gs, turns = initialize_guard(pi1, side, evader_positions())
        assert gs.s == pytest.approx(SQRT(68), rel=1e-9)
        assert turns == 9  # ceil(8.2462)
