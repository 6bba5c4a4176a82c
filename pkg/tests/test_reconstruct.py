import math

import pytest

from trajectory_oracle.errors import (
    ChordTooLong,
    CoincidentCenters,
    DegenerateWaypoint,
    InconsistentInput,
    InsufficientObservations,
    InvalidTimes,
)
from trajectory_oracle.geom import Circle, DirectedLine, Point2, UnitVec2, point_line_distance
from trajectory_oracle.kinematics import (
    LinearTrajectory,
    ObservationSet,
    Radar,
    RadarObservation,
    TimedWaypoint,
    TurnTrajectory,
    simulate_observations,
)
from trajectory_oracle.reconstruct import (
    CONTINUUM_DEGENERATE,
    NO_SOLUTION,
    BonusInput,
    Case4Ratios,
    CaseTag,
    case4_oracle,
    construct_reference_circle,
    lines_match,
    matches_any,
    reconstruct,
    solve_bonus,
    solve_case1,
    solve_case2,
    solve_case3,
    solve_case4,
)
from trajectory_oracle.reconstruct.bonus import turn_entrance
from trajectory_oracle.reconstruct.case3 import entry_exit_points, waypoint_timing

P = Point2
EAST = UnitVec2(1.0, 0.0)


def radar(x, y, r, rid="r"):
    return Radar(rid, Circle(P(x, y), r))


def horizontal(y):
    return DirectedLine(P(0, y), EAST)


class TestCase1:
    def test_four_tangents(self):
        cs = solve_case1(P(0, 0), 1, P(4, 0), 1)
        assert cs.case_tag is CaseTag.CASE1 and len(cs) == 4
        for line in cs.routes:
            assert point_line_distance(P(0, 0), line) == pytest.approx(1, abs=1e-12)
            assert point_line_distance(P(4, 0), line) == pytest.approx(1, abs=1e-12)
        assert sum(lines_match(l, horizontal(1)) for l in cs.routes) == 1
        assert sum(lines_match(l, horizontal(-1)) for l in cs.routes) == 1
        internal = [l for l in cs.routes if abs(l.direction.uy) > 1e-9]
        for l in internal:
            assert point_line_distance(P(2, 0), l) == pytest.approx(0, abs=1e-12)
            assert abs(l.direction.uy / l.direction.ux) == pytest.approx(1 / math.sqrt(3))

    def test_point_circles(self):
        cs = solve_case1(P(0, 0), 0, P(4, 0), 0)
        assert len(cs) == 1 and lines_match(cs.routes[0], horizontal(0))

    def test_nested(self):
        cs = solve_case1(P(0, 0), 5, P(1, 0), 1)
        assert len(cs) == 0 and cs.reason == NO_SOLUTION

    def test_same_center(self):
        with pytest.raises(CoincidentCenters):
            solve_case1(P(1, 1), 2, P(1, 1), 3)


R1 = radar(0, 0, 5, "r1")
R2 = radar(10, 3, 5, "r2")
TRACK = LinearTrajectory(P(-4, 3), EAST, 1.0, 0.0)


class TestCase2:
    def test_contains_fixture(self):
        cs = solve_case2(R1, 3, 0, 8, R2, 9)
        assert 1 <= len(cs) <= 4
        assert matches_any(TRACK, cs)
        assert all(c.residual < 1e-6 for c in cs)

    def test_tangent_construction_circle(self):
        # travelled distance chosen so circle(O1, rho) touches threat 2 from outside
        rho = math.sqrt(109) - 5
        dist = 4 + math.sqrt(rho * rho - 9)
        cs = solve_case2(R1, 3, 0, 8, R2, dist)
        assert 1 <= len(cs) <= 2
        assert all(c.residual < 1e-6 for c in cs)

    def test_unreachable(self):
        cs = solve_case2(R1, 3, 0, 8, radar(100, 0, 5), 0.1)
        assert len(cs) == 0 and cs.reason == NO_SOLUTION

    def test_bad_times(self):
        with pytest.raises(InvalidTimes):
            solve_case2(R1, 3, 8, 0, R2, 9)
        with pytest.raises(InvalidTimes):
            solve_case2(R1, 3, 0, 8, R2, -1)

    def test_distance_outside_circle(self):
        with pytest.raises(InconsistentInput):
            solve_case2(R1, 6, 0, 8, R2, 9)


class TestCase3:
    def test_collinear_exterior(self):
        cs = solve_case3(radar(0, 0, 1), 2, 4, TimedWaypoint(P(3, 0), 0))
        truth = LinearTrajectory(P(3, 0), UnitVec2(-1.0, 0.0), 1.0, 0.0)
        assert matches_any(truth, cs)
        for traj in cs.routes:
            X, Y = entry_exit_points(traj, radar(0, 0, 1))
            assert Y.dist(P(3, 0)) / X.dist(P(3, 0)) == pytest.approx(2.0, rel=1e-9)

    def test_interior_off_center(self):
        threat = radar(0, 0, 2)
        truth = LinearTrajectory(P(-2, 1), EAST, 1.0, 0.0)
        obs = simulate_observations(truth, (threat,), _grant_times("r", waypoint=1.2))
        o = obs.get("r")
        cs = solve_case3(threat, o.entry_time, o.exit_time, obs.waypoint)
        assert matches_any(truth, cs)

    def test_waypoint_at_center_is_continuum(self):
        cs = solve_case3(radar(0, 0, 2), 1, 5, TimedWaypoint(P(0, 0), 3))
        assert len(cs) == 0 and cs.reason == CONTINUUM_DEGENERATE

    def test_waypoint_on_entry_time(self):
        with pytest.raises(DegenerateWaypoint):
            solve_case3(radar(0, 0, 1), 2, 4, TimedWaypoint(P(3, 0), 2))

    def test_timing_sign(self):
        assert waypoint_timing(2, 4, 0).ratio == pytest.approx(2.0)
        assert waypoint_timing(1, 5, 2).ratio == pytest.approx(-3.0)


def _grant_times(*ids, waypoint=None):
    from trajectory_oracle.kinematics import InformationPolicy, RadarPolicy

    return InformationPolicy({i: RadarPolicy(entry=True, exit=True) for i in ids}, waypoint_time=waypoint)


class TestCase4:
    B = radar(10, 0, 5, "b")

    def test_symmetric_fixture(self):
        # AB = 8, BC = 2, CD = 8: x = 0.25, y = 1
        cs = solve_case4(R1, 0, 8, self.B, 10, 18)
        assert len(cs) == 2
        for y in (3.0, -3.0):
            assert matches_any(LinearTrajectory(P(-4, y), EAST, 1.0, 0.0), cs)

    def test_zero_first_chord(self):
        with pytest.raises(InvalidTimes):
            solve_case4(R1, 0, 0, self.B, 10, 18)

    def test_ratios(self):
        r = Case4Ratios.from_times(0, 8, 10, 18)
        assert (r.x, r.y) == pytest.approx((0.25, 1.0))

    @pytest.mark.parametrize("lam", [0.5, 3.0])
    def test_time_scaling(self, lam):
        base = solve_case4(R1, 0, 8, self.B, 10, 18)
        scaled = solve_case4(R1, 0, 8 * lam, self.B, 10 * lam, 18 * lam)
        assert len(base) == len(scaled)
        for a in base.routes:
            match = [b for b in scaled.routes if lines_match(a.line, b.line, 1e-9)]
            assert len(match) == 1
            assert match[0].speed == pytest.approx(a.speed / lam, rel=1e-9)

    def test_oracle_on_fixture(self):
        lines = case4_oracle(R1, self.B, Case4Ratios.from_times(0, 8, 10, 18))
        assert len(lines) == 2
        for y in (3.0, -3.0):
            assert any(lines_match(l, horizontal(y), 1e-6) for l in lines)

    def test_oracle_far_apart(self):
        assert case4_oracle(R1, radar(1000, 0, 5), Case4Ratios.from_times(0, 8, 10, 18)) == []


WORKED = BonusInput(P(0, 0), EAST, 10.0, 4.0, Circle(P(4, 8), 2))


class TestBonus:
    def test_reference_circle_diameter(self):
        refs = construct_reference_circle(WORKED)
        assert len(refs) == 1
        assert refs[0].center.dist(P(12, 0)) < 1e-12 and refs[0].radius == 2

    def test_reference_circles_tangent(self):
        inp = BonusInput(P(0, 0), EAST, 10.0, 0.0, Circle(P(4, 8), 2))
        centers = sorted((c.center for c in construct_reference_circle(inp)), key=lambda p: p.y)
        assert centers[0].dist(P(10, -2)) < 1e-12 and centers[1].dist(P(10, 2)) < 1e-12

    def test_chord_too_long(self):
        with pytest.raises(ChordTooLong):
            construct_reference_circle(BonusInput(P(0, 0), EAST, 10.0, 5.0, Circle(P(4, 8), 2)))

    def test_worked_fixture(self):
        cs = solve_bonus(WORKED, 1.0, 0.0)
        assert len(cs) == 1
        route = cs.routes[0]
        assert route.turn_point.dist(P(4, 0)) < 1e-9
        assert route.leg2_direction.vec.dist(P(0, 1)) < 1e-9
        assert turn_entrance(route, WORKED).dist(P(4, 6)) < 1e-9

    def test_already_straight(self):
        inp = BonusInput(P(0, 0), EAST, 10.0, 4.0, Circle(P(12, 0), 2))
        cs = solve_bonus(inp, 1.0)
        assert len(cs) == 1
        route = cs.routes[0]
        assert route.leg2_direction.vec.dist(EAST.vec) < 1e-12

    def test_radar_behind_start(self):
        inp = BonusInput(P(0, 0), EAST, 10.0, 4.0, Circle(P(-20, 0), 2))
        cs = solve_bonus(inp, 1.0)
        assert len(cs) == 0 and cs.reason == NO_SOLUTION


class TestDispatch:
    def test_case4_missing_exit_times(self):
        obs = ObservationSet((RadarObservation("r1", 0.0), RadarObservation("b", 10.0)))
        with pytest.raises(InsufficientObservations) as info:
            reconstruct("4", (R1, TestCase4.B), obs)
        assert "exit_time" in str(info.value)

    def test_case4_orders_radars_by_entry(self):
        obs = ObservationSet((RadarObservation("b", 10.0, 18.0), RadarObservation("r1", 0.0, 8.0)))
        cs = reconstruct("4", (TestCase4.B, R1), obs)
        assert matches_any(LinearTrajectory(P(-4, 3), EAST, 1.0, 0.0), cs)

    def test_bonus_needs_speed(self):
        with pytest.raises(InsufficientObservations):
            reconstruct("bonus", (R1,), ObservationSet(()))

    def test_turn_route_reconstruction(self):
        truth = TurnTrajectory(P(0, 0), EAST, P(4, 0), UnitVec2(0.0, 1.0), 1.0, 0.0)
        threat = Radar("r1", Circle(P(4, 8), 2))
        from trajectory_oracle.kinematics import InformationPolicy

        obs = simulate_observations(truth, (threat,), InformationPolicy(speed=True, turn_radar="r1"))
        assert matches_any(truth, reconstruct("bonus", (threat,), obs))
