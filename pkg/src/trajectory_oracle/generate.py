"""Random ground-truth scenarios for each reconstruction case.

Generators draw a route and radars that satisfy the case's preconditions and
reject draws that sit close to a degenerate configuration (near-tangent
intersections, chords through a center, turns too shallow to locate).  The
margins are listed next to each generator.  Each returns a :class:`Scenario`
whose policy grants exactly the information that case consumes.
"""

from __future__ import annotations

import math
import random

from .geom import Circle, Point2, UnitVec2
from .kinematics import (
    InformationPolicy,
    LinearTrajectory,
    Radar,
    RadarPolicy,
    TurnTrajectory,
    entry_exit_times,
)
from .scenario import Scenario

BOX = 100.0
CASES = ("1", "2", "3", "4", "bonus")


def _point(rng: random.Random, box: float = BOX) -> Point2:
    return Point2(rng.uniform(-box, box), rng.uniform(-box, box))


def _direction(rng: random.Random) -> UnitVec2:
    return UnitVec2.from_angle(rng.uniform(-math.pi, math.pi))


def _route(rng: random.Random) -> LinearTrajectory:
    return LinearTrajectory(
        _point(rng, 50.0), _direction(rng), rng.uniform(0.5, 5.0), rng.uniform(-100.0, 100.0)
    )


def _radar_on(route: LinearTrajectory, s: float, offset: float, radius: float, rid: str) -> Radar:
    """Radar whose center is ``offset`` (signed, left positive) from the route at path length ``s``."""
    foot = route.anchor + route.direction * s
    return Radar(rid, Circle(foot + route.direction.perp() * offset, radius))


def case1(rng: random.Random) -> Scenario:
    # margin: feet of the two centers at least 0.1 apart, so the target line
    # is not a near-double tangent
    while True:
        route = _route(rng)
        c1, c2 = _point(rng), _point(rng)
        line = route.line
        d1, d2 = abs(line.signed_distance(c1)), abs(line.signed_distance(c2))
        if min(d1, d2) < 1e-3 or abs(line.param_of(c1) - line.param_of(c2)) < 0.1:
            continue
        radars = (
            Radar("r1", Circle(c1, d1 + rng.uniform(1.0, 50.0))),
            Radar("r2", Circle(c2, d2 + rng.uniform(1.0, 50.0))),
        )
        policy = InformationPolicy({"r1": RadarPolicy(closest=True), "r2": RadarPolicy(closest=True)})
        return Scenario(radars, ground_truth=route, policy=policy, metadata={"case": "1"})


def case2(rng: random.Random) -> Scenario:
    # margins: closest distance in [5%, 95%] of R1; the second entrance point
    # meets the constructed circle at an angle of at least ~0.6 degrees
    while True:
        route = _route(rng)
        R1, R2 = rng.uniform(5.0, 50.0), rng.uniform(5.0, 50.0)
        d1 = R1 * rng.uniform(0.05, 0.95)
        d2 = R2 * rng.uniform(0.0, 0.95)
        s1 = rng.uniform(-20.0, 20.0)
        s2 = s1 + rng.uniform(-R1, 3.0 * (R1 + R2))
        r1 = _radar_on(route, s1, rng.choice((-1, 1)) * d1, R1, "r1")
        r2 = _radar_on(route, s2, rng.choice((-1, 1)) * d2, R2, "r2")
        if r1.threat.center.dist(r2.threat.center) < 1.0:
            continue
        t1 = entry_exit_times(route, r1.threat)
        t2 = entry_exit_times(route, r2.threat)
        if t1 is None or t2 is None or not t2[0] > t1[0] + 1e-3:
            continue
        C = route.position_at(t2[0])
        O1, O2 = r1.threat.center, r2.threat.center
        if C.dist(O1) < 1e-3:
            continue
        v1, v2 = (C - O1) * (1 / C.dist(O1)), (C - O2) * (1 / R2)
        if abs(v1.cross(v2)) < 1e-2:
            continue
        policy = InformationPolicy(
            {"r1": RadarPolicy(True, True, True), "r2": RadarPolicy(entry=True)}
        )
        return Scenario((r1, r2), ground_truth=route, policy=policy, metadata={"case": "2"})


def case3(rng: random.Random, interior: bool | None = None) -> Scenario:
    # margins: closest distance in [2%, 98%] of R; the waypoint is at least 2%
    # of the crossing duration away from either crossing
    if interior is None:
        interior = rng.random() < 1.0 / 3.0
    route = _route(rng)
    R = rng.uniform(5.0, 50.0)
    d = R * rng.uniform(0.02, 0.98)
    radar = _radar_on(route, rng.uniform(-20.0, 20.0), rng.choice((-1, 1)) * d, R, "r1")
    t_in, t_out = entry_exit_times(route, radar.threat)
    dur = t_out - t_in
    if interior:
        t_a = t_in + dur * rng.uniform(0.02, 0.98)
    elif rng.random() < 0.5:
        t_a = t_in - dur * rng.uniform(0.02, 3.0)
    else:
        t_a = t_out + dur * rng.uniform(0.02, 3.0)
    policy = InformationPolicy({"r1": RadarPolicy(entry=True, exit=True)}, waypoint_time=t_a)
    meta = {"case": "3", "waypoint": "interior" if interior else "exterior"}
    return Scenario((radar,), ground_truth=route, policy=policy, metadata=meta)


def case4(rng: random.Random) -> Scenario:
    # margins: both chords keep their center offsets in [2%, 98%] of the radius
    while True:
        route = _route(rng)
        R1, R2 = rng.uniform(5.0, 50.0), rng.uniform(5.0, 50.0)
        p = R1 * rng.uniform(0.02, 0.98)
        q = R2 * rng.uniform(0.02, 0.98)
        a1 = math.sqrt(R1 * R1 - p * p)
        a2 = math.sqrt(R2 * R2 - q * q)
        gap = rng.uniform(0.0, 2.0) * (a1 + a2)
        s_mid1 = rng.uniform(-20.0, 20.0)
        s_mid2 = s_mid1 + a1 + gap + a2
        r1 = _radar_on(route, s_mid1, rng.choice((-1, 1)) * p, R1, "r1")
        r2 = _radar_on(route, s_mid2, rng.choice((-1, 1)) * q, R2, "r2")
        t1 = entry_exit_times(route, r1.threat)
        t2 = entry_exit_times(route, r2.threat)
        if t1 is None or t2 is None or not (t1[0] < t1[1] <= t2[0] < t2[1]):
            continue
        grant = RadarPolicy(entry=True, exit=True)
        policy = InformationPolicy({"r1": grant, "r2": grant})
        return Scenario((r1, r2), ground_truth=route, policy=policy, metadata={"case": "4"})


def bonus(rng: random.Random) -> Scenario:
    # margins: turn angle at least 0.1 rad; chord offset in [2%, 98%] of R;
    # the first leg stays clear of the threat circle
    while True:
        start = _point(rng, 50.0)
        u = _direction(rng)
        leg1 = rng.uniform(5.0, 50.0)
        turn = rng.choice((-1, 1)) * rng.uniform(0.1, 2.5)
        w = u.rotated(turn)
        B = start + u * leg1
        leg2 = rng.uniform(5.0, 50.0)
        R = rng.uniform(3.0, 30.0)
        h = R * rng.uniform(0.02, 0.98)
        half = math.sqrt(R * R - h * h)
        C = B + w * leg2
        center = C + w * half + w.perp() * (rng.choice((-1, 1)) * h)
        radar = Radar("r1", Circle(center, R))
        route = TurnTrajectory(start, u, B, w, rng.uniform(0.5, 5.0), rng.uniform(-100.0, 100.0))
        spans = route.inside_spans(radar.threat)
        if not spans or abs(spans[0][0] - (leg1 + leg2)) > 1e-9 * (1 + leg1 + leg2):
            continue
        along = min(max(u.dot(center - start), 0.0), leg1)
        if center.dist(start + u * along) <= R * 1.01:
            continue
        policy = InformationPolicy(turn_radar="r1", speed=True)
        return Scenario((radar,), ground_truth=route, policy=policy, metadata={"case": "bonus"})


def generate(case: str, seed: int) -> Scenario:
    rng = random.Random(seed)
    makers = {"1": case1, "2": case2, "3": case3, "4": case4, "bonus": bonus}
    if case not in makers:
        raise ValueError(f"unknown case {case!r}; choose from {CASES}")
    scenario = makers[case](rng)
    meta = dict(scenario.metadata)
    meta["seed"] = str(seed)
    return Scenario(scenario.radars, scenario.ground_truth, None, scenario.policy, meta)
