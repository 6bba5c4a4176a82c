"""Routes from one radar's entry and exit times plus one timed waypoint.

Let A be the waypoint, X the entrance and Y the exit.  Constant speed makes
|AY| / |AX| equal the ratio of the elapsed times, so Y is the image of X under
the dilation about A with that ratio, taken negative when A lies between X
and Y.  Y is therefore an intersection of the threat circle with its own
dilated copy, and X is the other point where line AY meets the threat circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import CoincidentCircles, DegenerateWaypoint, InvalidTimes
from ..geom import (
    DEFAULT_TOL,
    DirectedLine,
    Point2,
    UnitVec2,
    circle_circle_intersections,
    circle_line_intersections,
    homothety_circle,
    scene_eps,
)
from ..kinematics import LinearTrajectory, Radar, TimedWaypoint, entry_exit_times
from .candidates import (
    CONTINUUM_DEGENERATE,
    Candidate,
    CandidateSet,
    CaseTag,
    finalize,
    mismatch,
)


@dataclass(frozen=True)
class WaypointTiming:
    """Elapsed times from the waypoint to the entrance (x) and to the exit (y)."""

    x: float
    y: float
    interior: bool

    @property
    def ratio(self) -> float:
        """Signed dilation ratio mapping the entrance onto the exit."""
        r = self.y / self.x
        return -r if self.interior else r


def waypoint_timing(t_in: float, t_out: float, t_a: float) -> WaypointTiming:
    if not t_in < t_out:
        raise InvalidTimes(f"entry {t_in} must precede exit {t_out}")
    eps_t = 1e-12 * (1.0 + max(abs(t_in), abs(t_out), abs(t_a)))
    if abs(t_a - t_in) <= eps_t or abs(t_a - t_out) <= eps_t:
        raise DegenerateWaypoint(f"waypoint time {t_a} coincides with a boundary crossing")
    interior = t_in < t_a < t_out
    return WaypointTiming(abs(t_a - t_in), abs(t_a - t_out), interior)


def _other_intersection(radar: Radar, a: Point2, y: Point2, tol: float) -> Point2 | None:
    if a.dist(y) == 0.0:
        return None
    pts = circle_line_intersections(radar.threat, DirectedLine.through(a, y), tol=tol)
    if not pts:
        return None
    return max(pts, key=lambda p: p.dist(y))


def solve_case3(
    radar: Radar,
    t_in: float,
    t_out: float,
    waypoint: TimedWaypoint,
    *,
    tol: float = DEFAULT_TOL,
) -> CandidateSet:
    timing = waypoint_timing(t_in, t_out, waypoint.time)
    A = waypoint.position
    image = homothety_circle(radar.threat, A, timing.ratio)
    try:
        exits = circle_circle_intersections(radar.threat, image, tol=tol)
    except CoincidentCircles:
        # waypoint at the center with equal times: every diameter fits
        return CandidateSet.empty(CaseTag.CASE3, CONTINUUM_DEGENERATE)

    eps = scene_eps(radar.threat, A, tol=tol)
    found = []
    for Y in exits:
        X = _other_intersection(radar, A, Y, tol)
        if X is None or X.dist(Y) <= eps:
            continue
        if timing.interior:
            direction = UnitVec2.of(Y - A)
            speed = A.dist(Y) / timing.y
        elif waypoint.time < t_in:
            direction = UnitVec2.of(X - A)
            speed = A.dist(X) / timing.x
        else:
            direction = UnitVec2.of(A - X)
            speed = A.dist(X) / timing.x
        if not speed > 0:
            continue
        traj = LinearTrajectory(A, direction, speed, waypoint.time)
        found.append(Candidate(traj, case3_residual(traj, radar, t_in, t_out, tol=tol)))
    return finalize(CaseTag.CASE3, found)


def case3_residual(
    traj: LinearTrajectory, radar: Radar, t_in: float, t_out: float, *, tol: float = DEFAULT_TOL
) -> float:
    times = entry_exit_times(traj, radar.threat, tol=tol)
    if times is None:
        return math.inf
    return max(mismatch(times[0], t_in), mismatch(times[1], t_out))


def entry_exit_points(traj: LinearTrajectory, radar: Radar) -> tuple[Point2, Point2]:
    """(X, Y) for a candidate route; used to check the distance-ratio law."""
    times = entry_exit_times(traj, radar.threat)
    if times is None:
        raise ValueError("route misses the threat circle")
    return traj.position_at(times[0]), traj.position_at(times[1])
