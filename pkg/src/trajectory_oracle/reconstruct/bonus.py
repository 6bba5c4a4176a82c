"""The one-turn route.

Known: the start A and its time, the first heading, the speed, the path length
d from A to the threat entrance and the chord length inside the circle.  If
the route had not turned, a same-radius circle placed on the straight
continuation would reproduce both lengths; call it the reference circle.  The
real route is the straight one with everything past the turn point B rotated
about B, so the rotation carries the reference center onto the radar and B
sits on the perpendicular bisector of those two centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ChordTooLong
from ..geom import (
    DEFAULT_TOL,
    Circle,
    DirectedLine,
    Point2,
    UnitVec2,
    line_line_intersection,
    perpendicular_bisector,
    rotate_about,
    scene_eps,
)
from ..kinematics import TurnTrajectory
from .candidates import (
    CONTINUUM_DEGENERATE,
    NO_SOLUTION,
    Candidate,
    CandidateSet,
    CaseTag,
    finalize,
    mismatch,
)


@dataclass(frozen=True)
class BonusInput:
    start: Point2
    leg1_direction: UnitVec2
    total_distance_to_entry: float
    inner_chord: float
    threat: Circle

    def __post_init__(self):
        if not self.total_distance_to_entry > 0:
            raise ValueError("distance to the entrance must be positive")
        if self.inner_chord < 0:
            raise ValueError("inner chord must be non-negative")


def construct_reference_circle(inp: BonusInput, *, tol: float = DEFAULT_TOL) -> list[Circle]:
    """Same-radius circles entered at path length d along the unturned ray,
    cutting it in a chord of the observed length.  One circle when the chord
    is a diameter, two otherwise."""
    R = inp.threat.radius
    half = inp.inner_chord / 2.0
    eps = scene_eps(inp.threat, inp.start, inp.total_distance_to_entry, tol=tol)
    if half > R + eps:
        raise ChordTooLong(f"chord {inp.inner_chord} exceeds diameter {2 * R}")
    u = inp.leg1_direction
    mid = inp.start + u * (inp.total_distance_to_entry + half)
    h = math.sqrt(max((R - half) * (R + half), 0.0))
    if h <= eps:
        return [Circle(mid, R)]
    n = u.perp()
    return [Circle(mid + n * h, R), Circle(mid - n * h, R)]


def bonus_residual(route: TurnTrajectory, inp: BonusInput, *, tol: float = DEFAULT_TOL) -> float:
    spans = route.inside_spans(inp.threat, tol=tol)
    if not spans:
        return math.inf
    lo, hi = spans[0]
    return max(
        mismatch(lo, inp.total_distance_to_entry),
        mismatch(hi - lo, inp.inner_chord),
    )


def solve_bonus(
    inp: BonusInput, speed: float, start_time: float = 0.0, *, tol: float = DEFAULT_TOL
) -> CandidateSet:
    if not speed > 0:
        raise ValueError(f"speed must be positive, got {speed}")
    eps = scene_eps(inp.threat, inp.start, inp.total_distance_to_entry, tol=tol)
    ray = DirectedLine(inp.start, inp.leg1_direction)
    target = inp.threat.center

    found = []
    continuum = False
    for ref in construct_reference_circle(inp, tol=tol):
        if ref.center.dist(target) <= eps:
            # the radar already sits where a straight route would need it
            straight = TurnTrajectory(
                inp.start, inp.leg1_direction, inp.start, inp.leg1_direction, speed, start_time
            )
            found.append(Candidate(straight, bonus_residual(straight, inp, tol=tol)))
            continue
        bisector = perpendicular_bisector(target, ref.center, tol=tol)
        s = line_line_intersection(ray, bisector)
        if s is None:
            if abs(bisector.signed_distance(inp.start)) <= eps:
                continuum = True
            continue
        if s < -eps or s >= inp.total_distance_to_entry:
            continue
        s = max(s, 0.0)
        B = ray.point_at(s)
        angle = math.atan2((target - B).y, (target - B).x) - math.atan2(
            (ref.center - B).y, (ref.center - B).x
        )
        # the reference entrance, carried by the same rotation, fixes leg two
        entrance = rotate_about(ray.point_at(inp.total_distance_to_entry), B, angle)
        leg2 = UnitVec2.of(entrance - B)
        route = TurnTrajectory(inp.start, inp.leg1_direction, B, leg2, speed, start_time)
        found.append(Candidate(route, bonus_residual(route, inp, tol=tol)))
    result = finalize(CaseTag.BONUS, found)
    if not result.candidates and continuum:
        return CandidateSet.empty(CaseTag.BONUS, CONTINUUM_DEGENERATE)
    return result if result.candidates else CandidateSet.empty(CaseTag.BONUS, NO_SOLUTION)


def turn_entrance(route: TurnTrajectory, inp: BonusInput) -> Point2 | None:
    """Point where ``route`` first enters the threat circle."""
    spans = route.inside_spans(inp.threat)
    if not spans:
        return None
    lo = spans[0][0]
    if lo <= route.leg1_length:
        return route.start + route.leg1_direction * lo
    return route.turn_point + route.leg2_direction * (lo - route.leg1_length)
