"""Routes from one radar's closest distance, entry and exit times, plus the
entry time into a second radar's circle.

The closest distance fixes the chord length L inside the first circle, the
crossing duration then fixes the speed, and the second entry time fixes the
path length ``dist`` from the first entrance A to the second entrance C.
Rotating or reflecting the whole picture about the first center preserves
|O1 C|, so every admissible C lies on one circle about O1; C is where that
circle meets the second threat circle, and A is recovered from C as a point on
the first circle at distance ``dist``.
"""

from __future__ import annotations

import math

from ..errors import InconsistentInput, InvalidTimes
from ..geom import DEFAULT_TOL, Circle, UnitVec2, circle_circle_intersections
from ..kinematics import (
    LinearTrajectory,
    Radar,
    chord_length_from_distance,
    closest_approach,
    entry_exit_times,
)
from .candidates import Candidate, CandidateSet, CaseTag, finalize, mismatch


def case2_residual(
    traj: LinearTrajectory,
    r1: Radar,
    d1: float,
    t_in1: float,
    t_out1: float,
    r2: Radar,
    t_in2: float,
    *,
    tol: float = DEFAULT_TOL,
) -> float:
    """Worst mismatch between the inputs and what ``traj`` would produce."""
    times1 = entry_exit_times(traj, r1.threat, tol=tol)
    times2 = entry_exit_times(traj, r2.threat, tol=tol)
    if times1 is None or times2 is None:
        return math.inf
    return max(
        mismatch(closest_approach(traj, r1.threat.center)[0], d1),
        mismatch(times1[0], t_in1),
        mismatch(times1[1], t_out1),
        mismatch(times2[0], t_in2),
    )


def solve_case2(
    r1: Radar,
    d1: float,
    t_in1: float,
    t_out1: float,
    r2: Radar,
    t_in2: float,
    *,
    tol: float = DEFAULT_TOL,
) -> CandidateSet:
    if not t_out1 > t_in1:
        raise InvalidTimes(f"first exit {t_out1} must follow first entry {t_in1}")
    if not t_in2 > t_in1:
        raise InvalidTimes(f"second entry {t_in2} must follow first entry {t_in1}")
    R1 = r1.threat.radius
    if not 0 <= d1 < R1:
        raise InconsistentInput(f"closest distance {d1} must lie in [0, {R1})")

    O1 = r1.threat.center
    chord = chord_length_from_distance(R1, d1)
    speed = chord / (t_out1 - t_in1)
    dist = speed * (t_in2 - t_in1)

    # canonical placement: chord parallel to the x axis at height d1 above O1,
    # entered at its left end; C continues the chord a distance `dist` past A
    rho = math.hypot(dist - chord / 2.0, d1)

    found = []
    for C in circle_circle_intersections(Circle(O1, rho), r2.threat, tol=tol):
        for A in circle_circle_intersections(r1.threat, Circle(C, dist), tol=tol):
            if A.dist(C) == 0.0:
                continue
            traj = LinearTrajectory(A, UnitVec2.of(C - A), speed, t_in1)
            res = case2_residual(traj, r1, d1, t_in1, t_out1, r2, t_in2, tol=tol)
            found.append(Candidate(traj, res))
    return finalize(CaseTag.CASE2, found)
