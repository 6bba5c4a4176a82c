"""Inverse solvers: observation fragments in, finite candidate route sets out."""

from __future__ import annotations

from typing import Sequence

from ..errors import InsufficientObservations
from ..geom import DEFAULT_TOL
from ..kinematics import ObservationSet, Radar, RadarObservation
from .bonus import BonusInput, bonus_residual, construct_reference_circle, solve_bonus
from .candidates import (
    ACCEPT_RESIDUAL,
    CONTINUUM_DEGENERATE,
    NO_SOLUTION,
    Candidate,
    CandidateSet,
    CaseTag,
    lines_match,
    matches_any,
    routes_match,
)
from .case1 import solve_case1
from .case2 import solve_case2
from .case3 import WaypointTiming, solve_case3, waypoint_timing
from .case4 import Case4Branch, Case4Ratios, solve_case4
from .oracle import case4_oracle

CASE_TAGS = {
    "1": CaseTag.CASE1,
    "2": CaseTag.CASE2,
    "3": CaseTag.CASE3,
    "4": CaseTag.CASE4,
    "bonus": CaseTag.BONUS,
}


def _pick(
    radars: Sequence[Radar],
    obs: ObservationSet,
    fields: tuple[str, ...],
    exclude: tuple[str, ...] = (),
) -> tuple[Radar, RadarObservation] | None:
    for radar in radars:
        if radar.id in exclude:
            continue
        o = obs.get(radar.id)
        if o is not None and all(getattr(o, f) is not None for f in fields):
            return radar, o
    return None


def _need(case: str, what: str):
    raise InsufficientObservations(case, [what])


def reconstruct(
    case: str, radars: Sequence[Radar], obs: ObservationSet, *, tol: float = DEFAULT_TOL
) -> CandidateSet:
    """Select the inputs ``case`` needs from ``obs`` (first qualifying radars in
    scenario order) and run that solver."""
    if case == "1":
        first = _pick(radars, obs, ("closest_distance",))
        if first is None:
            _need(case, "closest_distance for two radars")
        second = _pick(radars, obs, ("closest_distance",), (first[0].id,))
        if second is None:
            _need(case, "closest_distance for a second radar")
        (r1, o1), (r2, o2) = first, second
        return solve_case1(
            r1.threat.center, o1.closest_distance, r2.threat.center, o2.closest_distance, tol=tol
        )
    if case == "2":
        first = _pick(radars, obs, ("closest_distance", "entry_time", "exit_time"))
        if first is None:
            _need(case, "closest_distance, entry_time and exit_time for one radar")
        r1, o1 = first
        second = _pick(radars, obs, ("entry_time",), (r1.id,))
        if second is None:
            _need(case, "entry_time for a second radar")
        r2, o2 = second
        return solve_case2(
            r1, o1.closest_distance, o1.entry_time, o1.exit_time, r2, o2.entry_time, tol=tol
        )
    if case == "3":
        missing = []
        first = _pick(radars, obs, ("entry_time", "exit_time"))
        if first is None:
            missing.append("entry_time and exit_time for one radar")
        if obs.waypoint is None:
            missing.append("waypoint")
        if missing:
            raise InsufficientObservations(case, missing)
        radar, o = first
        return solve_case3(radar, o.entry_time, o.exit_time, obs.waypoint, tol=tol)
    if case == "4":
        timed = [
            (r, obs.get(r.id))
            for r in radars
            if obs.get(r.id) is not None
            and obs.get(r.id).entry_time is not None
            and obs.get(r.id).exit_time is not None
        ]
        if len(timed) < 2:
            _need(case, "entry_time and exit_time for two radars")
        (r1, o1), (r2, o2) = sorted(timed[:2], key=lambda ro: ro[1].entry_time)
        return solve_case4(
            r1, o1.entry_time, o1.exit_time, r2, o2.entry_time, o2.exit_time, tol=tol
        )
    if case == "bonus":
        missing = []
        if obs.turn is None:
            missing.append("turn")
        if obs.speed is None:
            missing.append("speed")
        if missing:
            raise InsufficientObservations(case, missing)
        t = obs.turn
        radar = next((r for r in radars if r.id == t.radar_id), None)
        if radar is None:
            _need(case, f"radar {t.radar_id!r}")
        inp = BonusInput(
            t.start, t.leg1_direction, t.distance_to_entry, t.inner_chord, radar.threat
        )
        return solve_bonus(inp, obs.speed, t.start_time, tol=tol)
    raise ValueError(f"unknown case {case!r}")


__all__ = [
    "ACCEPT_RESIDUAL",
    "BonusInput",
    "CASE_TAGS",
    "CONTINUUM_DEGENERATE",
    "Candidate",
    "CandidateSet",
    "Case4Branch",
    "Case4Ratios",
    "CaseTag",
    "NO_SOLUTION",
    "WaypointTiming",
    "bonus_residual",
    "case4_oracle",
    "construct_reference_circle",
    "lines_match",
    "matches_any",
    "reconstruct",
    "routes_match",
    "solve_bonus",
    "solve_case1",
    "solve_case2",
    "solve_case3",
    "solve_case4",
    "waypoint_timing",
]
