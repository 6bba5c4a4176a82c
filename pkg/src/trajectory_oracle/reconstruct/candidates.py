"""Candidate containers, residuals and route matching."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Union

from ..geom import DirectedLine
from ..kinematics import LinearTrajectory, TurnTrajectory

# Candidates whose forward-simulated observations miss the inputs by more than
# this (relative-hybrid) amount are discarded.
ACCEPT_RESIDUAL = 1e-6

NO_SOLUTION = "no_solution"
CONTINUUM_DEGENERATE = "continuum_degenerate"

Route = Union[DirectedLine, LinearTrajectory, TurnTrajectory]


class CaseTag(str, enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"
    BONUS = "bonus"


@dataclass(frozen=True)
class Candidate:
    route: Route
    residual: float


@dataclass(frozen=True)
class CandidateSet:
    case_tag: CaseTag
    candidates: tuple[Candidate, ...] = ()
    reason: str | None = None

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    @property
    def routes(self) -> list[Route]:
        return [c.route for c in self.candidates]

    @classmethod
    def empty(cls, case_tag: CaseTag, reason: str = NO_SOLUTION) -> CandidateSet:
        return cls(case_tag, (), reason)


def mismatch(predicted: float | None, observed: float) -> float:
    """Relative-hybrid error; a missing prediction is an infinite miss."""
    if predicted is None:
        return math.inf
    return abs(predicted - observed) / max(1.0, abs(observed))


def lines_match(a: DirectedLine, b: DirectedLine, tol: float = ACCEPT_RESIDUAL) -> bool:
    """Undirected-line equality: angle mod pi and offset from the origin."""
    ta, oa = a.canonical()
    tb, ob = b.canonical()
    dtheta = abs(ta - tb)
    if dtheta > math.pi / 2:
        # wrap-around near 0 / pi flips the offset sign
        dtheta = math.pi - dtheta
        ob = -ob
    return dtheta <= tol and abs(oa - ob) <= tol * max(1.0, abs(oa))


def trajectories_match(
    a: LinearTrajectory, b: LinearTrajectory, tol: float = ACCEPT_RESIDUAL
) -> bool:
    """Same position at a common reference time, same velocity."""
    t = a.anchor_time
    if a.position_at(t).dist(b.position_at(t)) > tol * max(1.0, a.anchor.magnitude()):
        return False
    if abs(a.speed - b.speed) > tol * max(1.0, a.speed):
        return False
    va, vb = a.direction * a.speed, b.direction * b.speed
    return (va - vb).norm() <= tol * max(1.0, a.speed)


def turns_match(a: TurnTrajectory, b: TurnTrajectory, tol: float = ACCEPT_RESIDUAL) -> bool:
    scale = max(1.0, a.turn_point.magnitude())
    if a.start.dist(b.start) > tol * scale or a.turn_point.dist(b.turn_point) > tol * scale:
        return False
    if abs(a.start_time - b.start_time) > tol * max(1.0, abs(a.start_time)):
        return False
    if abs(a.speed - b.speed) > tol * max(1.0, a.speed):
        return False
    if a.leg1_direction.vec.dist(b.leg1_direction.vec) > tol:
        return False
    # a turn at the start point makes the first heading immaterial; the
    # second leg always matters
    return a.leg2_direction.vec.dist(b.leg2_direction.vec) <= tol


def routes_match(a: Route, b: Route, tol: float = ACCEPT_RESIDUAL) -> bool:
    if isinstance(a, TurnTrajectory) and isinstance(b, TurnTrajectory):
        return turns_match(a, b, tol)
    if isinstance(a, LinearTrajectory) and isinstance(b, LinearTrajectory):
        return trajectories_match(a, b, tol)
    la = a.line if isinstance(a, LinearTrajectory) else a
    lb = b.line if isinstance(b, LinearTrajectory) else b
    if isinstance(la, DirectedLine) and isinstance(lb, DirectedLine):
        return lines_match(la, lb, tol)
    return False


def dedup(candidates: Iterable[Candidate], tol: float = 1e-9) -> list[Candidate]:
    """Drop candidates equal to an earlier one, keeping the lower residual."""
    kept: list[Candidate] = []
    for c in sorted(candidates, key=lambda c: c.residual):
        if not any(routes_match(c.route, k.route, tol) for k in kept):
            kept.append(c)
    return kept


def route_sort_key(route: Route) -> tuple:
    if isinstance(route, DirectedLine):
        return route.canonical()
    if isinstance(route, LinearTrajectory):
        return (*route.line.canonical(), route.direction.angle, route.speed)
    return (route.turn_point.x, route.turn_point.y, route.leg2_direction.angle)


def finalize(case_tag: CaseTag, candidates: Iterable[Candidate], tol: float = 1e-9) -> CandidateSet:
    """Filter by residual, deduplicate and order deterministically."""
    ok = [c for c in candidates if c.residual < ACCEPT_RESIDUAL]
    kept = sorted(dedup(ok, tol), key=lambda c: route_sort_key(c.route))
    if not kept:
        return CandidateSet.empty(case_tag)
    return CandidateSet(case_tag, tuple(kept))


def matches_any(truth: Route, cands: CandidateSet, tol: float = ACCEPT_RESIDUAL) -> bool:
    return any(routes_match(truth, c.route, tol) for c in cands)
