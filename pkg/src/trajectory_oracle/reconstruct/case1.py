"""Routes from the closest distances to two radars.

The route's line is tangent to the circle of radius d1 about the first radar
and to the circle of radius d2 about the second, so the candidates are the
common tangents of those two circles: at most four, mirror-symmetric across
the line through the radars.
"""

from __future__ import annotations

from ..errors import CoincidentCenters, OutOfRange
from ..geom import DEFAULT_TOL, Circle, Point2, common_tangents, point_line_distance, scene_eps
from .candidates import Candidate, CandidateSet, CaseTag, finalize, mismatch


def solve_case1(
    c1_center: Point2,
    d1: float,
    c2_center: Point2,
    d2: float,
    *,
    tol: float = DEFAULT_TOL,
) -> CandidateSet:
    if d1 < 0 or d2 < 0:
        raise OutOfRange(f"closest distances must be non-negative: {d1}, {d2}")
    if c1_center.dist(c2_center) <= scene_eps(c1_center, c2_center, tol=tol):
        raise CoincidentCenters(f"radars share the center {c1_center}")
    found = []
    for tl in common_tangents(Circle(c1_center, d1), Circle(c2_center, d2), tol=tol):
        residual = max(
            mismatch(point_line_distance(c1_center, tl.line), d1),
            mismatch(point_line_distance(c2_center, tl.line), d2),
        )
        found.append(Candidate(tl.line, residual))
    return finalize(CaseTag.CASE1, found)
