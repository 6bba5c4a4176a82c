"""Routes from entry and exit times at two radars.

Call the four crossings A, B (first circle) and C, D (second circle).  Constant
speed turns the times into the ratios x = BC/AB and y = CD/AB.  With p the
distance from the first center to chord AB and a = sqrt(R1^2 - p^2) the half
chord, everything else follows:

    CD / 2 = y a,       q = sqrt(R2^2 - (y a)^2),       s = a (1 + 2x + y)

where q is the offset of the second center from chord CD and s is the
distance between the chord midpoints.  Putting the centers on the same side
of the route or on opposite sides gives

    s^2 + (p -/+ q)^2 = D^2

for the known center distance D, a single equation in p.  The equation is
scanned for sign changes and each bracket is refined with Brent's method.  Internally p is
written as R1 cos(theta) so that chords near tangency stay well conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..errors import InvalidTimes
from ..geom import DEFAULT_TOL, Point2, UnitVec2
from ..kinematics import LinearTrajectory, Radar, entry_exit_times
from .candidates import Candidate, CandidateSet, CaseTag, finalize, mismatch

SAMPLES = 2048
# a root whose half chord is below this fraction of R1 is a tangent touch,
# which carries no speed information
MIN_HALF_CHORD = 1e-9


@dataclass(frozen=True)
class Case4Ratios:
    x: float  # BC / AB
    y: float  # CD / AB

    @classmethod
    def from_times(cls, t_a: float, t_b: float, t_c: float, t_d: float) -> Case4Ratios:
        if not (t_a < t_b <= t_c < t_d):
            raise InvalidTimes(f"need t_A < t_B <= t_C < t_D, got {(t_a, t_b, t_c, t_d)}")
        ab = t_b - t_a
        return cls((t_c - t_b) / ab, (t_d - t_c) / ab)


@dataclass(frozen=True)
class Case4Branch:
    p: float  # offset of center 1 from chord AB
    q: float  # offset of center 2 from chord CD
    s: float  # distance between the chord midpoints
    same_side: bool
    direction_flip: bool
    half_chord: float


class _Equation:
    """Center-distance residual as a function of theta, for one branch."""

    def __init__(self, R1: float, R2: float, D: float, ratios: Case4Ratios, same_side: bool):
        self.R1, self.R2, self.D = R1, R2, D
        self.x, self.y = ratios.x, ratios.y
        self.sign = -1.0 if same_side else 1.0
        limit = R2 / (self.y * R1)
        self.theta_max = math.pi / 2 if limit >= 1.0 else math.asin(limit)

    def parts(self, theta):
        a = self.R1 * np.sin(theta)
        p = self.R1 * np.cos(theta)
        ya = self.y * a
        q = np.sqrt(np.maximum((self.R2 - ya) * (self.R2 + ya), 0.0))
        s = a * (1.0 + 2.0 * self.x + self.y)
        return a, p, q, s

    def __call__(self, theta):
        a, p, q, s = self.parts(theta)
        return s * s + (p + self.sign * q) ** 2 - self.D * self.D


def _root(f, lo: float, hi: float) -> float:
    return brentq(f, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps)


def _argmin(g, lo: float, hi: float) -> float:
    res = minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
    return float(res.x)


def branch_roots(eq: _Equation, samples: int = SAMPLES) -> list[float]:
    """Roots of one branch equation in theta, ascending."""
    thetas = np.linspace(0.0, eq.theta_max, samples)
    vals = eq(thetas)
    f = lambda t: float(eq(t))  # noqa: E731
    roots = [float(t) for t in thetas[vals == 0.0]]
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        roots.append(_root(f, float(thetas[i]), float(thetas[i + 1])))

    # grazing roots: a local extremum of f that approaches zero without a
    # sign change between samples
    scale = eq.D * eq.D + eq.R1 * eq.R1
    mag = np.abs(vals)
    one_sign = (vals[:-2] * vals[1:-1] > 0) & (vals[1:-1] * vals[2:] > 0)
    dips = one_sign & (mag[1:-1] <= mag[:-2]) & (mag[1:-1] <= mag[2:])
    for i in np.nonzero(dips)[0] + 1:
        v = vals[i - 1 : i + 2]
        sgn = 1.0 if v[1] > 0 else -1.0
        lo, hi = float(thetas[i - 1]), float(thetas[i + 1])
        t_min = _argmin(lambda t: sgn * f(t), lo, hi)
        f_min = f(t_min)
        if f_min * sgn < 0:
            roots.append(_root(f, lo, t_min))
            roots.append(_root(f, t_min, hi))
        elif abs(f_min) <= 1e-12 * scale:
            roots.append(t_min)
    return sorted(roots)


def _place(
    O1: Point2, O2: Point2, branch: Case4Branch
) -> tuple[Point2, UnitVec2]:
    """Entrance point A and heading for a branch solution."""
    s1 = -1.0 if branch.direction_flip else 1.0
    s2 = s1 if branch.same_side else -s1
    # local frame: route along +x, midpoint of AB at the origin
    local = Point2(branch.s, s2 * branch.q - s1 * branch.p)
    actual = O2 - O1
    phi = math.atan2(actual.y, actual.x) - math.atan2(local.y, local.x)
    u = UnitVec2.from_angle(phi)
    n = u.perp()
    P = O1 - n.vec * (s1 * branch.p)
    return P - u.vec * branch.half_chord, u


def case4_residual(
    traj: LinearTrajectory,
    r1: Radar,
    r2: Radar,
    times: tuple[float, float, float, float],
    *,
    tol: float = DEFAULT_TOL,
) -> float:
    first = entry_exit_times(traj, r1.threat, tol=tol)
    second = entry_exit_times(traj, r2.threat, tol=tol)
    if first is None or second is None:
        return math.inf
    predicted = (*first, *second)
    return max(mismatch(p, t) for p, t in zip(predicted, times))


def case4_branches(r1: Radar, r2: Radar, ratios: Case4Ratios) -> list[Case4Branch]:
    R1, R2 = r1.threat.radius, r2.threat.radius
    D = r1.threat.center.dist(r2.threat.center)
    out = []
    if D == 0.0:
        return out
    for same_side in (True, False):
        eq = _Equation(R1, R2, D, ratios, same_side)
        for theta in branch_roots(eq):
            a, p, q, s = (float(v) for v in eq.parts(theta))
            if a <= MIN_HALF_CHORD * R1:
                continue
            for flip in (False, True):
                out.append(Case4Branch(p, q, s, same_side, flip, a))
    return out


def solve_case4(
    r1: Radar,
    t_a: float,
    t_b: float,
    r2: Radar,
    t_c: float,
    t_d: float,
    *,
    tol: float = DEFAULT_TOL,
) -> CandidateSet:
    ratios = Case4Ratios.from_times(t_a, t_b, t_c, t_d)
    O1, O2 = r1.threat.center, r2.threat.center
    times = (t_a, t_b, t_c, t_d)
    found = []
    for branch in case4_branches(r1, r2, ratios):
        A, u = _place(O1, O2, branch)
        speed = 2.0 * branch.half_chord / (t_b - t_a)
        traj = LinearTrajectory(A, u, speed, t_a)
        found.append(Candidate(traj, case4_residual(traj, r1, r2, times, tol=tol)))
    return finalize(CaseTag.CASE4, found)
