"""Plane primitives and the ruler-and-compass constructions built on them.

Tolerance policy
----------------
All coincidence and tangency decisions use one hybrid epsilon,

    eps = tol * (1 + largest coordinate magnitude in the inputs)

with ``tol = DEFAULT_TOL = 1e-9`` unless a caller overrides it.  Objects that
are within ``eps`` of tangency are treated as tangent and produce exactly one
contact point.  Multi-result outputs are always returned in a deterministic
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import (
    CoincidentCircles,
    CoincidentPoints,
    DegeneratePoint,
    ZeroRatio,
)

DEFAULT_TOL = 1e-9
# Angle threshold for "same undirected line"; deliberately not scaled.
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> Point2:
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def dot(self, other: Point2 | UnitVec2) -> float:
        ox, oy = other
        return self.x * ox + self.y * oy

    def cross(self, other: Point2 | UnitVec2) -> float:
        ox, oy = other
        return self.x * oy - self.y * ox

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def magnitude(self) -> float:
        """Largest absolute coordinate, used for tolerance scaling."""
        return max(abs(self.x), abs(self.y))


@dataclass(frozen=True)
class UnitVec2:
    ux: float
    uy: float

    def __post_init__(self):
        if abs(self.ux * self.ux + self.uy * self.uy - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector: ({self.ux}, {self.uy})")

    @classmethod
    def of(cls, v: Point2 | tuple[float, float]) -> UnitVec2:
        """Normalize an arbitrary non-zero vector."""
        x, y = v
        n = math.hypot(x, y)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        x, y = x / n, y / n
        # hypot can leave the squared norm off by a few ulps
        n2 = x * x + y * y
        if abs(n2 - 1.0) > 1e-15:
            s = 1.0 / math.sqrt(n2)
            x, y = x * s, y * s
        return cls(x, y)

    @classmethod
    def from_angle(cls, theta: float) -> UnitVec2:
        return cls.of((math.cos(theta), math.sin(theta)))

    def __iter__(self):
        yield self.ux
        yield self.uy

    def __neg__(self) -> UnitVec2:
        return UnitVec2(-self.ux, -self.uy)

    def __mul__(self, k: float) -> Point2:
        return Point2(self.ux * k, self.uy * k)

    __rmul__ = __mul__

    @property
    def vec(self) -> Point2:
        return Point2(self.ux, self.uy)

    @property
    def angle(self) -> float:
        return math.atan2(self.uy, self.ux)

    def perp(self) -> UnitVec2:
        """Counter-clockwise normal."""
        return UnitVec2(-self.uy, self.ux)

    def dot(self, other) -> float:
        ox, oy = other
        return self.ux * ox + self.uy * oy

    def cross(self, other) -> float:
        ox, oy = other
        return self.ux * oy - self.uy * ox

    def rotated(self, angle: float) -> UnitVec2:
        c, s = math.cos(angle), math.sin(angle)
        return UnitVec2.of((c * self.ux - s * self.uy, s * self.ux + c * self.uy))


@dataclass(frozen=True)
class DirectedLine:
    origin: Point2
    direction: UnitVec2

    @classmethod
    def through(cls, p: Point2, q: Point2) -> DirectedLine:
        return cls(p, UnitVec2.of(q - p))

    def point_at(self, s: float) -> Point2:
        return self.origin + self.direction * s

    def param_of(self, p: Point2) -> float:
        """Signed parameter of the orthogonal projection of ``p``."""
        return self.direction.dot(p - self.origin)

    def signed_distance(self, p: Point2) -> float:
        """Positive when ``p`` lies to the left of the direction of travel."""
        return self.direction.cross(p - self.origin)

    def foot(self, p: Point2) -> Point2:
        return self.point_at(self.param_of(p))

    def reversed(self) -> DirectedLine:
        return DirectedLine(self.origin, -self.direction)

    def shifted(self, offset: float) -> DirectedLine:
        """Translate along the left normal by ``offset``."""
        return DirectedLine(self.origin + self.direction.perp() * offset, self.direction)

    def canonical(self) -> tuple[float, float]:
        """(angle in [0, pi), signed offset of the coordinate origin).

        Direction sign is dropped, so both orientations of a line share a key.
        """
        ux, uy = self.direction
        if uy < 0 or (uy == 0 and ux < 0):
            ux, uy = -ux, -uy
        theta = math.atan2(uy, ux)
        if theta >= math.pi:
            # (-1, tiny) rounds to pi: wrap and flip so the offset sign agrees
            theta -= math.pi
            ux, uy = -ux, -uy
        # offset of the line measured along the normal (-uy, ux)
        offset = -uy * self.origin.x + ux * self.origin.y
        return theta, offset


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"invalid radius {self.radius}")

    def magnitude(self) -> float:
        return self.center.magnitude() + self.radius

    def contains(self, p: Point2, eps: float = 0.0) -> bool:
        return p.dist(self.center) <= self.radius + eps


TangentTag = Literal["external", "internal"]


@dataclass(frozen=True)
class TaggedLine:
    line: DirectedLine
    tag: TangentTag


def scene_eps(*objs, tol: float = DEFAULT_TOL) -> float:
    """Hybrid absolute/relative epsilon for a set of points, circles, lines or scalars."""
    m = 0.0
    for o in objs:
        if isinstance(o, (int, float)):
            m = max(m, abs(o))
        elif isinstance(o, (Point2, Circle)):
            m = max(m, o.magnitude())
        elif isinstance(o, DirectedLine):
            m = max(m, o.origin.magnitude())
        else:
            m = max(m, max((abs(v) for v in o), default=0.0))
    return tol * (1.0 + m)


def _lex(points: Iterable[Point2]) -> list[Point2]:
    return sorted(points, key=lambda p: (p.x, p.y))


def point_line_distance(p: Point2, line: DirectedLine) -> float:
    return abs(line.signed_distance(p))


def same_undirected_line(a: DirectedLine, b: DirectedLine, eps: float) -> bool:
    if abs(a.direction.cross(b.direction)) > ANGLE_TOL:
        return False
    return point_line_distance(b.origin, a) <= eps and point_line_distance(a.origin, b) <= eps


def circle_line_intersections(
    c: Circle, line: DirectedLine, *, tol: float = DEFAULT_TOL
) -> list[Point2]:
    """Points where ``line`` meets ``c``, in increasing line parameter."""
    eps = scene_eps(c, line, tol=tol)
    s0 = line.param_of(c.center)
    h = abs(line.signed_distance(c.center))
    if h > c.radius + eps:
        return []
    if abs(h - c.radius) <= eps:
        return [line.point_at(s0)]
    half = math.sqrt((c.radius - h) * (c.radius + h))
    return [line.point_at(s0 - half), line.point_at(s0 + half)]


def circle_circle_intersections(
    c1: Circle, c2: Circle, *, tol: float = DEFAULT_TOL
) -> list[Point2]:
    """Intersections of two circle boundaries, lexicographically ordered.

    Near-tangent pairs (within eps) report the single contact point.
    """
    eps = scene_eps(c1, c2, tol=tol)
    delta = c2.center - c1.center
    d = delta.norm()
    if d <= eps:
        if abs(c1.radius - c2.radius) <= eps:
            raise CoincidentCircles(f"{c1} and {c2} coincide")
        return []
    r1, r2 = c1.radius, c2.radius
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps:
        return []
    u = delta * (1.0 / d)
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    if abs(d - (r1 + r2)) <= eps or abs(d - abs(r1 - r2)) <= eps:
        return [c1.center + u * a]
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    base = c1.center + u * a
    n = Point2(-u.y, u.x)
    return _lex([base + n * h, base - n * h])


def tangent_lines_from_point(
    p: Point2, c: Circle, *, tol: float = DEFAULT_TOL
) -> list[DirectedLine]:
    """Lines through ``p`` tangent to ``c``.

    Each line has origin ``p``; two lines are ordered by direction angle.  A
    point on the circle gives the single tangent there, a point inside gives
    nothing.  For a zero-radius circle the one "tangent" is the line through
    ``p`` and the center.
    """
    eps = scene_eps(p, c, tol=tol)
    to_c = c.center - p
    d = to_c.norm()
    if c.radius <= eps:
        if d <= eps:
            raise DegeneratePoint(f"{p} coincides with point-circle center")
        return [DirectedLine(p, UnitVec2.of(to_c))]
    if d < c.radius - eps:
        return []
    toward = UnitVec2.of(to_c)
    if abs(d - c.radius) <= eps:
        return [DirectedLine(p, toward.perp())]
    alpha = math.asin(c.radius / d)
    lines = [DirectedLine(p, toward.rotated(alpha)), DirectedLine(p, toward.rotated(-alpha))]
    return sorted(lines, key=lambda l: l.direction.angle)


def _offset_tangent(aux_tangent: DirectedLine, far: Point2, shift: float, away: bool) -> DirectedLine:
    # move the auxiliary tangent perpendicular to itself by `shift`,
    # away from or towards the point `far`
    side = math.copysign(1.0, aux_tangent.signed_distance(far))
    k = -side if away else side
    return aux_tangent.shifted(k * shift)


def common_tangents(c1: Circle, c2: Circle, *, tol: float = DEFAULT_TOL) -> list[TaggedLine]:
    """Common tangent lines of two circles, tagged external or internal.

    Built by shrinking one circle to an auxiliary circle, drawing tangents to it
    from the other center, then translating those lines back out.  The
    equal-radius external pair is produced directly as the two parallels.

    Counts follow the classical table: 4 (disjoint), 3 (externally tangent),
    2 (overlapping), 1 (internally tangent), 0 (nested).  Zero-radius circles
    are allowed; duplicate lines (as for two point-circles) are collapsed.
    """
    eps = scene_eps(c1, c2, tol=tol)
    d = c1.center.dist(c2.center)
    if d <= eps:
        if abs(c1.radius - c2.radius) <= eps and c1.radius > eps:
            raise CoincidentCircles(f"{c1} and {c2} coincide")
        if c1.radius <= eps and c2.radius <= eps:
            raise CoincidentCircles("two point-circles at the same place")
        # concentric with different radii: nested, no tangents
        return []

    out: list[TaggedLine] = []

    # external
    if abs(c2.radius - c1.radius) <= eps:
        axis = DirectedLine.through(c1.center, c2.center)
        r = 0.5 * (c1.radius + c2.radius)
        for k in (1.0, -1.0):
            out.append(TaggedLine(axis.shifted(k * r), "external"))
    else:
        small, big = (c1, c2) if c1.radius < c2.radius else (c2, c1)
        aux = Circle(big.center, big.radius - small.radius)
        for t in tangent_lines_from_point(small.center, aux, tol=tol):
            out.append(TaggedLine(_offset_tangent(t, big.center, small.radius, away=True), "external"))

    # internal
    aux = Circle(c2.center, c2.radius + c1.radius)
    for t in tangent_lines_from_point(c1.center, aux, tol=tol):
        if aux.radius <= eps:
            shifted = t
        else:
            shifted = _offset_tangent(t, c2.center, c1.radius, away=False)
        out.append(TaggedLine(shifted, "internal"))

    unique: list[TaggedLine] = []
    for tl in out:
        if not any(same_undirected_line(tl.line, u.line, eps) for u in unique):
            unique.append(tl)
    return sorted(unique, key=lambda tl: (tl.tag, tl.line.canonical()))


def homothety_point(p: Point2, center: Point2, ratio: float) -> Point2:
    return center + (p - center) * ratio


def homothety_circle(c: Circle, center: Point2, ratio: float) -> Circle:
    """Image of ``c`` under the dilation about ``center`` with signed ``ratio``."""
    if ratio == 0.0 or not math.isfinite(ratio):
        raise ZeroRatio(f"homothety ratio must be finite and non-zero, got {ratio}")
    return Circle(homothety_point(c.center, center, ratio), abs(ratio) * c.radius)


def perpendicular_bisector(p: Point2, q: Point2, *, tol: float = DEFAULT_TOL) -> DirectedLine:
    if p.dist(q) <= scene_eps(p, q, tol=tol):
        raise CoincidentPoints(f"{p} and {q} coincide")
    mid = (p + q) * 0.5
    return DirectedLine(mid, UnitVec2.of(q - p).perp())


def rotate_about(p: Point2, center: Point2, angle: float) -> Point2:
    c, s = math.cos(angle), math.sin(angle)
    v = p - center
    return Point2(center.x + c * v.x - s * v.y, center.y + s * v.x + c * v.y)


def line_line_intersection(a: DirectedLine, b: DirectedLine) -> float | None:
    """Parameter along ``a`` where it meets ``b``; None when parallel."""
    den = a.direction.cross(b.direction)
    if abs(den) <= ANGLE_TOL:
        return None
    return (b.origin - a.origin).cross(b.direction) / den


def reflect_across(p: Point2, line: DirectedLine) -> Point2:
    foot = line.foot(p)
    return foot * 2.0 - p
