import math

import pytest

from trajectory_oracle.errors import CoincidentCircles, CoincidentPoints, DegeneratePoint, ZeroRatio
from trajectory_oracle.geom import (
    Circle,
    DirectedLine,
    Point2,
    UnitVec2,
    circle_circle_intersections,
    circle_line_intersections,
    common_tangents,
    homothety_circle,
    line_line_intersection,
    perpendicular_bisector,
    point_line_distance,
    reflect_across,
    rotate_about,
    tangent_lines_from_point,
)

P = Point2
E = UnitVec2(1.0, 0.0)


def close(p, q, tol=1e-12):
    return p.dist(q) <= tol


def C(x, y, r):
    return Circle(P(x, y), r)


class TestPrimitives:
    def test_point_rejects_nan(self):
        with pytest.raises(ValueError):
            P(math.nan, 0.0)

    def test_unit_vector_normalises(self):
        u = UnitVec2.of(P(3, 4))
        assert (u.ux, u.uy) == pytest.approx((0.6, 0.8))

    def test_zero_vector_has_no_direction(self):
        with pytest.raises(ValueError):
            UnitVec2.of(P(0, 0))

    def test_left_is_positive(self):
        line = DirectedLine(P(0, 0), E)
        assert line.signed_distance(P(0, 2)) == 2.0
        assert line.signed_distance(P(0, -2)) == -2.0

    def test_canonical_ignores_direction(self):
        line = DirectedLine(P(1, 2), UnitVec2.of(P(1, 1)))
        assert line.canonical() == pytest.approx(line.reversed().canonical())

    def test_canonical_near_pi_keeps_offset_sign(self):
        # (-1, 2e-16) has atan2 == pi after rounding
        line = DirectedLine(P(0, -3), UnitVec2(1.0, -2.4492935982947064e-16))
        assert line.canonical() == pytest.approx((0.0, -3.0))


class TestCircleLine:
    def test_secant(self):
        pts = circle_line_intersections(C(0, 0, 5), DirectedLine(P(-9, 3), E))
        # x^2 + 9 = 25
        assert len(pts) == 2
        assert close(pts[0], P(-4, 3)) and close(pts[1], P(4, 3))

    def test_ordered_along_direction(self):
        pts = circle_line_intersections(C(0, 0, 5), DirectedLine(P(9, 3), -E))
        assert close(pts[0], P(4, 3)) and close(pts[1], P(-4, 3))

    def test_miss(self):
        assert circle_line_intersections(C(0, 0, 1), DirectedLine(P(0, 5), E)) == []

    def test_tangent_touch(self):
        pts = circle_line_intersections(C(0, 0, 1), DirectedLine(P(-2, 1), E))
        assert len(pts) == 1 and close(pts[0], P(0, 1))

    def test_near_tangent_counts_once(self):
        pts = circle_line_intersections(C(0, 0, 1), DirectedLine(P(-2, 1 - 1e-13), E))
        assert len(pts) == 1


class TestCircleCircle:
    def test_two_points(self):
        pts = circle_circle_intersections(C(0, 0, 1), C(1, 0, 1))
        h = math.sqrt(3) / 2
        assert len(pts) == 2
        assert close(pts[0], P(0.5, -h)) and close(pts[1], P(0.5, h))

    def test_disjoint(self):
        assert circle_circle_intersections(C(0, 0, 1), C(3, 0, 1)) == []

    def test_external_tangency(self):
        pts = circle_circle_intersections(C(0, 0, 2), C(0, 3, 1))
        assert len(pts) == 1 and close(pts[0], P(0, 2))

    def test_internal_tangency(self):
        pts = circle_circle_intersections(C(0, 0, 2), C(1, 0, 1))
        assert len(pts) == 1 and close(pts[0], P(2, 0))

    def test_nested(self):
        assert circle_circle_intersections(C(0, 0, 5), C(1, 0, 1)) == []

    def test_coincident_raises(self):
        with pytest.raises(CoincidentCircles):
            circle_circle_intersections(C(1, 1, 2), C(1, 1, 2))


class TestTangentsFromPoint:
    def test_outside(self):
        lines = tangent_lines_from_point(P(2, 0), C(0, 0, 1))
        assert len(lines) == 2
        for line in lines:
            assert point_line_distance(P(0, 0), line) == pytest.approx(1.0, abs=1e-12)
            assert point_line_distance(P(2, 0), line) == pytest.approx(0.0, abs=1e-12)
        # touch points (1/2, +-sqrt(3)/2): tangent length sqrt(3)
        feet = sorted((l.foot(P(0, 0)) for l in lines), key=lambda p: p.y)
        assert close(feet[0], P(0.5, -math.sqrt(3) / 2), 1e-12)
        assert close(feet[1], P(0.5, math.sqrt(3) / 2), 1e-12)

    def test_on_circle(self):
        lines = tangent_lines_from_point(P(1, 0), C(0, 0, 1))
        assert len(lines) == 1
        assert abs(lines[0].direction.ux) == pytest.approx(0.0, abs=1e-12)

    def test_inside(self):
        assert tangent_lines_from_point(P(0, 0), C(0, 0, 1)) == []

    def test_point_circle(self):
        lines = tangent_lines_from_point(P(3, 4), C(0, 0, 0))
        assert len(lines) == 1
        assert point_line_distance(P(0, 0), lines[0]) == pytest.approx(0.0, abs=1e-12)

    def test_point_circle_at_point(self):
        with pytest.raises(DegeneratePoint):
            tangent_lines_from_point(P(0, 0), C(0, 0, 0))


class TestCommonTangents:
    def test_separated_equal_radii(self):
        tl = common_tangents(C(0, 0, 1), C(4, 0, 1))
        assert [t.tag for t in tl] == ["external", "external", "internal", "internal"]
        ext = sorted(t.line.canonical()[1] for t in tl if t.tag == "external")
        assert ext == pytest.approx([-1.0, 1.0])
        for t in tl:
            if t.tag == "internal":
                assert point_line_distance(P(2, 0), t.line) == pytest.approx(0.0, abs=1e-12)
                slope = t.line.direction.uy / t.line.direction.ux
                assert abs(slope) == pytest.approx(1 / math.sqrt(3))

    def test_nested_has_none(self):
        assert common_tangents(C(0, 0, 2), C(1, 0, 0.5)) == []

    def test_externally_touching_has_three(self):
        tl = common_tangents(C(0, 0, 1), C(2, 0, 1))
        assert len(tl) == 3
        internal = [t for t in tl if t.tag == "internal"]
        assert len(internal) == 1
        assert point_line_distance(P(1, 0), internal[0].line) == pytest.approx(0.0, abs=1e-12)
        assert abs(internal[0].line.direction.ux) == pytest.approx(0.0, abs=1e-12)

    def test_internally_touching_has_one(self):
        tl = common_tangents(C(0, 0, 2), C(1, 0, 1))
        assert len(tl) == 1 and tl[0].tag == "external"

    def test_overlapping_has_two(self):
        tl = common_tangents(C(0, 0, 2), C(2, 0, 1))
        assert [t.tag for t in tl] == ["external", "external"]

    def test_unequal_radii_residuals(self):
        c1, c2 = C(-3, 1, 2.5), C(7, -2, 1)
        tl = common_tangents(c1, c2)
        assert len(tl) == 4
        for t in tl:
            assert point_line_distance(c1.center, t.line) == pytest.approx(2.5, abs=1e-12)
            assert point_line_distance(c2.center, t.line) == pytest.approx(1.0, abs=1e-12)
            same = t.line.signed_distance(c1.center) * t.line.signed_distance(c2.center) > 0
            assert same == (t.tag == "external")

    def test_coincident_circles(self):
        with pytest.raises(CoincidentCircles):
            common_tangents(C(0, 0, 1), C(0, 0, 1))


class TestTransforms:
    def test_homothety_worked(self):
        c = homothety_circle(C(0, 0, 1), P(3, 0), 2)
        assert close(c.center, P(-3, 0)) and c.radius == 2

    def test_homothety_identity(self):
        c = C(2, -1, 3)
        assert homothety_circle(c, P(5, 5), 1) == c

    def test_homothety_point_reflection(self):
        c = homothety_circle(C(0, 0, 1), P(3, 0), -1)
        assert close(c.center, P(6, 0)) and c.radius == 1

    def test_homothety_zero_ratio(self):
        with pytest.raises(ZeroRatio):
            homothety_circle(C(0, 0, 1), P(3, 0), 0)

    def test_bisector_worked(self):
        line = perpendicular_bisector(P(4, 8), P(12, 0))
        assert point_line_distance(P(8, 4), line) == pytest.approx(0.0, abs=1e-12)
        assert abs(line.direction.cross(UnitVec2.of(P(1, 1)))) == pytest.approx(0.0, abs=1e-12)

    def test_bisector_vertical(self):
        line = perpendicular_bisector(P(0, 0), P(2, 0))
        assert point_line_distance(P(1, 7), line) == pytest.approx(0.0, abs=1e-12)

    def test_bisector_coincident(self):
        with pytest.raises(CoincidentPoints):
            perpendicular_bisector(P(0, 0), P(0, 0))

    def test_rotate_worked(self):
        assert close(rotate_about(P(10, 0), P(4, 0), math.pi / 2), P(4, 6), 1e-12)

    def test_rotate_identity(self):
        assert rotate_about(P(3, -2), P(1, 1), 0.0) == P(3, -2)

    def test_half_turn(self):
        assert close(rotate_about(P(1, 0), P(0, 0), math.pi), P(-1, 0), 1e-15)

    def test_distance_to_line(self):
        assert point_line_distance(P(0, 0), DirectedLine(P(0, 3), E)) == 3
        assert point_line_distance(P(5, 3), DirectedLine(P(0, 3), E)) == 0
        # x - sqrt3 y - 2 = 0 passes through (2, 0)
        line = DirectedLine(P(2, 0), UnitVec2.of(P(math.sqrt(3), 1)))
        assert point_line_distance(P(0, 0), line) == pytest.approx(1.0, abs=1e-15)

    def test_line_intersection(self):
        a = DirectedLine(P(0, 0), E)
        b = DirectedLine(P(3, -1), UnitVec2(0.0, 1.0))
        assert line_line_intersection(a, b) == pytest.approx(3.0)
        assert line_line_intersection(a, DirectedLine(P(0, 1), E)) is None

    def test_reflection(self):
        assert close(reflect_across(P(1, 2), DirectedLine(P(0, 0), E)), P(1, -2))
