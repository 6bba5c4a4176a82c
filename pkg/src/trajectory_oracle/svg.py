"""SVG figures of a scene, its ground truth and reconstructed candidates.

Threat circles are dashed, the ground truth is a solid black path, and each
candidate is drawn in its case's color.  With ``aux=True`` the helper circles
behind each construction are added (closest-distance circles, the dilated
threat circle, the one-turn reference circles).  World y points up.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Iterable

from .errors import GeometryError
from .geom import Circle, DirectedLine, Point2, homothety_circle
from .kinematics import LinearTrajectory, ObservationSet, TurnTrajectory
from .reconstruct import BonusInput, CandidateSet, CaseTag, construct_reference_circle, waypoint_timing
from .scenario import Scenario

SVG_NS = "http://www.w3.org/2000/svg"

CASE_COLORS = {
    CaseTag.CASE1: "#1f77b4",
    CaseTag.CASE2: "#ff7f0e",
    CaseTag.CASE3: "#2ca02c",
    CaseTag.CASE4: "#d62728",
    CaseTag.BONUS: "#9467bd",
}


def _f(v: float) -> str:
    return f"{v + 0.0:.6g}"  # folds -0 into 0


class _Box:
    def __init__(self):
        self.lo = [math.inf, math.inf]
        self.hi = [-math.inf, -math.inf]

    def add(self, p: Point2, r: float = 0.0):
        self.lo = [min(self.lo[0], p.x - r), min(self.lo[1], p.y - r)]
        self.hi = [max(self.hi[0], p.x + r), max(self.hi[1], p.y + r)]

    def padded(self, frac: float = 0.1) -> tuple[float, float, float, float]:
        if not math.isfinite(self.lo[0]):
            return -1.0, -1.0, 1.0, 1.0
        w, h = self.hi[0] - self.lo[0], self.hi[1] - self.lo[1]
        m = frac * max(w, h, 1e-9)
        return self.lo[0] - m, self.lo[1] - m, self.hi[0] + m, self.hi[1] + m


def _clip(line: DirectedLine, box: tuple[float, float, float, float]) -> tuple[Point2, Point2] | None:
    """Segment of an infinite line inside the box (Liang-Barsky)."""
    x0, y0, x1, y1 = box
    lo, hi = -math.inf, math.inf
    for o, d, a, b in (
        (line.origin.x, line.direction.ux, x0, x1),
        (line.origin.y, line.direction.uy, y0, y1),
    ):
        if abs(d) < 1e-15:
            if not a <= o <= b:
                return None
            continue
        t0, t1 = (a - o) / d, (b - o) / d
        lo, hi = max(lo, min(t0, t1)), min(hi, max(t0, t1))
    if lo > hi:
        return None
    return line.point_at(lo), line.point_at(hi)


def _aux_circles(scenario: Scenario, obs: ObservationSet | None, tag: CaseTag | None) -> list[Circle]:
    if obs is None or tag is None:
        return []
    out: list[Circle] = []
    try:
        if tag is CaseTag.CASE1:
            for o in obs.radars:
                if o.closest_distance is not None:
                    out.append(Circle(scenario.radar(o.radar_id).threat.center, o.closest_distance))
        elif tag is CaseTag.CASE3 and obs.waypoint is not None:
            for o in obs.radars:
                if o.entry_time is not None and o.exit_time is not None:
                    timing = waypoint_timing(o.entry_time, o.exit_time, obs.waypoint.time)
                    threat = scenario.radar(o.radar_id).threat
                    out.append(homothety_circle(threat, obs.waypoint.position, timing.ratio))
                    break
        elif tag is CaseTag.BONUS and obs.turn is not None:
            t = obs.turn
            inp = BonusInput(
                t.start, t.leg1_direction, t.distance_to_entry, t.inner_chord,
                scenario.radar(t.radar_id).threat,
            )
            out.extend(construct_reference_circle(inp))
    except (GeometryError, KeyError):
        return out
    return out


def _route_points(route, box) -> list[Point2]:
    if isinstance(route, TurnTrajectory):
        far = _clip(DirectedLine(route.turn_point, route.leg2_direction), box)
        end = far[1] if far else route.turn_point
        return [route.start, route.turn_point, end]
    line = route.line if isinstance(route, LinearTrajectory) else route
    seg = _clip(line, box)
    return list(seg) if seg else []


def render_svg(
    scenario: Scenario,
    candidates: CandidateSet | None = None,
    *,
    observations: ObservationSet | None = None,
    aux: bool = False,
) -> str:
    obs = observations if observations is not None else scenario.observations
    tag = candidates.case_tag if candidates is not None else None
    aux_circles = _aux_circles(scenario, obs, tag) if aux else []

    box = _Box()
    for r in scenario.radars:
        box.add(r.threat.center, r.threat.radius)
    for c in aux_circles:
        box.add(c.center, c.radius)
    routes: list = [scenario.ground_truth] if scenario.ground_truth is not None else []
    if candidates is not None:
        routes.extend(candidates.routes)
    for route in routes:
        if isinstance(route, TurnTrajectory):
            box.add(route.start)
            box.add(route.turn_point)
        elif isinstance(route, LinearTrajectory):
            box.add(route.anchor)
    x0, y0, x1, y1 = box.padded()
    clip_box = (x0, y0, x1, y1)

    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "viewBox": " ".join(_f(v) for v in (x0, -y1, x1 - x0, y1 - y0)),
        },
    )
    stroke = _f(0.004 * max(x1 - x0, y1 - y0))

    scene = ET.SubElement(svg, "g", {"id": "scene"})
    for r in scenario.radars:
        c = r.threat
        ET.SubElement(scene, "circle", {
            "class": "threat", "cx": _f(c.center.x), "cy": _f(-c.center.y), "r": _f(c.radius),
            "fill": "none", "stroke": "#555555", "stroke-width": stroke,
            "stroke-dasharray": f"{_f(4 * float(stroke))} {_f(3 * float(stroke))}",
        })
        ET.SubElement(scene, "circle", {
            "class": "radar", "cx": _f(c.center.x), "cy": _f(-c.center.y),
            "r": _f(2.5 * float(stroke)), "fill": "#555555",
        })
        label = ET.SubElement(scene, "text", {
            "x": _f(c.center.x), "y": _f(-c.center.y), "font-size": _f(12 * float(stroke)),
        })
        label.text = r.id

    if aux_circles:
        group = ET.SubElement(svg, "g", {"id": "construction"})
        for c in aux_circles:
            ET.SubElement(group, "circle", {
                "class": "auxiliary", "cx": _f(c.center.x), "cy": _f(-c.center.y),
                "r": _f(c.radius), "fill": "none", "stroke": "#999999",
                "stroke-width": stroke, "stroke-dasharray": f"{stroke} {stroke}",
            })

    if candidates is not None:
        group = ET.SubElement(svg, "g", {"id": "candidates", "data-case": candidates.case_tag.value})
        color = CASE_COLORS[candidates.case_tag]
        for cand in candidates.candidates:
            _path(group, _route_points(cand.route, clip_box), "candidate", color, stroke)

    if scenario.ground_truth is not None:
        group = ET.SubElement(svg, "g", {"id": "ground-truth"})
        _path(group, _route_points(scenario.ground_truth, clip_box), "ground-truth", "#000000",
              _f(1.5 * float(stroke)))

    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode", xml_declaration=False) + "\n"


def _path(parent: ET.Element, pts: Iterable[Point2], cls: str, color: str, width: str) -> None:
    pts = list(pts)
    if len(pts) < 2:
        return
    ET.SubElement(parent, "polyline", {
        "class": cls,
        "points": " ".join(f"{_f(p.x)},{_f(-p.y)}" for p in pts),
        "fill": "none", "stroke": color, "stroke-width": width,
    })
