"""Scenario, observation and candidate documents.

All three are JSON objects tagged with ``"version": "trajectory-oracle/1"`` and
a ``"kind"`` field.  Floats are written with Python's shortest round-trip
representation, so ``parse(serialize(x)) == x`` holds exactly and output is
byte-stable.  Points and directions are two-element arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .geom import Circle, DirectedLine, Point2, UnitVec2
from .kinematics import (
    InformationPolicy,
    LinearTrajectory,
    ObservationSet,
    Radar,
    RadarObservation,
    RadarPolicy,
    TimedWaypoint,
    TurnObservation,
    TurnTrajectory,
)
from .reconstruct.candidates import Candidate, CandidateSet, CaseTag

VERSION = "trajectory-oracle/1"


class ParseError(ValueError):
    """Document is not valid JSON or does not follow the layout."""


class ScenarioInvariantError(ValueError):
    """Document parses but breaks a scenario invariant."""


@dataclass(frozen=True)
class Scenario:
    radars: tuple[Radar, ...]
    ground_truth: LinearTrajectory | TurnTrajectory | None = None
    observations: ObservationSet | None = None
    policy: InformationPolicy = field(default_factory=InformationPolicy)
    metadata: Mapping[str, str] = field(default_factory=dict)

    def radar(self, radar_id: str) -> Radar:
        for r in self.radars:
            if r.id == radar_id:
                return r
        raise KeyError(radar_id)

    def validate(self) -> None:
        ids = [r.id for r in self.radars]
        if len(set(ids)) != len(ids):
            raise ScenarioInvariantError(f"duplicate radar ids: {ids}")
        if self.ground_truth is None and self.observations is None:
            raise ScenarioInvariantError("scenario needs ground_truth or observations")
        known = set(ids)
        referenced = set(self.policy.radars)
        if self.policy.turn_radar is not None:
            referenced.add(self.policy.turn_radar)
        if self.observations is not None:
            referenced.update(o.radar_id for o in self.observations.radars)
            if self.observations.turn is not None:
                referenced.add(self.observations.turn.radar_id)
        unknown = referenced - known
        if unknown:
            raise ScenarioInvariantError(f"unknown radar ids: {sorted(unknown)}")


# -- encoding -----------------------------------------------------------------


def _pt(p: Point2 | UnitVec2) -> list[float]:
    return [float(v) for v in p]


def _num(v: float | None) -> float | None:
    return None if v is None else float(v)


def route_to_dict(route) -> dict[str, Any]:
    if isinstance(route, LinearTrajectory):
        return {
            "type": "linear",
            "anchor": _pt(route.anchor),
            "direction": _pt(route.direction),
            "speed": float(route.speed),
            "anchor_time": float(route.anchor_time),
        }
    if isinstance(route, TurnTrajectory):
        return {
            "type": "turn",
            "start": _pt(route.start),
            "leg1_direction": _pt(route.leg1_direction),
            "turn_point": _pt(route.turn_point),
            "leg2_direction": _pt(route.leg2_direction),
            "speed": float(route.speed),
            "start_time": float(route.start_time),
        }
    if isinstance(route, DirectedLine):
        return {"type": "line", "origin": _pt(route.origin), "direction": _pt(route.direction)}
    raise TypeError(f"not a route: {route!r}")


def radar_to_dict(r: Radar) -> dict[str, Any]:
    return {"id": r.id, "center": _pt(r.threat.center), "radius": float(r.threat.radius)}


def policy_to_dict(p: InformationPolicy) -> dict[str, Any]:
    return {
        "radars": {
            rid: {"entry": g.entry, "exit": g.exit, "closest": g.closest}
            for rid, g in sorted(p.radars.items())
        },
        "speed": p.speed,
        "waypoint_time": _num(p.waypoint_time),
        "turn_radar": p.turn_radar,
    }


def observations_to_dict(obs: ObservationSet) -> dict[str, Any]:
    turn = None
    if obs.turn is not None:
        t = obs.turn
        turn = {
            "radar_id": t.radar_id,
            "start": _pt(t.start),
            "start_time": float(t.start_time),
            "leg1_direction": _pt(t.leg1_direction),
            "distance_to_entry": float(t.distance_to_entry),
            "inner_chord": float(t.inner_chord),
        }
    return {
        "radars": [
            {
                "radar_id": o.radar_id,
                "entry_time": _num(o.entry_time),
                "exit_time": _num(o.exit_time),
                "closest_distance": _num(o.closest_distance),
            }
            for o in obs.radars
        ],
        "speed": _num(obs.speed),
        "waypoint": None
        if obs.waypoint is None
        else {"position": _pt(obs.waypoint.position), "time": float(obs.waypoint.time)},
        "turn": turn,
    }


def scenario_to_dict(s: Scenario) -> dict[str, Any]:
    return {
        "version": VERSION,
        "kind": "scenario",
        "radars": [radar_to_dict(r) for r in s.radars],
        "ground_truth": None if s.ground_truth is None else route_to_dict(s.ground_truth),
        "observations": None if s.observations is None else observations_to_dict(s.observations),
        "policy": policy_to_dict(s.policy),
        "metadata": dict(sorted(s.metadata.items())),
    }


def candidates_to_dict(cs: CandidateSet) -> dict[str, Any]:
    return {
        "version": VERSION,
        "kind": "candidates",
        "case": cs.case_tag.value,
        "reason": cs.reason,
        "candidates": [
            {"residual": float(c.residual), "route": route_to_dict(c.route)} for c in cs.candidates
        ],
    }


def dumps(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def serialize(obj) -> str:
    if isinstance(obj, Scenario):
        return dumps(scenario_to_dict(obj))
    if isinstance(obj, ObservationSet):
        return dumps({"version": VERSION, "kind": "observations", **observations_to_dict(obj)})
    if isinstance(obj, CandidateSet):
        return dumps(candidates_to_dict(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- decoding -----------------------------------------------------------------


def _req(d: Mapping[str, Any], key: str, where: str):
    if not isinstance(d, Mapping) or key not in d:
        raise ParseError(f"{where}: missing {key!r}")
    return d[key]


def _float(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ParseError(f"{where}: expected a finite number, got {v!r}")
    return float(v)


def _opt_float(v, where: str) -> float | None:
    return None if v is None else _float(v, where)


def _point(v, where: str) -> Point2:
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError(f"{where}: expected [x, y], got {v!r}")
    return Point2(_float(v[0], where), _float(v[1], where))


def _unit(v, where: str) -> UnitVec2:
    p = _point(v, where)
    if abs(math.hypot(p.x, p.y) - 1.0) > 1e-9:
        raise ParseError(f"{where}: direction is not unit length")
    try:
        return UnitVec2(p.x, p.y)
    except ValueError:
        return UnitVec2.of(p)


def _bool(v, where: str) -> bool:
    if not isinstance(v, bool):
        raise ParseError(f"{where}: expected true/false, got {v!r}")
    return v


def route_from_dict(d: Mapping[str, Any]):
    kind = _req(d, "type", "route")
    try:
        if kind == "linear":
            return LinearTrajectory(
                _point(_req(d, "anchor", "route"), "anchor"),
                _unit(_req(d, "direction", "route"), "direction"),
                _float(_req(d, "speed", "route"), "speed"),
                _float(d.get("anchor_time", 0.0), "anchor_time"),
            )
        if kind == "turn":
            return TurnTrajectory(
                _point(_req(d, "start", "route"), "start"),
                _unit(_req(d, "leg1_direction", "route"), "leg1_direction"),
                _point(_req(d, "turn_point", "route"), "turn_point"),
                _unit(_req(d, "leg2_direction", "route"), "leg2_direction"),
                _float(_req(d, "speed", "route"), "speed"),
                _float(d.get("start_time", 0.0), "start_time"),
            )
        if kind == "line":
            return DirectedLine(
                _point(_req(d, "origin", "route"), "origin"),
                _unit(_req(d, "direction", "route"), "direction"),
            )
    except ParseError:
        raise
    except ValueError as exc:
        raise ScenarioInvariantError(str(exc)) from exc
    raise ParseError(f"unknown route type {kind!r}")


def _radar(d) -> Radar:
    rid = _req(d, "id", "radar")
    if not isinstance(rid, str):
        raise ParseError(f"radar id must be a string, got {rid!r}")
    center = _point(_req(d, "center", rid), f"radar {rid} center")
    radius = _float(_req(d, "radius", rid), f"radar {rid} radius")
    try:
        return Radar(rid, Circle(center, radius))
    except ValueError as exc:
        raise ScenarioInvariantError(str(exc)) from exc


def _policy(d) -> InformationPolicy:
    if d is None:
        return InformationPolicy()
    if not isinstance(d, Mapping):
        raise ParseError("policy must be an object")
    grants = {}
    for rid, g in (d.get("radars") or {}).items():
        grants[rid] = RadarPolicy(
            _bool(g.get("entry", False), f"policy {rid}"),
            _bool(g.get("exit", False), f"policy {rid}"),
            _bool(g.get("closest", False), f"policy {rid}"),
        )
    turn_radar = d.get("turn_radar")
    if turn_radar is not None and not isinstance(turn_radar, str):
        raise ParseError("policy turn_radar must be a string")
    return InformationPolicy(
        grants,
        speed=_bool(d.get("speed", False), "policy speed"),
        waypoint_time=_opt_float(d.get("waypoint_time"), "policy waypoint_time"),
        turn_radar=turn_radar,
    )


def observations_from_dict(d: Mapping[str, Any]) -> ObservationSet:
    if not isinstance(d, Mapping):
        raise ParseError("observations must be an object")
    radars = []
    for o in d.get("radars") or []:
        rid = _req(o, "radar_id", "observation")
        radars.append(
            RadarObservation(
                rid,
                _opt_float(o.get("entry_time"), f"{rid} entry_time"),
                _opt_float(o.get("exit_time"), f"{rid} exit_time"),
                _opt_float(o.get("closest_distance"), f"{rid} closest_distance"),
            )
        )
    wp = d.get("waypoint")
    waypoint = None
    if wp is not None:
        waypoint = TimedWaypoint(
            _point(_req(wp, "position", "waypoint"), "waypoint position"),
            _float(_req(wp, "time", "waypoint"), "waypoint time"),
        )
    t = d.get("turn")
    turn = None
    if t is not None:
        turn = TurnObservation(
            _req(t, "radar_id", "turn"),
            _point(_req(t, "start", "turn"), "turn start"),
            _float(_req(t, "start_time", "turn"), "turn start_time"),
            _unit(_req(t, "leg1_direction", "turn"), "turn leg1_direction"),
            _float(_req(t, "distance_to_entry", "turn"), "turn distance_to_entry"),
            _float(_req(t, "inner_chord", "turn"), "turn inner_chord"),
        )
    return ObservationSet(
        tuple(radars),
        speed=_opt_float(d.get("speed"), "speed"),
        waypoint=waypoint,
        turn=turn,
    )


def _check_header(d, kind: str) -> None:
    if not isinstance(d, Mapping):
        raise ParseError("document must be a JSON object")
    if d.get("version") != VERSION:
        raise ParseError(f"unsupported version {d.get('version')!r}, expected {VERSION!r}")
    if d.get("kind") != kind:
        raise ParseError(f"expected a {kind!r} document, got {d.get('kind')!r}")


def scenario_from_dict(d: Mapping[str, Any]) -> Scenario:
    _check_header(d, "scenario")
    try:
        radars = tuple(_radar(r) for r in _req(d, "radars", "scenario"))
        gt = d.get("ground_truth")
        obs = d.get("observations")
        meta = d.get("metadata") or {}
        if not isinstance(meta, Mapping) or not all(isinstance(v, str) for v in meta.values()):
            raise ParseError("metadata must map strings to strings")
        scenario = Scenario(
            radars,
            ground_truth=None if gt is None else route_from_dict(gt),
            observations=None if obs is None else observations_from_dict(obs),
            policy=_policy(d.get("policy")),
            metadata=dict(meta),
        )
    except (ParseError, ScenarioInvariantError):
        raise
    except (TypeError, AttributeError) as exc:
        raise ParseError(f"malformed scenario: {exc}") from exc
    except ValueError as exc:
        raise ScenarioInvariantError(str(exc)) from exc
    scenario.validate()
    return scenario


def candidates_from_dict(d: Mapping[str, Any]) -> CandidateSet:
    _check_header(d, "candidates")
    try:
        tag = CaseTag(_req(d, "case", "candidates"))
        cands = tuple(
            Candidate(route_from_dict(_req(c, "route", "candidate")), _float(c["residual"], "residual"))
            for c in _req(d, "candidates", "candidates")
        )
    except (ParseError, ScenarioInvariantError):
        raise
    except (TypeError, KeyError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed candidate document: {exc}") from exc
    return CandidateSet(tag, cands, d.get("reason"))


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def parse_scenario(text: str) -> Scenario:
    return scenario_from_dict(_loads(text))


def parse_observations(text: str) -> ObservationSet:
    d = _loads(text)
    _check_header(d, "observations")
    try:
        return observations_from_dict(d)
    except ParseError:
        raise
    except (TypeError, AttributeError) as exc:
        raise ParseError(f"malformed observations: {exc}") from exc
    except ValueError as exc:
        raise ScenarioInvariantError(str(exc)) from exc


def parse_candidates(text: str) -> CandidateSet:
    return candidates_from_dict(_loads(text))


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(text)


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
