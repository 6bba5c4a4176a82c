"""Route model and the forward observation simulator.

A route is a straight line flown at constant speed and is infinite in time:
there is no mission start or end.  The simulator reports what an observer
learns from jamming behaviour: when the vehicle enters and leaves each threat
circle, how close it passes to the radar, and optionally its speed and one
timed waypoint.  All observations are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidTimes, OutOfRange, ZeroDuration
from .geom import (
    DEFAULT_TOL,
    Circle,
    DirectedLine,
    Point2,
    UnitVec2,
    scene_eps,
)


@dataclass(frozen=True)
class LinearTrajectory:
    anchor: Point2
    direction: UnitVec2
    speed: float
    anchor_time: float = 0.0

    def __post_init__(self):
        if not (self.speed > 0 and math.isfinite(self.speed)):
            raise ValueError(f"speed must be positive, got {self.speed}")

    @property
    def line(self) -> DirectedLine:
        return DirectedLine(self.anchor, self.direction)

    def position_at(self, t: float) -> Point2:
        return self.anchor + self.direction * (self.speed * (t - self.anchor_time))

    def time_at_param(self, s: float) -> float:
        """Time at which the route is ``s`` length units past the anchor."""
        return self.anchor_time + s / self.speed

    def reanchored(self, t: float) -> LinearTrajectory:
        return LinearTrajectory(self.position_at(t), self.direction, self.speed, t)


@dataclass(frozen=True)
class TurnTrajectory:
    """Two-leg route: from ``start`` along ``leg1_direction`` to ``turn_point``,
    then along ``leg2_direction`` forever, at one constant speed."""

    start: Point2
    leg1_direction: UnitVec2
    turn_point: Point2
    leg2_direction: UnitVec2
    speed: float
    start_time: float = 0.0

    def __post_init__(self):
        if not (self.speed > 0 and math.isfinite(self.speed)):
            raise ValueError(f"speed must be positive, got {self.speed}")
        eps = scene_eps(self.start, self.turn_point, tol=1e-7)
        off = self.turn_point - self.start
        if abs(self.leg1_direction.cross(off)) > eps or self.leg1_direction.dot(off) < -eps:
            raise ValueError("turn point is not on the forward ray of the first leg")

    @property
    def leg1_length(self) -> float:
        return max(self.leg1_direction.dot(self.turn_point - self.start), 0.0)

    @property
    def turn_time(self) -> float:
        return self.start_time + self.leg1_length / self.speed

    def position_at(self, t: float) -> Point2:
        s = self.speed * (t - self.start_time)
        if s <= self.leg1_length:
            return self.start + self.leg1_direction * s
        return self.turn_point + self.leg2_direction * (s - self.leg1_length)

    def inside_spans(self, c: Circle, *, tol: float = DEFAULT_TOL) -> list[tuple[float, float]]:
        """Path-length intervals (from ``start``) spent inside ``c``."""
        eps = scene_eps(c, self.start, self.turn_point, tol=tol)
        spans = []
        legs = (
            (self.start, self.leg1_direction, 0.0, self.leg1_length),
            (self.turn_point, self.leg2_direction, self.leg1_length, math.inf),
        )
        for origin, u, s0, s1 in legs:
            rel = c.center - origin
            h = abs(u.cross(rel))
            if h > c.radius + eps:
                continue
            mid = u.dot(rel)
            half = 0.0 if abs(h - c.radius) <= eps else math.sqrt((c.radius - h) * (c.radius + h))
            lo, hi = max(s0, s0 + mid - half), min(s1, s0 + mid + half)
            if lo <= hi:
                spans.append((lo, hi))
        merged: list[tuple[float, float]] = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1] + eps:
                merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
            else:
                merged.append((lo, hi))
        return merged

    def closest_distance(self, p: Point2) -> float:
        rel1 = p - self.start
        s = min(max(self.leg1_direction.dot(rel1), 0.0), self.leg1_length)
        d1 = p.dist(self.start + self.leg1_direction * s)
        rel2 = p - self.turn_point
        s2 = max(self.leg2_direction.dot(rel2), 0.0)
        d2 = p.dist(self.turn_point + self.leg2_direction * s2)
        return min(d1, d2)


@dataclass(frozen=True)
class Radar:
    id: str
    threat: Circle

    def __post_init__(self):
        if not self.threat.radius > 0:
            raise ValueError(f"radar {self.id!r} needs a positive threat radius")


@dataclass(frozen=True)
class RadarObservation:
    radar_id: str
    entry_time: float | None = None
    exit_time: float | None = None
    closest_distance: float | None = None

    def __post_init__(self):
        if (
            self.entry_time is not None
            and self.exit_time is not None
            and self.entry_time > self.exit_time
        ):
            raise InvalidTimes(f"{self.radar_id}: entry {self.entry_time} after exit {self.exit_time}")
        if self.closest_distance is not None and self.closest_distance < 0:
            raise OutOfRange(f"{self.radar_id}: negative closest distance")

    def is_empty(self) -> bool:
        return self.entry_time is None and self.exit_time is None and self.closest_distance is None


@dataclass(frozen=True)
class TimedWaypoint:
    position: Point2
    time: float


@dataclass(frozen=True)
class TurnObservation:
    """What is known in the one-turn setting: the start, the first heading,
    the path length up to the threat entrance and the chord inside it."""

    radar_id: str
    start: Point2
    start_time: float
    leg1_direction: UnitVec2
    distance_to_entry: float
    inner_chord: float


@dataclass(frozen=True)
class ObservationSet:
    radars: tuple[RadarObservation, ...] = ()
    speed: float | None = None
    waypoint: TimedWaypoint | None = None
    turn: TurnObservation | None = None

    def __post_init__(self):
        if self.speed is not None and not self.speed > 0:
            raise OutOfRange(f"speed must be positive, got {self.speed}")
        ids = [o.radar_id for o in self.radars]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate radar ids in observations: {ids}")

    def get(self, radar_id: str) -> RadarObservation | None:
        for o in self.radars:
            if o.radar_id == radar_id:
                return o
        return None

    def is_empty(self) -> bool:
        return (
            all(o.is_empty() for o in self.radars)
            and self.speed is None
            and self.waypoint is None
            and self.turn is None
        )


@dataclass(frozen=True)
class ChordGeometry:
    radius: float
    center_distance: float
    chord_length: float

    @classmethod
    def from_distance(cls, radius: float, center_distance: float) -> ChordGeometry:
        return cls(radius, center_distance, chord_length_from_distance(radius, center_distance))


@dataclass(frozen=True)
class JammingInterval:
    start: float
    end: float

    def __post_init__(self):
        if self.start > self.end:
            raise InvalidTimes(f"interval start {self.start} after end {self.end}")

    @property
    def length(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class RadarPolicy:
    entry: bool = False
    exit: bool = False
    closest: bool = False


@dataclass(frozen=True)
class InformationPolicy:
    """Which information classes the observer receives.

    ``radars`` maps radar ids to per-radar grants; unlisted radars leak
    nothing.  ``waypoint_time`` grants the route position at that time and
    ``turn_radar`` grants the one-turn observation against that radar.
    """

    radars: Mapping[str, RadarPolicy] = field(default_factory=dict)
    speed: bool = False
    waypoint_time: float | None = None
    turn_radar: str | None = None

    @classmethod
    def everything(cls, radars: Sequence[Radar]) -> InformationPolicy:
        return cls({r.id: RadarPolicy(True, True, True) for r in radars}, speed=True)


def position_at(traj: LinearTrajectory, t: float) -> Point2:
    return traj.position_at(t)


def closest_approach(traj: LinearTrajectory, p: Point2) -> tuple[float, float]:
    """(distance from ``p`` to the route's line, time the foot is reached)."""
    rel = p - traj.anchor
    s = traj.direction.dot(rel)
    return abs(traj.direction.cross(rel)), traj.time_at_param(s)


def entry_exit_times(
    traj: LinearTrajectory, c: Circle, *, tol: float = DEFAULT_TOL
) -> tuple[float, float] | None:
    eps = scene_eps(c, traj.anchor, tol=tol)
    d, t_mid = closest_approach(traj, c.center)
    if d > c.radius + eps:
        return None
    if abs(d - c.radius) <= eps:
        return t_mid, t_mid
    half = math.sqrt((c.radius - d) * (c.radius + d)) / traj.speed
    return t_mid - half, t_mid + half


def chord_length_from_distance(radius: float, closest: float) -> float:
    if radius < 0 or closest < 0:
        raise OutOfRange(f"negative radius or distance: {radius}, {closest}")
    if closest > radius:
        raise OutOfRange(f"closest distance {closest} exceeds radius {radius}")
    return 2.0 * math.sqrt((radius - closest) * (radius + closest))


def speed_from_times(radius: float, closest: float, t_in: float, t_out: float) -> float:
    """Speed implied by a chord of known offset crossed in a known duration."""
    duration = t_out - t_in
    if duration == 0:
        raise ZeroDuration("tangent pass carries no speed information")
    if duration < 0:
        raise InvalidTimes(f"exit {t_out} precedes entry {t_in}")
    chord = chord_length_from_distance(radius, closest)
    if chord == 0:
        raise OutOfRange("zero-length chord with positive duration")
    return chord / duration


def exit_time_from_entry(t_in: float, radius: float, closest: float, speed: float) -> float:
    if not speed > 0:
        raise OutOfRange(f"speed must be positive, got {speed}")
    return t_in + chord_length_from_distance(radius, closest) / speed


def simulate_observations(
    traj: LinearTrajectory | TurnTrajectory,
    radars: Sequence[Radar],
    policy: InformationPolicy,
    *,
    tol: float = DEFAULT_TOL,
) -> ObservationSet:
    """Observations leaked by ``traj`` under ``policy``.

    A radar whose circle is never reached yields an observation with every
    field absent.  Tangent passes count as crossings with equal times.
    """
    ids = [r.id for r in radars]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate radar ids: {ids}")
    obs = []
    for radar in radars:
        grant = policy.radars.get(radar.id, RadarPolicy())
        crossing = _crossing(traj, radar.threat, tol)
        if crossing is None:
            obs.append(RadarObservation(radar.id))
            continue
        t_in, t_out, closest = crossing
        obs.append(
            RadarObservation(
                radar.id,
                entry_time=t_in if grant.entry else None,
                exit_time=t_out if grant.exit else None,
                closest_distance=min(closest, radar.threat.radius) if grant.closest else None,
            )
        )
    waypoint = None
    if policy.waypoint_time is not None:
        waypoint = TimedWaypoint(traj.position_at(policy.waypoint_time), policy.waypoint_time)
    turn = None
    if policy.turn_radar is not None:
        if not isinstance(traj, TurnTrajectory):
            raise ValueError("turn observations need a turning route")
        radar = next((r for r in radars if r.id == policy.turn_radar), None)
        if radar is None:
            raise ValueError(f"unknown turn radar {policy.turn_radar!r}")
        turn = simulate_turn_observation(traj, radar, tol=tol)
    return ObservationSet(
        tuple(obs),
        speed=traj.speed if policy.speed else None,
        waypoint=waypoint,
        turn=turn,
    )


def _crossing(traj, c: Circle, tol: float) -> tuple[float, float, float] | None:
    if isinstance(traj, LinearTrajectory):
        times = entry_exit_times(traj, c, tol=tol)
        if times is None:
            return None
        return times[0], times[1], closest_approach(traj, c.center)[0]
    spans = traj.inside_spans(c, tol=tol)
    if not spans:
        return None
    lo, hi = spans[0]
    if math.isinf(hi):
        return None
    return (
        traj.start_time + lo / traj.speed,
        traj.start_time + hi / traj.speed,
        traj.closest_distance(c.center),
    )


def simulate_turn_observation(
    traj: TurnTrajectory, radar: Radar, *, tol: float = DEFAULT_TOL
) -> TurnObservation | None:
    """Path length to the first entrance into ``radar`` and the chord flown inside."""
    spans = traj.inside_spans(radar.threat, tol=tol)
    if not spans:
        return None
    lo, hi = spans[0]
    return TurnObservation(
        radar.id, traj.start, traj.start_time, traj.leg1_direction, lo, hi - lo
    )


def merge_jamming_intervals(intervals: Sequence[JammingInterval]) -> list[JammingInterval]:
    """Union of closed intervals as a sorted list of disjoint intervals."""
    merged: list[JammingInterval] = []
    for iv in sorted(intervals, key=lambda i: (i.start, i.end)):
        if merged and iv.start <= merged[-1].end:
            last = merged[-1]
            if iv.end > last.end:
                merged[-1] = JammingInterval(last.start, iv.end)
        else:
            merged.append(iv)
    return merged
