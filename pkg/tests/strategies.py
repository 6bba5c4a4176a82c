"""Hypothesis strategies for scenario, observation and candidate documents."""

import math

from hypothesis import strategies as st

from trajectory_oracle.geom import Circle, DirectedLine, Point2, UnitVec2
from trajectory_oracle.kinematics import (
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
from trajectory_oracle.reconstruct import Candidate, CandidateSet, CaseTag
from trajectory_oracle.scenario import Scenario

num = st.floats(-1e4, 1e4, allow_nan=False, allow_infinity=False)
pos = st.floats(1e-3, 1e3)
points = st.builds(Point2, num, num)
units = st.floats(-math.pi, math.pi).map(UnitVec2.from_angle)
opt = st.none() | num
ids = st.text("abcdefgh0123456789_-", min_size=1, max_size=6)


@st.composite
def turns(draw):
    start, u = draw(points), draw(units)
    return TurnTrajectory(start, u, start + u * draw(st.floats(0, 100)), draw(units), draw(pos), draw(num))


routes = st.builds(LinearTrajectory, points, units, pos, num) | turns()


@st.composite
def observation_sets(draw, radar_ids):
    obs = []
    for i in radar_ids:
        t_in, t_out = draw(opt), draw(opt)
        if t_in is not None and t_out is not None and t_in > t_out:
            t_in, t_out = t_out, t_in
        obs.append(RadarObservation(i, t_in, t_out, draw(st.none() | pos)))
    waypoint = draw(st.none() | st.builds(TimedWaypoint, points, num))
    turn = None
    if radar_ids and draw(st.booleans()):
        turn = TurnObservation(radar_ids[0], draw(points), draw(num), draw(units), draw(pos), draw(pos))
    return ObservationSet(tuple(obs), draw(st.none() | pos), waypoint, turn)


@st.composite
def scenarios(draw):
    rids = draw(st.lists(ids, min_size=1, max_size=4, unique=True))
    radars = tuple(Radar(i, Circle(draw(points), draw(pos))) for i in rids)
    truth = draw(st.none() | routes)
    obs = draw(observation_sets(rids)) if truth is None or draw(st.booleans()) else None
    grants = {
        i: RadarPolicy(draw(st.booleans()), draw(st.booleans()), draw(st.booleans()))
        for i in draw(st.lists(st.sampled_from(rids), unique=True))
    }
    policy = InformationPolicy(
        grants, draw(st.booleans()), draw(st.none() | num), draw(st.none() | st.sampled_from(rids))
    )
    meta = draw(st.dictionaries(ids, st.text(max_size=10), max_size=3))
    return Scenario(radars, truth, obs, policy, meta)


@st.composite
def candidate_sets(draw):
    tag = draw(st.sampled_from(list(CaseTag)))
    kinds = routes | st.builds(DirectedLine, points, units)
    cands = tuple(Candidate(r, draw(st.floats(0, 1e-6))) for r in draw(st.lists(kinds, max_size=4)))
    reason = None if cands else draw(st.sampled_from(["no_solution", "continuum_degenerate"]))
    return CandidateSet(tag, cands, reason)
