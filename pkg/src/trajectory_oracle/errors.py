"""Exception hierarchy.

Every error raised by the library derives from :class:`GeometryError`, itself a
``ValueError``, so callers that only care about "bad input" can catch one type.
Geometric infeasibility inside the solvers is *not* an error: it yields an
empty candidate set carrying a reason string.
"""


class GeometryError(ValueError):
    """Base class for all library errors."""


class CoincidentCircles(GeometryError):
    pass


class CoincidentCenters(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class DegeneratePoint(GeometryError):
    pass


class ZeroRatio(GeometryError):
    pass


class OutOfRange(GeometryError):
    pass


class ZeroDuration(GeometryError):
    pass


class InvalidTimes(GeometryError):
    pass


class InconsistentInput(GeometryError):
    pass


class DegenerateWaypoint(GeometryError):
    pass


class ChordTooLong(GeometryError):
    pass


class InsufficientObservations(GeometryError):
    """Observation set lacks fields a solver needs; ``missing`` names them."""

    def __init__(self, case: str, missing: list[str]):
        self.case = case
        self.missing = list(missing)
        super().__init__(f"case {case} needs: {', '.join(self.missing)}")
