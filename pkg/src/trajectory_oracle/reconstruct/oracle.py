"""Brute-force check for the two-radar timing solver.

Every line is described by an angle and a signed offset from the first
center, with the offset grid uniform in arc angle rather than distance.  For
each grid line (and both travel directions) the four crossing
points are computed directly and compared with the target ratios; grid local
minima of the mismatch are then polished with a damped Newton iteration.
Nothing here shares code with the solver it checks.
"""

from __future__ import annotations

import math

import numpy as np

from ..geom import DirectedLine, UnitVec2
from ..kinematics import Radar
from .case4 import Case4Ratios

MIN_GRID = 64
RATIO_TOL = 1e-4


def _ratios(theta, h, sigma, R1, R2, dx, dy):
    """(x, y) ratios for lines at angle ``theta`` and offset ``h`` from center 1.

    NaN wherever the line misses either circle.
    """
    st, ct = np.sin(theta), np.cos(theta)
    with np.errstate(invalid="ignore", divide="ignore"):
        a1 = np.sqrt(R1 * R1 - h * h)
        e = -st * dx + ct * dy - h
        a2 = np.sqrt(R2 * R2 - e * e)
        tau = ct * dx + st * dy
        x = (sigma * tau - a2 - a1) / (2.0 * a1)
        y = a2 / a1
    return x, y


def _mismatch(theta, h, sigma, geom, target):
    x, y = _ratios(theta, h, sigma, *geom)
    return np.hypot(x - target[0], y - target[1])


def _polish(theta, h, sigma, geom, target, known=(), iters=60, halvings=20):
    """Damped Newton on the two ratio equations, for many seeds at once.

    ``known`` roots are deflated away: the residual is multiplied by
    prod(1 + 1/|z - z_k|^2) so the iteration cannot settle on them again.
    Returns refined (theta, h, mismatch) arrays; diverged seeds get inf.
    """
    R1 = geom[0]

    def resid(t, hh):
        x, y = _ratios(t, hh, sigma, *geom)
        if known:
            m = 1.0
            for tk, hk in known:
                m = m * (1.0 + 1.0 / ((t - tk) ** 2 + ((hh - hk) / R1) ** 2))
            x, y = (x - target[0]) * m, (y - target[1]) * m
            return x, y
        return x - target[0], y - target[1]

    rx, ry = resid(theta, h)
    err = np.hypot(rx, ry)
    err = np.where(np.isfinite(err), err, np.inf)
    dt, dh = 1e-7, 1e-7 * R1
    for _ in range(iters):
        active = np.isfinite(err) & (err > 1e-14)
        if not active.any():
            break
        ax, ay = resid(theta + dt, h)
        bx, by = resid(theta, h + dh)
        j11, j21 = (ax - rx) / dt, (ay - ry) / dt
        j12, j22 = (bx - rx) / dh, (by - ry) / dh
        det = j11 * j22 - j12 * j21
        with np.errstate(invalid="ignore", divide="ignore"):
            st = (-j22 * rx + j12 * ry) / det
            sh = (j21 * rx - j11 * ry) / det
        ok = active & np.isfinite(st) & np.isfinite(sh)
        lam = np.ones_like(theta)
        moved = np.zeros(theta.shape, dtype=bool)
        for _ in range(halvings):
            todo = ok & ~moved
            if not todo.any():
                break
            t2 = theta + lam * st
            h2 = np.clip(h + lam * sh, -R1, R1)
            x2, y2 = resid(t2, h2)
            e2 = np.hypot(x2, y2)
            better = todo & np.isfinite(e2) & (e2 < err)
            theta = np.where(better, t2, theta)
            h = np.where(better, h2, h)
            rx, ry = np.where(better, x2, rx), np.where(better, y2, ry)
            err = np.where(better, e2, err)
            moved |= better
            lam = np.where(todo & ~better, lam * 0.5, lam)
        if not moved.any():
            break
    return theta, h, err


def case4_oracle(
    r1: Radar, r2: Radar, ratios: Case4Ratios, grid: int = 512
) -> list[DirectedLine]:
    """Directed lines whose crossings of ``r1`` then ``r2`` have the given ratios."""
    if grid < MIN_GRID:
        raise ValueError(f"grid resolution must be at least {MIN_GRID}")
    O1, O2 = r1.threat.center, r2.threat.center
    R1, R2 = r1.threat.radius, r2.threat.radius
    geom = (R1, R2, O2.x - O1.x, O2.y - O1.y)
    target = (ratios.x, ratios.y)

    thetas = (np.arange(grid) + 0.5) * (math.pi / grid)
    # offsets spaced as R1 cos(phi): dense near tangency, where the ratios
    # change fastest
    hs = R1 * np.cos((np.arange(grid) + 0.5) * (math.pi / grid))
    T, H = np.meshgrid(thetas, hs, indexing="ij")

    found: list[tuple[float, float, float]] = []
    for sigma in (1.0, -1.0):
        E = _mismatch(T, H, sigma, geom, target)
        E = np.where(np.isfinite(E), E, np.inf)
        padded = np.pad(E, 1, constant_values=np.inf)
        is_min = np.isfinite(E)
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                nb = padded[1 + di : 1 + di + grid, 1 + dj : 1 + dj + grid]
                is_min &= E <= nb
        seeds = np.nonzero(is_min)
        roots = _accept(*_polish(T[seeds], H[seeds], sigma, geom, target), sigma, geom, target)
        # near-double roots share one grid basin; deflate the known ones and
        # restart next to each of them
        probe = 4.0 * math.pi / grid
        frontier = roots
        for _ in range(4):
            if not frontier:
                break
            starts = np.array(
                [(t + dt, hh + dh * R1) for t, hh in frontier for dt, dh in _ring(probe)]
            )
            th, hh, err = _polish(
                starts[:, 0], starts[:, 1], sigma, geom, target, tuple(roots), iters=30, halvings=10
            )
            # undeflated polish confirms each new point is a genuine root
            th, hh, err = _polish(th[np.isfinite(err)], hh[np.isfinite(err)], sigma, geom, target)
            frontier = [
                r for r in _accept(th, hh, err, sigma, geom, target) if not _near(r, roots, R1)
            ]
            roots.extend(_unique(frontier, R1))
            frontier = _unique(frontier, R1)
        found.extend((t % (2 * math.pi), hh, sigma) for t, hh in roots)

    lines: list[DirectedLine] = []
    for theta, h, sigma in found:
        u = UnitVec2.from_angle(theta)
        origin = O1 + u.perp().vec * h
        line = DirectedLine(origin, u if sigma > 0 else -u)
        if not any(_same_directed(line, other) for other in lines):
            lines.append(line)
    return sorted(lines, key=lambda l: (l.direction.angle, l.origin.x, l.origin.y))


def _ring(r: float) -> list[tuple[float, float]]:
    return [(r * math.cos(k * math.pi / 4), r * math.sin(k * math.pi / 4)) for k in range(8)]


def _accept(theta, h, err, sigma, geom, target) -> list[tuple[float, float]]:
    x, _ = _ratios(theta, h, sigma, *geom)
    keep = (err <= RATIO_TOL) & (x >= -RATIO_TOL)
    return _unique([(float(t), float(hh)) for t, hh in zip(theta[keep], h[keep])], geom[0])


def _near(root, roots, R1, tol=1e-7) -> bool:
    return any(abs(root[0] - t) <= tol and abs(root[1] - hh) <= tol * R1 for t, hh in roots)


def _unique(roots, R1) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for r in roots:
        if not _near(r, out, R1):
            out.append(r)
    return out


def _same_directed(a: DirectedLine, b: DirectedLine, tol: float = 1e-7) -> bool:
    if a.direction.vec.dist(b.direction.vec) > tol:
        return False
    return abs(a.signed_distance(b.origin)) <= tol * max(1.0, a.origin.magnitude())
