"""Geometry of the regular polygon inscribed in the unit circle.

A point of the polygon boundary is addressed by a normalized arc coordinate
t in [0, 1): the fraction of edges traversed counterclockwise from the
vertex at angle 0.  Vertex k sits at t = k/n, the midpoint of edge k at
t = (k + 1/2)/n.  The metric on the polygon is the ambient Euclidean one,
not the intrinsic arc length.

The central primitive is `ccw_step`: from a point p and a radius r, the
first point counterclockwise of p at Euclidean distance exactly r.  Below
the cyclicity threshold (`cyclicity_threshold`) every ball meets the
polygon in a single arc, so this is the counterclockwise endpoint of that
arc and the step is well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CyclicityError, InputError

# Absolute tolerance for geometric equality tests.
GEOM_TOL = 1e-10

# If the far endpoint of an edge lies within this distance of the target
# radius, the step snaps to that polygon vertex.  Avoids sqrt(eps) noise
# when the crossing is tangent at a vertex (e.g. radius exactly one side).
_VERTEX_SNAP = 1e-12


@dataclass(frozen=True)
class PolygonPoint:
    """A point of the n-gon boundary as a normalized ccw arc coordinate."""

    n: int
    t: float

    def __post_init__(self):
        if self.n < 3:
            raise InputError(f"polygon needs at least 3 sides, got n={self.n}")
        if not (0.0 <= self.t < 1.0):
            object.__setattr__(self, "t", self.t % 1.0)

    def embed(self) -> tuple[float, float]:
        return embed(self.n, self.t)


@dataclass(frozen=True)
class ArcInterval:
    """Counterclockwise arc from lo to hi (arc coordinates, wraps mod 1)."""

    n: int
    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = True
    empty: bool = False

    def length(self) -> float:
        if self.empty:
            return 0.0
        return (self.hi - self.lo) % 1.0

    def contains(self, t: float, tol: float = GEOM_TOL) -> bool:
        if self.empty:
            return False
        span = (self.hi - self.lo) % 1.0
        off = (t - self.lo) % 1.0
        if off <= tol:
            return self.closed_lo or off > tol
        if abs(off - span) <= tol:
            return self.closed_hi
        return off < span


def vertex(n: int, k: int) -> tuple[float, float]:
    """Cartesian coordinates of polygon vertex k (a root of unity)."""
    a = 2.0 * math.pi * (k % n) / n
    return (math.cos(a), math.sin(a))


def embed(n: int, t: float) -> tuple[float, float]:
    """Map arc coordinate t to the plane by linear interpolation on its edge."""
    t = t % 1.0
    k = int(n * t)
    s = n * t - k
    ax, ay = vertex(n, k)
    bx, by = vertex(n, k + 1)
    return ((1.0 - s) * ax + s * bx, (1.0 - s) * ay + s * by)


def euclid_dist(p: PolygonPoint, q: PolygonPoint) -> float:
    if p.n != q.n:
        raise InputError(f"mismatched polygons: n={p.n} vs n={q.n}")
    return euclid(p.n, p.t, q.t)


def euclid(n: int, t1: float, t2: float) -> float:
    """Euclidean distance between two arc coordinates on the same n-gon."""
    x1, y1 = embed(n, t1)
    x2, y2 = embed(n, t2)
    return math.hypot(x1 - x2, y1 - y2)


def geodesic_dist(p: PolygonPoint, q: PolygonPoint) -> float:
    """Normalized ccw geodesic distance; directional, not symmetric."""
    if p.n != q.n:
        raise InputError(f"mismatched polygons: n={p.n} vs n={q.n}")
    return (q.t - p.t) % 1.0


def cyclicity_threshold(n: int) -> float:
    """Largest scale below which every ball meets the polygon in one arc.

    2 cos(pi/n) for even n, 1 + cos(2 pi/n)/cos(pi/n) for odd n; zero for
    the triangle, where no positive scale works.
    """
    if n < 3:
        raise InputError(f"n must be >= 3, got {n}")
    if n == 3:
        return 0.0
    if n % 2 == 0:
        return 2.0 * math.cos(math.pi / n)
    return 1.0 + math.cos(2.0 * math.pi / n) / math.cos(math.pi / n)


def _check_scale(n: int, r: float, boundary_ok: bool) -> None:
    rn = cyclicity_threshold(n)
    if r <= 0.0:
        raise InputError(f"scale must be positive, got r={r}")
    lim = rn + GEOM_TOL if boundary_ok else rn - GEOM_TOL
    if r > lim:
        raise CyclicityError(
            f"cyclicity threshold exceeded: r={r} vs r_n={rn} for n={n}"
        )


def ccw_step(n: int, t: float, r: float) -> float:
    """Arc coordinate of the first point ccw of t at Euclidean distance r.

    Walks edges counterclockwise; on each edge the squared distance to the
    start point is a convex quadratic in the edge parameter, so the first
    level crossing sits on the first edge whose far endpoint is at distance
    >= r, at the larger quadratic root.  Requires r below (or at, via the
    one-sided limit) the cyclicity threshold, which bounds the walk by
    about n/2 edges.
    """
    t = t % 1.0
    px, py = embed(n, t)
    k = int(n * t)
    for _ in range(n + 2):
        bx, by = vertex(n, k + 1)
        dfar = math.hypot(bx - px, by - py)
        if dfar >= r - _VERTEX_SNAP:
            if abs(dfar - r) <= _VERTEX_SNAP:
                return ((k + 1) % n) / n
            ax, ay = vertex(n, k)
            dx, dy = ax - px, ay - py
            ex, ey = bx - ax, by - ay
            qa = ex * ex + ey * ey
            qb = dx * ex + dy * ey
            qc = dx * dx + dy * dy - r * r
            disc = qb * qb - qa * qc
            if disc < 0.0:
                disc = 0.0
            u = (-qb + math.sqrt(disc)) / qa
            return ((k + u) / n) % 1.0
        k += 1
    raise CyclicityError(
        f"step of size r={r} did not terminate on P_{n}; scale above threshold"
    )


def g_r(p: PolygonPoint, r: float) -> PolygonPoint:
    """Counterclockwise endpoint of the ball-arc around p at radius r."""
    _check_scale(p.n, r, boundary_ok=True)
    return PolygonPoint(p.n, ccw_step(p.n, p.t, r))


def ball_arc(p: PolygonPoint, r: float) -> ArcInterval:
    """The arc {w : |w - p| <= r}, one connected piece for r below threshold.

    The ccw endpoint comes from the forward walk; the cw endpoint from the
    mirrored walk, since reflection t -> -t is an isometry of the polygon.
    The threshold itself is admitted as a one-sided limit.
    """
    _check_scale(p.n, r, boundary_ok=True)
    hi = ccw_step(p.n, p.t, r)
    lo = (-ccw_step(p.n, (-p.t) % 1.0, r)) % 1.0
    return ArcInterval(p.n, lo, hi, closed_lo=True, closed_hi=True)


def ccw_run_length(n: int, t: float, r: float) -> float:
    """Geodesic length of the ccw half of the ball-arc at radius r."""
    return (ccw_step(n, t, r) - t) % 1.0


def chord(n: int) -> float:
    """Side length of the n-gon: 2 sin(pi/n)."""
    return 2.0 * math.sin(math.pi / n)


def threshold_witness(n: int) -> float:
    """Arc coordinate whose ball disconnects first as the scale reaches the
    cyclicity threshold: the edge midpoint for even n; for odd n, the edge
    point whose projection onto the opposite edge's line hits its vertex."""
    if n % 2 == 0:
        return 0.5 / n
    i = (n - 1) // 2
    vx, vy = vertex(n, i)
    ax, ay = vertex(n, 0)
    bx, by = vertex(n, 1)
    ex, ey = bx - ax, by - ay
    u = ((vx - ax) * ex + (vy - ay) * ey) / (ex * ex + ey * ey)
    return (u / n) % 1.0
