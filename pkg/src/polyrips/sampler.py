"""Dense finite subsets of the polygon with a prescribed orbit count.

Inside the singular window the polygon splits into alternating fast and
slow bands, one fast band around each edge midpoint.  Because the winding
count divides n, rotating by the star step w/(2w+1) is a polygon symmetry,
so a planted orbit is just an anchor point together with its 2w rotated
copies: consecutive copies sit at the star side length, below the scale,
and the step map cycles through them as long as the small arc past each
copy up to the true step endpoint stays empty of samples.

Density is reached without creating new cycles by filling each fast band
with a chain of anchors marching clockwise from the deepest planted seed:
each chain anchor is placed close enough to its predecessor that its step
endpoint reaches past the predecessor's rotated copy.  Every chain point
then maps to a strictly later layer, so all fast trajectories funnel into
the planted orbits; slow-band points drift clockwise into the seed pile.
No other cycle can exist, which makes the orbit count exact by
construction rather than by luck.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

from . import cyclic, geometry, stars
from .errors import InputError, ResourceBudgetError

_MIN_GAP = 1e-9  # spacing underflow floor


@dataclass(frozen=True)
class SampleSpec:
    n: int
    winding: int
    orbits: int
    epsilon: float
    scale: float
    seed: int = 0

    def __post_init__(self):
        count = 2 * self.winding + 1
        if self.n % count != 0:
            raise InputError(
                f"construction needs {count} | n, got n={self.n}"
            )
        q = self.n // count
        if self.orbits < q:
            raise InputError(
                f"orbit count must be at least q={q}, got {self.orbits}"
            )
        if self.epsilon <= 0:
            raise InputError("epsilon must be positive")


def density(points, n: int) -> float:
    """Supremum over the polygon of the Euclidean distance to the sample.

    Exact: on each polygon edge the squared distance to any fixed sample
    point is a quadratic with the same leading coefficient, so the nearest
    sample switches along a lower envelope of lines; the farthest point of
    the edge from the whole sample is a breakpoint of that envelope or an
    edge endpoint.
    """
    pts = sorted(p % 1.0 for p in points)
    if not pts:
        raise InputError("empty sample")
    emb = [geometry.embed(n, t) for t in pts]
    worst = 0.0
    for k in range(n):
        ax, ay = geometry.vertex(n, k)
        bx, by = geometry.vertex(n, k + 1)
        ex, ey = bx - ax, by - ay
        alpha = ex * ex + ey * ey
        lines = []
        for wx, wy in emb:
            dx, dy = ax - wx, ay - wy
            lines.append((2.0 * (dx * ex + dy * ey), dx * dx + dy * dy))
        hull = _lower_hull(lines)
        cands = {0.0, 1.0}
        for i in range(len(hull) - 1):
            (b1, g1), (b2, g2) = hull[i], hull[i + 1]
            s = (g2 - g1) / (b1 - b2)
            if 0.0 < s < 1.0:
                cands.add(s)
        for s in cands:
            d2 = alpha * s * s + min(b * s + g for b, g in lines)
            if d2 > worst:
                worst = d2
    return math.sqrt(max(worst, 0.0))


def _lower_hull(lines):
    """Lower envelope of lines y = b s + g.

    The envelope is concave, so active slopes decrease left to right;
    lines are processed in decreasing slope and the middle of a triple is
    dropped when the outer pair crosses no later than the first pair does.
    Returned in activation order; consecutive pairs meet at breakpoints.
    """
    best: dict[float, float] = {}
    for b, g in lines:
        if b not in best or g < best[b]:
            best[b] = g
    ls = sorted(best.items(), reverse=True)
    hull: list[tuple[float, float]] = []
    for b3, g3 in ls:
        while len(hull) >= 2:
            b1, g1 = hull[-2]
            b2, g2 = hull[-1]
            if (g3 - g1) * (b1 - b2) <= (g2 - g1) * (b1 - b3):
                hull.pop()
            else:
                break
        hull.append((b3, g3))
    return hull


def _fast_bands(n: int, winding: int, r: float):
    """Per-edge fast bands (a_j, b_j) flanking each midpoint, from the level
    set of the star side length."""
    cs = stars.crossings(n, winding, r)
    if cs.status != "ok":
        raise InputError(
            f"scale r={r} is not strictly inside the singular window "
            f"(status: {cs.status})"
        )
    bands = []
    for j in range(n):
        two = [t for t in cs.points if int(t * n) == j]
        if len(two) != 2:
            raise InputError(
                f"expected two crossings on edge {j}, found {len(two)}"
            )
        bands.append((two[0], two[1]))
    return bands


def _step_excess(n: int, t: float, r: float, rot: float) -> float:
    """How far one ccw step of size r overshoots the rotation by rot."""
    return (geometry.ccw_step(n, t, r) - t - rot) % 1.0


def construct(spec: SampleSpec) -> list[float]:
    """Build an epsilon-dense sample with exactly the requested number of
    periodic orbits at the given scale (closed convention).

    Deterministic for a fixed spec.  The seed-pile offset is halved and the
    construction retried until the realized orbit count verifies; spacing
    below the 1e-9 floor raises a resource error.
    """
    n, w, r = spec.n, spec.winding, spec.scale
    count = 2 * w + 1
    q = n // count
    bands = _fast_bands(n, w, r)
    quotas = [spec.orbits // q + (1 if j < spec.orbits % q else 0) for j in range(q)]

    # Arc gap that guarantees Euclidean epsilon-density: path length along
    # the polygon bounds the chord.
    gmax = 0.95 * spec.epsilon / (n * math.sin(math.pi / n))
    eta0 = min(gmax / 4.0, min((b - a) for a, b in bands) / 4.0)

    last_err = None
    for attempt in range(30):
        eta = eta0 / (2.0**attempt)
        if eta < 64 * _MIN_GAP:
            raise ResourceBudgetError(
                "seed spacing underflow while separating orbits"
            )
        try:
            pts = _build(spec, bands, quotas, gmax, eta)
        except ResourceBudgetError as exc:
            last_err = exc
            continue
        graph = cyclic.from_points(n, pts, r, "closed")
        rep = cyclic.analyze(graph)
        if (
            rep.orbit_count == spec.orbits
            and rep.winding_fraction == Fraction(w, count)
            and rep.length == count
            and density(pts, n) <= spec.epsilon
        ):
            return pts
    raise ResourceBudgetError(
        f"could not realize exactly {spec.orbits} orbits: {last_err}"
    )


def _build(spec, bands, quotas, gmax, eta) -> list[float]:
    n, w, r = spec.n, spec.winding, spec.scale
    count = 2 * w + 1
    q = n // count
    rot = w / count  # arc of one star step; a polygon symmetry since q | n*w

    anchors: list[float] = []
    for j in range(q):
        a, b = bands[j]
        # Planted seeds stack toward the band's ccw end; the next seed sits
        # past the previous one's step overshoot, which always leaves room.
        p = b - eta
        pile = []
        for _ in range(quotas[j]):
            if p <= a + _MIN_GAP or p >= b - _MIN_GAP:
                raise ResourceBudgetError("seed pile left the fast band")
            pile.append(p)
            over = p + _step_excess(n, p, r, rot)
            if over >= b - 2 * _MIN_GAP:
                raise ResourceBudgetError("orbit overshoot reached the band end")
            p = 0.5 * (over + b)
        anchors.extend(pile)

        # Filler chain marching clockwise from the deepest seed: each new
        # anchor's step endpoint must clear its predecessor's rotated copy,
        # so its trajectory joins a strictly later layer.
        y = pile[0]
        guard = int(10.0 / gmax) + 200
        for _ in range(guard):
            if y - a <= 0.75 * gmax:
                break
            delta = min(0.5 * gmax, y - a - 0.55 * gmax)
            while delta >= 64 * _MIN_GAP:
                cleared = (geometry.ccw_step(n, y - delta, r) - y - rot) % 1.0
                if 0.0 < cleared < 0.5:
                    break
                delta *= 0.5
            else:
                break  # excess too small to capture: leave the sliver empty
            y -= delta
            anchors.append(y)

    anchor_pts = sorted({(t + i * rot) % 1.0 for t in anchors for i in range(count)})

    def near_anchor(t: float) -> bool:
        i = bisect.bisect_left(anchor_pts, t)
        for k in (i - 1, i if i < len(anchor_pts) else 0):
            gap = abs(t - anchor_pts[k])
            if min(gap, 1.0 - gap) < 32 * _MIN_GAP:
                return True
        return False

    # Slow bands take a plain grid; their trajectories drift clockwise into
    # the seed piles and cannot close new cycles.
    pts = list(anchor_pts)
    for j in range(n):
        b = bands[j][1]
        a_next = bands[(j + 1) % n][0] + (1.0 if j == n - 1 else 0.0)
        span = a_next - b
        cells = max(1, math.ceil(span / (0.5 * gmax)))
        for i in range(cells):
            t = (b + (i + 0.5) * span / cells) % 1.0
            if not near_anchor(t):
                pts.append(t)
    return sorted(pts)


def min_orbits_check(n: int, winding: int, r: float, k: int) -> int:
    """Orbit count of the k-point evenly spaced sample at scale r."""
    pts = [i / k for i in range(k)]
    rep = cyclic.analyze(cyclic.from_points(n, pts, r, "closed"))
    return rep.orbit_count


def write_sample(path, n: int, points) -> None:
    """Sample file: first line n=<int>, then one arc coordinate per line."""
    with open(path, "w") as fh:
        fh.write(f"n={n}\n")
        for t in sorted(p % 1.0 for p in points):
            fh.write(f"{t:.17g}\n")


def read_sample(path) -> tuple[int, list[float]]:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("n="):
            raise InputError(f"bad sample header {header!r}")
        try:
            n = int(header[2:])
        except ValueError as exc:
            raise InputError(f"bad sample header {header!r}") from exc
        pts = [float(line) for line in fh if line.strip()]
    if not pts:
        raise InputError("empty sample file")
    if pts != sorted(pts):
        raise InputError("sample file not sorted ascending")
    return n, pts
