"""Finite cyclic graphs and their furthest-point dynamics.

A finite cyclic graph is stored as circularly sorted vertex positions on
[0, 1) plus a per-vertex `reach`: the number of consecutive ccw successors
it points to.  Contiguity of out-neighborhoods makes the defining "no edge
jumps over a non-edge" condition equivalent to a one-line monotonicity
check, and makes the furthest-point map f(i) = i + reach[i] an O(1) lookup.

`analyze` iterates f, finds all periodic orbits, verifies they share one
(length, winding) pair, and classifies every vertex as periodic, fast, or
slow.  The winding comparison is exact: over q steps the accumulated turn
equals (#index wraps) + (t_end - t_start), so "winding > p" reduces to
integer comparisons on wrap counts and vertex indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .errors import InputError, InternalConsistencyError

# Euclidean distances within this much of the scale count as "at" it; set by
# the noise floor of bisection-derived sample coordinates.
DIST_TOL = 1e-9
_ARC_TOL = 1e-12


@dataclass(frozen=True)
class FiniteCyclicGraph:
    positions: tuple[float, ...]
    reach: tuple[int, ...]

    def __post_init__(self):
        m = len(self.positions)
        if m == 0:
            raise InputError("empty vertex set")
        if len(self.reach) != m:
            raise InputError("positions and reach length mismatch")
        for i in range(m):
            if not (0.0 <= self.positions[i] < 1.0):
                raise InputError(f"position {i} outside [0,1)")
            if i and self.positions[i] <= self.positions[i - 1] + _ARC_TOL:
                raise InputError(f"positions not strictly increasing at {i}")
            if self.reach[i] < 0 or self.reach[i] >= m:
                raise InputError(f"vertex {i} has reach {self.reach[i]}")
        # No pair may point at each other: i -> j and j -> i together need
        # reach[i] + reach[j] >= m along complementary arcs.
        for i in range(m):
            for s in range(1, self.reach[i] + 1):
                j = (i + s) % m
                if (i - j) % m <= self.reach[j]:
                    raise InputError(
                        f"directed 2-cycle between vertices {i} and {j}"
                    )
        for i in range(m):
            j = (i + 1) % m
            if self.reach[j] < self.reach[i] - 1:
                u1 = (i + self.reach[i]) % m
                raise InternalConsistencyError(
                    "cyclicity violated", (i, j, u1)
                )

    @property
    def size(self) -> int:
        return len(self.positions)

    def successor(self, i: int) -> int:
        """The furthest-point map: ccw-most out-neighbor (self if none)."""
        return (i + self.reach[i]) % self.size

    def out_neighbors(self, i: int) -> list[int]:
        return [(i + j) % self.size for j in range(1, self.reach[i] + 1)]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, w) for i in range(self.size) for w in self.out_neighbors(i)]

    def undirected_adjacency(self) -> list[list[bool]]:
        m = self.size
        adj = [[False] * m for _ in range(m)]
        for i, w in self.edges():
            adj[i][w] = adj[w][i] = True
        return adj


def regular(n: int, k: int) -> FiniteCyclicGraph:
    """The regular cyclic graph: n evenly spaced vertices, each pointing to
    its next k ccw neighbors."""
    if n < 1 or k < 0 or 2 * k >= n:
        raise InputError(f"regular graph needs 0 <= k < n/2, got n={n} k={k}")
    return FiniteCyclicGraph(
        tuple(i / n for i in range(n)), tuple([k] * n)
    )


def from_points(
    n: int,
    points,
    r: float,
    convention: str = "strict",
    tol: float = DIST_TOL,
) -> FiniteCyclicGraph:
    """Vietoris-Rips graph of sample points on the n-gon at scale r.

    Vertices are sorted by arc coordinate.  Each vertex points to the run
    of ccw successors inside the ccw half of its ball-arc; the run is
    bounded both by the Euclidean distance test (strict: < r, closed: <= r)
    and by the arc endpoint where distance first reaches r, so samples on
    the far side of the ball are never swallowed.
    """
    if convention not in ("strict", "closed"):
        raise InputError(f"unknown convention {convention!r}")
    rn = geometry.cyclicity_threshold(n)
    if r >= rn:
        raise geometry.CyclicityError(
            f"cyclicity threshold exceeded: r={r} >= r_n={rn}"
        )
    pos = sorted(p % 1.0 for p in points)
    m = len(pos)
    if m == 0:
        raise InputError("no sample points")
    for i in range(1, m):
        if pos[i] - pos[i - 1] <= _ARC_TOL:
            raise InputError(f"duplicate sample point at t={pos[i]}")
    if m > 1 and (pos[0] + 1.0) - pos[-1] <= _ARC_TOL:
        raise InputError(f"duplicate sample point at t={pos[0]}")

    reach = []
    for i in range(m):
        run = geometry.ccw_run_length(n, pos[i], r)
        cnt = 0
        for step in range(1, m):
            j = (i + step) % m
            arc = (pos[j] - pos[i]) % 1.0
            if arc > run + _ARC_TOL:
                break
            d = geometry.euclid(n, pos[i], pos[j])
            if convention == "strict":
                if d >= r - tol:
                    break
            else:
                if d > r + tol:
                    break
            cnt += 1
        reach.append(cnt)
    try:
        return FiniteCyclicGraph(tuple(pos), tuple(reach))
    except InternalConsistencyError as exc:
        raise InternalConsistencyError(
            f"sample at scale r={r} produced a non-cyclic graph", *exc.args
        ) from exc


def from_edges(positions, edges) -> FiniteCyclicGraph:
    """Build from an explicit directed edge list over vertex indices.

    The out-neighborhood of every vertex must be a contiguous ccw run
    starting at its successor; otherwise the edge list does not describe a
    cyclic graph in the reach representation.
    """
    pos = tuple(positions)
    m = len(pos)
    outs: dict[int, set[int]] = {i: set() for i in range(m)}
    for a, b in edges:
        if a == b:
            raise InputError(f"loop at vertex {a}")
        outs[a].add(b)
    reach = []
    for i in range(m):
        k = 0
        while (i + k + 1) % m in outs[i]:
            k += 1
        if len(outs[i]) != k:
            raise InputError(
                f"out-neighborhood of vertex {i} is not a contiguous ccw run"
            )
        reach.append(k)
    return FiniteCyclicGraph(pos, tuple(reach))


def is_cyclic(positions, edges) -> tuple[bool, tuple[int, int, int] | None]:
    """Check the defining condition edge u0->u1 => edges u0->w->u1 for all w
    cyclically between.  Returns (ok, witness-triple-or-None)."""
    m = len(positions)
    eset = set(map(tuple, edges))
    for a, b in eset:
        if (b, a) in eset:
            return False, (a, b, a)
        w = (a + 1) % m
        while w != b:
            if (a, w) not in eset or (w, b) not in eset:
                return False, (a, w, b)
            w = (w + 1) % m
    return True, None


@dataclass(frozen=True)
class OrbitReport:
    length: int
    winding: int
    winding_fraction: Fraction
    orbit_count: int
    orbits: tuple[tuple[int, ...], ...]
    classification: tuple[str, ...]

    @property
    def periodic_vertices(self) -> set[int]:
        return {v for orb in self.orbits for v in orb}


def _find_orbits(graph: FiniteCyclicGraph):
    m = graph.size
    f = [graph.successor(i) for i in range(m)]
    state = [0] * m  # 0 new, 1 on current path, 2 finished
    orbits: list[list[int]] = []
    for s0 in range(m):
        if state[s0]:
            continue
        path = []
        u = s0
        while state[u] == 0:
            state[u] = 1
            path.append(u)
            u = f[u]
        if state[u] == 1:
            orbits.append(path[path.index(u) :])
        for v in path:
            state[v] = 2
    return f, orbits


def _orbit_stats(graph: FiniteCyclicGraph, f, orbit) -> tuple[int, int]:
    wraps = sum(1 for u in orbit if f[u] < u)
    return len(orbit), wraps


def _assert_monotone_steps(graph: FiniteCyclicGraph, f) -> None:
    # u < w <= f(u) (cyclically) must give f(u) <= f(w) <= f(f(u)).
    m = graph.size
    for u in range(m):
        fu = u + graph.reach[u]
        ffu = fu + graph.reach[fu % m]
        for j in range(1, graph.reach[u] + 1):
            w = u + j
            fw = w + graph.reach[w % m]
            if not (fu <= fw <= ffu):
                raise InternalConsistencyError(
                    "furthest-point map is not monotone", (u, w % m, fu % m)
                )


def analyze(graph: FiniteCyclicGraph) -> OrbitReport:
    """Iterate the furthest-point map: orbits, winding fraction, and the
    per-vertex periodic/fast/slow classification."""
    m = graph.size
    f, orbits = _find_orbits(graph)
    _assert_monotone_steps(graph, f)
    stats = [_orbit_stats(graph, f, orb) for orb in orbits]
    ell, omega = stats[0]
    for (l2, w2) in stats[1:]:
        if (l2, w2) != (ell, omega):
            raise InternalConsistencyError(
                "periodic orbits disagree on (length, winding)", stats
            )
    wf = Fraction(omega, ell)
    p, q = wf.numerator, wf.denominator

    periodic = {v for orb in orbits for v in orb}
    tags = []
    for u in range(m):
        if u in periodic:
            tags.append("periodic")
            continue
        # Accumulated turn over q greedy steps is wraps + (t_end - t_start);
        # comparing it with p needs only wrap counts and index order.
        wraps = 0
        v = u
        for _ in range(q):
            nxt = f[v]
            if nxt < v:
                wraps += 1
            v = nxt
        fast = wraps > p or (wraps == p and v > u)
        tags.append("fast" if fast else "slow")
    return OrbitReport(
        length=ell,
        winding=omega,
        winding_fraction=wf,
        orbit_count=len(orbits),
        orbits=tuple(tuple(o) for o in orbits),
        classification=tuple(tags),
    )


@dataclass(frozen=True)
class HomotopyType:
    kind: str  # "odd_sphere" | "wedge_of_even_spheres" | "circle"
    dim: int
    count: int = 1

    def betti(self, max_dim: int) -> list[int]:
        """Predicted Betti numbers b_0..b_{max_dim-1}."""
        b = [0] * max_dim
        if max_dim > 0:
            b[0] = 1
        if self.kind in ("odd_sphere", "circle"):
            if 0 < self.dim < max_dim:
                b[self.dim] += 1
        else:
            if self.dim == 0:
                b[0] = self.count + 1 if max_dim > 0 else 0
            elif self.dim < max_dim:
                b[self.dim] += self.count
        return b

    def describe(self) -> str:
        if self.kind in ("odd_sphere", "circle") or self.count == 1:
            return f"S^{self.dim}"
        if self.count == 0:
            return "point"
        return f"wedge of {self.count} copies of S^{self.dim}"


def homotopy_type(graph: FiniteCyclicGraph) -> HomotopyType:
    """Homotopy type of the clique complex from the winding fraction: an odd
    sphere in the generic case, a wedge of (orbit count - 1) even spheres
    when the fraction sits at l/(2l+1)."""
    rep = analyze(graph)
    return homotopy_type_from_fraction(rep.winding_fraction, rep.orbit_count)


def homotopy_type_from_fraction(wf: Fraction, orbit_count: int) -> HomotopyType:
    if not (0 <= wf < Fraction(1, 2)):
        raise InputError(f"winding fraction {wf} outside [0, 1/2)")
    if wf.denominator == 2 * wf.numerator + 1:
        l = wf.numerator
        return HomotopyType("wedge_of_even_spheres", 2 * l, orbit_count - 1)
    l = 0
    while not (Fraction(l, 2 * l + 1) < wf <= Fraction(l + 1, 2 * l + 3)):
        l += 1
    return HomotopyType("odd_sphere", 2 * l + 1)
