"""Brute-force verification backend: flag complexes, Betti numbers over the
two-element field, two-scale persistence ranks, and exact bottleneck
distance.

Everything here works from a raw distance matrix and shares no code path
with the predictions it is used to check.  Simplices are enumerated by
ordered clique extension with a hard budget; boundary matrices are reduced
column by column by the kernel backend (bit-packed xor elimination).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import InputError, ResourceBudgetError

DEFAULT_SIMPLEX_BUDGET = 10**7
# Distances within this of the scale count as equal to it, matching the
# engine's treatment of bisection-derived sample coordinates.
DIST_TOL = 1e-9


def simplex_budget() -> int:
    env = os.environ.get("POLYRIPS_SIMPLEX_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(
                f"POLYRIPS_SIMPLEX_BUDGET must be an integer, got {env!r}"
            ) from exc
    return DEFAULT_SIMPLEX_BUDGET


def check_distance_matrix(dist: np.ndarray) -> np.ndarray:
    dist = np.asarray(dist, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise InputError(f"distance matrix must be square, got {dist.shape}")
    if not np.allclose(dist, dist.T, atol=1e-12):
        raise InputError("distance matrix is not symmetric")
    if np.any(np.diag(dist) != 0.0):
        raise InputError("distance matrix has a nonzero diagonal")
    if np.any(dist < 0.0):
        raise InputError("distance matrix has negative entries")
    return dist


def read_distance_matrix(path) -> np.ndarray:
    """Plain text: first line the size m, then m rows of m decimals."""
    with open(path) as fh:
        first = fh.readline().strip()
        try:
            m = int(first)
        except ValueError as exc:
            raise InputError(f"bad distance matrix header {first!r}") from exc
        rows = [
            [float(x) for x in fh.readline().split()] for _ in range(m)
        ]
    mat = np.array(rows, dtype=np.float64)
    if mat.shape != (m, m):
        raise InputError(f"expected {m}x{m} matrix, got {mat.shape}")
    return check_distance_matrix(mat)


def write_distance_matrix(path, dist: np.ndarray) -> None:
    dist = check_distance_matrix(dist)
    with open(path, "w") as fh:
        fh.write(f"{dist.shape[0]}\n")
        for row in dist:
            fh.write(" ".join(f"{x:.12g}" for x in row) + "\n")


@dataclass
class FlagComplex:
    n_vertices: int
    max_dim: int
    simplices: dict[int, list[tuple[int, ...]]]
    diameters: dict[int, np.ndarray]

    def count(self, dim: int) -> int:
        return len(self.simplices.get(dim, ()))

    def total(self) -> int:
        return sum(len(v) for v in self.simplices.values())

    def euler_characteristic(self) -> int:
        return sum(
            (-1) ** d * len(s) for d, s in self.simplices.items()
        )


def vr_complex(
    dist: np.ndarray,
    r: float,
    convention: str = "strict",
    max_dim: int = 2,
    budget: int | None = None,
    tol: float = DIST_TOL,
) -> FlagComplex:
    """All cliques of the threshold graph with at most max_dim+1 vertices.

    Growth is by ordered extension: a d-simplex is extended by every common
    neighbor larger than its last vertex, so each clique is produced once,
    in lexicographic order.  Diameters are tracked for the two-scale rank.
    """
    dist = check_distance_matrix(dist)
    if convention not in ("strict", "closed"):
        raise InputError(f"unknown convention {convention!r}")
    if max_dim < 0:
        raise InputError("max_dim must be >= 0")
    budget = simplex_budget() if budget is None else budget
    m = dist.shape[0]
    if convention == "strict":
        adj = dist < r - tol
    else:
        adj = dist <= r + tol
    np.fill_diagonal(adj, False)

    masks = []
    for i in range(m):
        mask = 0
        for j in np.nonzero(adj[i])[0]:
            mask |= 1 << int(j)
        masks.append(mask)

    simplices: dict[int, list[tuple[int, ...]]] = {0: [(v,) for v in range(m)]}
    diameters: dict[int, np.ndarray] = {0: np.zeros(m)}
    total = m
    if total > budget:
        raise ResourceBudgetError(f"simplex budget {budget} exceeded at dim 0")
    for d in range(1, max_dim + 1):
        prev = simplices[d - 1]
        prev_diam = diameters[d - 1]
        cur: list[tuple[int, ...]] = []
        cur_diam: list[float] = []
        for si, sig in enumerate(prev):
            cand = masks[sig[0]]
            for v in sig[1:]:
                cand &= masks[v]
            cand >>= sig[-1] + 1
            base = sig[-1] + 1
            while cand:
                lsb = cand & -cand
                v = base + lsb.bit_length() - 1
                cand ^= lsb
                dm = prev_diam[si]
                for u in sig:
                    duv = dist[u, v]
                    if duv > dm:
                        dm = duv
                cur.append(sig + (v,))
                cur_diam.append(dm)
        total = total + len(cur)
        if total > budget:
            raise ResourceBudgetError(
                f"simplex budget {budget} exceeded at dim {d} "
                f"({total} simplices)"
            )
        simplices[d] = cur
        diameters[d] = np.array(cur_diam) if cur_diam else np.zeros(0)
        if not cur:
            for dd in range(d + 1, max_dim + 1):
                simplices[dd] = []
                diameters[dd] = np.zeros(0)
            break
    return FlagComplex(m, max_dim, simplices, diameters)


def _boundary_csc(
    faces: list[tuple[int, ...]],
    cofaces: list[tuple[int, ...]],
    face_index: dict[tuple[int, ...], int] | None = None,
):
    """Compressed columns of the boundary map cofaces -> faces."""
    if face_index is None:
        face_index = {s: i for i, s in enumerate(faces)}
    d = len(cofaces[0]) - 1 if cofaces else 0
    offsets = np.zeros(len(cofaces) + 1, dtype=np.int64)
    rows = np.empty(len(cofaces) * (d + 1), dtype=np.int64)
    pos = 0
    for j, s in enumerate(cofaces):
        for f in combinations(s, d):
            rows[pos] = face_index[f]
            pos += 1
        offsets[j + 1] = pos
    return offsets, rows[:pos]


def _boundary_rank(faces, cofaces) -> int:
    if not cofaces or not faces:
        return 0
    offsets, rows = _boundary_csc(faces, cofaces)
    lows = _kernels.reduce_lows(offsets, rows, len(faces))
    return int(np.count_nonzero(lows >= 0))


def betti(K: FlagComplex, max_dim: int | None = None) -> list[int]:
    """Betti numbers b_0 .. b_{max_dim-1} over the two-element field.

    b_k = #k-simplices - rank(boundary_k) - rank(boundary_{k+1}); the
    complex must have been built to dimension max_dim so the top rank is
    available.
    """
    if max_dim is None:
        max_dim = K.max_dim
    if max_dim > K.max_dim:
        raise InputError(
            f"complex built to dim {K.max_dim}, cannot report b_0..b_{max_dim - 1}"
        )
    ranks = {0: 0}
    for d in range(1, max_dim + 1):
        ranks[d] = _boundary_rank(
            K.simplices.get(d - 1, []), K.simplices.get(d, [])
        )
    out = []
    for d in range(max_dim):
        nd = K.count(d)
        out.append(nd - ranks[d] - ranks.get(d + 1, 0))
    return out


def two_scale_rank(
    dist: np.ndarray,
    r: float,
    r2: float,
    convention: str,
    dim: int,
    budget: int | None = None,
    tol: float = DIST_TOL,
) -> int:
    """Rank of the map induced on dim-dimensional homology by the inclusion
    of the complex at scale r into the complex at scale r2.

    Runs the standard persistence pairing on the two-step filtration:
    columns ordered with scale-r simplices first, so a dim-class survives
    the inclusion exactly when its birth column lies in the first block and
    no (dim+1)-column ever acquires it as a pivot.
    """
    if r2 < r:
        raise InputError(f"need r <= r2, got {r} > {r2}")
    K = vr_complex(dist, r2, convention, max_dim=dim + 1, budget=budget, tol=tol)
    thr = r - tol if convention == "strict" else r + tol

    def block_order(d):
        sims = K.simplices.get(d, [])
        diam = K.diameters.get(d, np.zeros(0))
        if convention == "closed":
            in_block = diam <= thr
        else:
            in_block = diam < thr
        inner = [i for i in range(len(sims)) if in_block[i]]
        outer = [i for i in range(len(sims)) if not in_block[i]]
        return [sims[i] for i in inner + outer], len(inner)

    faces, n_faces_in = block_order(dim - 1) if dim >= 1 else ([], 0)
    mids, n_mids_in = block_order(dim)
    tops, _ = block_order(dim + 1)

    # Births: dim-columns reducing to zero.
    if dim == 0:
        positive = list(range(len(mids)))
    else:
        offsets, rows = _boundary_csc(faces, mids)
        lows = _kernels.reduce_lows(offsets, rows, len(faces))
        positive = [j for j in range(len(mids)) if lows[j] < 0]
    born_in_block1 = [j for j in positive if j < n_mids_in]

    # Deaths: pivots of the (dim+1)-columns over the full filtration.
    killed: set[int] = set()
    if tops:
        mid_index = {s: i for i, s in enumerate(mids)}
        offsets, rows = _boundary_csc(mids, tops, face_index=mid_index)
        lows = _kernels.reduce_lows(offsets, rows, len(mids))
        killed = {int(l) for l in lows if l >= 0}

    return sum(1 for j in born_in_block1 if j not in killed)


# -- bottleneck distance ------------------------------------------------------

def _match_feasible(pts1, pts2, delta: float, eps: float = 1e-12) -> bool:
    """Perfect matching test at threshold delta.

    The standard augmentation: left side is pts1 plus one diagonal slot per
    point of pts2, right side is pts2 plus one slot per point of pts1.  A
    point may pair with a point of the other diagram within max-norm delta,
    or retire to its own diagonal slot when half its persistence is within
    delta; diagonal slots pair with each other freely.  Feasible iff the
    graph has a perfect matching (Kuhn's augmenting paths).
    """
    n1, n2 = len(pts1), len(pts2)
    diag1 = [0.5 * (d - b) <= delta + eps for b, d in pts1]
    diag2 = [0.5 * (d - b) <= delta + eps for b, d in pts2]
    n_left = n1 + n2   # pts1, then diagonal slots owned by pts2
    n_right = n2 + n1  # pts2, then diagonal slots owned by pts1

    def neighbors(i):
        if i < n1:
            b1, d1 = pts1[i]
            for j in range(n2):
                b2, d2 = pts2[j]
                if max(abs(b1 - b2), abs(d1 - d2)) <= delta + eps:
                    yield j
            if diag1[i]:
                yield n2 + i
        else:
            j = i - n1
            if diag2[j]:
                yield j
            yield from range(n2, n_right)

    match_r = [-1] * n_right

    def try_augment(i, seen):
        for j in neighbors(i):
            if not seen[j]:
                seen[j] = True
                if match_r[j] < 0 or try_augment(match_r[j], seen):
                    match_r[j] = i
                    return True
        return False

    for i in range(n_left):
        if not try_augment(i, [False] * n_right):
            return False
    return True


def bottleneck(bars1, bars2) -> float:
    """Exact bottleneck distance between finite persistence diagrams.

    Diagrams are multisets of (birth, death) pairs; interval endpoint
    closedness is ignored, as the metric cannot see it.  Binary search over
    the finite set of candidate values (pairwise max-norm costs and halved
    persistences), with bipartite feasibility at each probe.
    """
    pts1 = [(float(b), float(d)) for b, d in bars1]
    pts2 = [(float(b), float(d)) for b, d in bars2]
    for b, d in pts1 + pts2:
        if d < b:
            raise InputError(f"bar with death {d} before birth {b}")
    if not pts1 and not pts2:
        return 0.0
    cands = {0.0}
    for b1, d1 in pts1:
        cands.add(0.5 * (d1 - b1))
        for b2, d2 in pts2:
            cands.add(max(abs(b1 - b2), abs(d1 - d2)))
    for b2, d2 in pts2:
        cands.add(0.5 * (d2 - b2))
    values = sorted(cands)
    lo, hi = 0, len(values) - 1
    if not _match_feasible(pts1, pts2, values[hi]):
        raise InputError("no feasible matching at the largest candidate")
    while lo < hi:
        mid = (lo + hi) // 2
        if _match_feasible(pts1, pts2, values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


def hop_distance_matrix(m: int) -> np.ndarray:
    """Circular hop-count metric on m evenly indexed vertices; thresholding
    it at k + 1/2 recovers the regular cyclic graph with reach k."""
    idx = np.arange(m)
    diff = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(diff, m - diff).astype(np.float64)
