"""Pure-Python/numpy kernel backend.

The polygon walk is vectorized over input points with boolean masks; the
field-of-two reduction stores columns as Python big integers (xor and
bit_length are C-speed on CPython).  Numerics mirror the compiled backend
formula for formula so the two agree to the last bit in practice.
"""

from __future__ import annotations

import numpy as np

_VERTEX_SNAP = 1e-12


def _vertex_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    ang = 2.0 * np.pi * np.arange(n) / n
    return np.cos(ang), np.sin(ang)


def step_many(n: int, t, r) -> np.ndarray:
    """One counterclockwise step of Euclidean size r from each arc coord."""
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    r = np.broadcast_to(np.asarray(r, dtype=np.float64), t.shape).ravel()
    vx, vy = _vertex_table(n)
    k = np.minimum(np.floor(n * t).astype(np.int64), n - 1)
    s = n * t - k
    ax, ay = vx[k % n], vy[k % n]
    bx, by = vx[(k + 1) % n], vy[(k + 1) % n]
    px = (1.0 - s) * ax + s * bx
    py = (1.0 - s) * ay + s * by

    out = np.empty_like(t)
    done = np.zeros(t.shape, dtype=bool)
    idx = np.arange(t.size)
    for _ in range(n + 2):
        act = idx[~done]
        if act.size == 0:
            break
        ka = k[act]
        fx, fy = vx[(ka + 1) % n], vy[(ka + 1) % n]
        dfar = np.hypot(fx - px[act], fy - py[act])
        ra = r[act]
        hit = dfar >= ra - _VERTEX_SNAP
        snap = hit & (np.abs(dfar - ra) <= _VERTEX_SNAP)

        snapped = act[snap]
        out[snapped] = ((k[snapped] + 1) % n) / n
        done[snapped] = True

        solve = act[hit & ~snap]
        if solve.size:
            ks = k[solve]
            ax, ay = vx[ks % n], vy[ks % n]
            bx, by = vx[(ks + 1) % n], vy[(ks + 1) % n]
            dx, dy = ax - px[solve], ay - py[solve]
            ex, ey = bx - ax, by - ay
            qa = ex * ex + ey * ey
            qb = dx * ex + dy * ey
            qc = dx * dx + dy * dy - r[solve] * r[solve]
            disc = np.maximum(qb * qb - qa * qc, 0.0)
            u = (-qb + np.sqrt(disc)) / qa
            out[solve] = np.mod((ks + u) / n, 1.0)
            done[solve] = True

        miss = act[~hit]
        k[miss] += 1
    if not done.all():
        raise RuntimeError("ccw walk did not terminate; scale above threshold")
    return out


def star_travel_many(n: int, count: int, t, r) -> np.ndarray:
    """Total ccw geodesic travel over `count` chained steps of size r."""
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    r = np.broadcast_to(np.asarray(r, dtype=np.float64), t.shape).ravel()
    travel = np.zeros_like(t)
    cur = t
    for _ in range(count):
        nxt = step_many(n, cur, r)
        travel += np.mod(nxt - cur, 1.0)
        cur = nxt
    return travel


def inscribe_many(
    n: int,
    count: int,
    target: float,
    t,
    r_hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> np.ndarray:
    """Bisection per point for the radius where `count` chained steps travel
    exactly `target` turns.  NaN where no root exists at or below r_hi."""
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    lo = np.full(t.shape, 1e-9)
    hi = np.full(t.shape, float(r_hi))
    f_hi = star_travel_many(n, count, t, hi) - target
    no_root = f_hi < -1e-9
    for _ in range(max_iter):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        f = star_travel_many(n, count, t, mid) - target
        below = f < 0.0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    out[no_root] = np.nan
    return out


def reduce_lows(col_offsets, col_rows, n_rows: int) -> np.ndarray:
    """Left-to-right column reduction over the field with two elements.

    Columns are given in compressed form (offsets into a flat row-index
    array; entries of a column distinct, in any order).  Returns the pivot
    row ("low") of each reduced column, -1 for columns reduced to zero.
    """
    col_offsets = np.asarray(col_offsets, dtype=np.int64)
    col_rows = np.asarray(col_rows, dtype=np.int64)
    ncols = col_offsets.size - 1
    lows = np.full(ncols, -1, dtype=np.int64)
    pivot: dict[int, int] = {}
    rows_list = col_rows.tolist()
    offs = col_offsets.tolist()
    for j in range(ncols):
        c = 0
        for rr in rows_list[offs[j] : offs[j + 1]]:
            c |= 1 << rr
        while c:
            low = c.bit_length() - 1
            p = pivot.get(low)
            if p is None:
                pivot[low] = c
                lows[j] = low
                break
            c ^= p
    return lows
