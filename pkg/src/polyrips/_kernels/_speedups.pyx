# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: scalar C loops mirroring pure.py formula for
formula.  See _kernels/__init__.py for the interface contract."""

import numpy as np

cimport numpy as cnp
from libc.math cimport hypot, sqrt, floor, fabs, isnan
from libc.stdlib cimport calloc, free, malloc, realloc

cnp.import_array()

cdef double _VERTEX_SNAP = 1e-12


cdef double _step(int n, const double* vx, const double* vy,
                  double t, double r) noexcept nogil:
    """One ccw step of Euclidean size r; -1 on non-termination."""
    cdef double px, py, s, ax, ay, bx, by, dfar, dx, dy, ex, ey
    cdef double qa, qb, qc, disc, u
    cdef long k
    cdef int it
    t = t - floor(t)
    k = <long> (n * t)
    if k > n - 1:
        k = n - 1
    s = n * t - k
    ax = vx[k % n]; ay = vy[k % n]
    bx = vx[(k + 1) % n]; by = vy[(k + 1) % n]
    px = (1.0 - s) * ax + s * bx
    py = (1.0 - s) * ay + s * by
    for it in range(n + 2):
        bx = vx[(k + 1) % n]; by = vy[(k + 1) % n]
        dfar = hypot(bx - px, by - py)
        if dfar >= r - _VERTEX_SNAP:
            if fabs(dfar - r) <= _VERTEX_SNAP:
                return ((k + 1) % n) / (<double> n)
            ax = vx[k % n]; ay = vy[k % n]
            dx = ax - px; dy = ay - py
            ex = bx - ax; ey = by - ay
            qa = ex * ex + ey * ey
            qb = dx * ex + dy * ey
            qc = dx * dx + dy * dy - r * r
            disc = qb * qb - qa * qc
            if disc < 0.0:
                disc = 0.0
            u = (-qb + sqrt(disc)) / qa
            u = (k + u) / n
            return u - floor(u)
        k += 1
    return -1.0


cdef double _travel(int n, const double* vx, const double* vy,
                    int count, double t, double r) noexcept nogil:
    cdef double total = 0.0, cur = t, nxt, d
    cdef int i
    for i in range(count):
        nxt = _step(n, vx, vy, cur, r)
        if nxt < 0.0:
            return -1.0
        d = nxt - cur
        d = d - floor(d)
        total += d
        cur = nxt
    return total


def step_many(int n, t, r):
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    r = np.array(np.broadcast_to(np.asarray(r, dtype=np.float64), t.shape).ravel())
    ang = 2.0 * np.pi * np.arange(n) / n
    vxa = np.ascontiguousarray(np.cos(ang))
    vya = np.ascontiguousarray(np.sin(ang))
    cdef double[::1] vx = vxa, vy = vya
    cdef double[::1] tv = np.ascontiguousarray(t)
    cdef double[::1] rv = np.ascontiguousarray(r)
    out = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m = tv.shape[0]
    cdef double res
    with nogil:
        for i in range(m):
            res = _step(n, &vx[0], &vy[0], tv[i], rv[i])
            if res < 0.0:
                with gil:
                    raise RuntimeError(
                        "ccw walk did not terminate; scale above threshold"
                    )
            ov[i] = res
    return out


def star_travel_many(int n, int count, t, r):
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    r = np.array(np.broadcast_to(np.asarray(r, dtype=np.float64), t.shape).ravel())
    ang = 2.0 * np.pi * np.arange(n) / n
    vxa = np.ascontiguousarray(np.cos(ang))
    vya = np.ascontiguousarray(np.sin(ang))
    cdef double[::1] vx = vxa, vy = vya
    cdef double[::1] tv = np.ascontiguousarray(t)
    cdef double[::1] rv = np.ascontiguousarray(r)
    out = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m = tv.shape[0]
    cdef double res
    with nogil:
        for i in range(m):
            res = _travel(n, &vx[0], &vy[0], count, tv[i], rv[i])
            if res < 0.0:
                with gil:
                    raise RuntimeError(
                        "ccw walk did not terminate; scale above threshold"
                    )
            ov[i] = res
    return out


def inscribe_many(int n, int count, double target, t, double r_hi,
                  double tol=1e-12, int max_iter=200):
    t = np.mod(np.asarray(t, dtype=np.float64), 1.0).ravel()
    ang = 2.0 * np.pi * np.arange(n) / n
    vxa = np.ascontiguousarray(np.cos(ang))
    vya = np.ascontiguousarray(np.sin(ang))
    cdef double[::1] vx = vxa, vy = vya
    cdef double[::1] tv = np.ascontiguousarray(t)
    out = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m = tv.shape[0]
    cdef double lo, hi, mid, f
    cdef int it
    cdef double nan = float("nan")
    with nogil:
        for i in range(m):
            hi = r_hi
            f = _travel(n, &vx[0], &vy[0], count, tv[i], hi) - target
            if f < -1e-9:
                ov[i] = nan
                continue
            lo = 1e-9
            for it in range(max_iter):
                if hi - lo <= tol:
                    break
                mid = 0.5 * (lo + hi)
                f = _travel(n, &vx[0], &vy[0], count, tv[i], mid) - target
                if f < 0.0:
                    lo = mid
                else:
                    hi = mid
            ov[i] = 0.5 * (lo + hi)
    return out


# -- field-of-two column reduction --------------------------------------------

cdef struct PivCol:
    cnp.int32_t* idx
    cnp.int64_t nnz


def reduce_lows(col_offsets, col_rows, cnp.int64_t n_rows):
    """Lows of the left-to-right column reduction.  The working column is a
    bitset; pivot columns are kept as compressed row-index arrays and
    xor-scattered into it."""
    cdef cnp.int64_t[::1] offs = np.ascontiguousarray(col_offsets, dtype=np.int64)
    cdef cnp.int64_t[::1] rows = np.ascontiguousarray(col_rows, dtype=np.int64)
    cdef cnp.int64_t ncols = offs.shape[0] - 1
    lows = np.full(ncols, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] lv = lows
    if n_rows == 0 or ncols == 0:
        return lows

    cdef cnp.int64_t words = (n_rows + 63) >> 6
    cdef cnp.uint64_t* buf = <cnp.uint64_t*> calloc(words, sizeof(cnp.uint64_t))
    cdef PivCol* piv = <PivCol*> calloc(n_rows, sizeof(PivCol))
    if buf == NULL or piv == NULL:
        free(buf); free(piv)
        raise MemoryError()

    cdef cnp.int64_t j, p, rr, low, w, nnz, k
    cdef cnp.uint64_t word
    cdef cnp.int32_t* store
    cdef bint fail = 0
    try:
        with nogil:
            for j in range(ncols):
                low = -1
                for p in range(offs[j], offs[j + 1]):
                    rr = rows[p]
                    buf[rr >> 6] ^= (<cnp.uint64_t> 1) << (rr & 63)
                    if rr > low:
                        low = rr
                while low >= 0:
                    # locate the current top bit at or below `low`
                    w = low >> 6
                    word = buf[w] & ((<cnp.uint64_t> 0xFFFFFFFFFFFFFFFF)
                                     >> (63 - (low & 63)))
                    while word == 0:
                        w -= 1
                        if w < 0:
                            break
                        word = buf[w]
                    if w < 0:
                        low = -1
                        break
                    low = (w << 6) + 63 - _clz(word)
                    if piv[low].idx == NULL:
                        # claim: compress set bits up to `low`
                        nnz = 0
                        for k in range(w + 1):
                            word = buf[k]
                            while word:
                                nnz += 1
                                word &= word - 1
                        store = <cnp.int32_t*> malloc(nnz * sizeof(cnp.int32_t))
                        if store == NULL:
                            fail = 1
                            break
                        nnz = 0
                        for k in range(w + 1):
                            word = buf[k]
                            while word:
                                store[nnz] = <cnp.int32_t> ((k << 6) + _ctz(word))
                                nnz += 1
                                word &= word - 1
                            buf[k] = 0
                        piv[low].idx = store
                        piv[low].nnz = nnz
                        lv[j] = low
                        break
                    # reduce by the pivot column
                    for k in range(piv[low].nnz):
                        rr = piv[low].idx[k]
                        buf[rr >> 6] ^= (<cnp.uint64_t> 1) << (rr & 63)
                if fail:
                    break
                # a zero column leaves the buffer clean: the downward scan
                # that produced low = -1 visited every word and saw zeros
        if fail:
            raise MemoryError()
    finally:
        for j in range(n_rows):
            if piv[j].idx != NULL:
                free(piv[j].idx)
        free(piv)
        free(buf)
    return lows


cdef inline int _clz(cnp.uint64_t x) noexcept nogil:
    cdef int c = 0
    if (x >> 32) == 0:
        c += 32
        x <<= 32
    if (x >> 48) == 0:
        c += 16
        x <<= 16
    if (x >> 56) == 0:
        c += 8
        x <<= 8
    if (x >> 60) == 0:
        c += 4
        x <<= 4
    if (x >> 62) == 0:
        c += 2
        x <<= 2
    if (x >> 63) == 0:
        c += 1
    return c


cdef inline int _ctz(cnp.uint64_t x) noexcept nogil:
    cdef int c = 0
    if (x & <cnp.uint64_t> 0xFFFFFFFFu) == 0:
        c += 32
        x >>= 32
    if (x & <cnp.uint64_t> 0xFFFFu) == 0:
        c += 16
        x >>= 16
    if (x & <cnp.uint64_t> 0xFFu) == 0:
        c += 8
        x >>= 8
    if (x & <cnp.uint64_t> 0xFu) == 0:
        c += 4
        x >>= 4
    if (x & <cnp.uint64_t> 0x3u) == 0:
        c += 2
        x >>= 2
    if (x & <cnp.uint64_t> 0x1u) == 0:
        c += 1
    return c
