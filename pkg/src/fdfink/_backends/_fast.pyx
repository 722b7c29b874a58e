# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementation of the per-stroke numeric kernels.

Must stay value-identical to the composed NumPy route: same operation
order, same IEEE arithmetic, so results match bit for bit across
backends. Besides the three primitive kernels this backend fuses the
whole per-stroke chain (smooth, turning-point union, trim, fuzzy rows,
mean) into ``stroke_features``, which the pipeline picks up when
present.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, atan2, fabs, floor, sqrt

cnp.import_array()

cdef double SQRT2 = sqrt(2.0)
cdef double QUARTER = M_PI / 4.0


cdef inline Py_ssize_t _next_pow2(Py_ssize_t n):
    cdef Py_ssize_t p = 1
    while p < n:
        p <<= 1
    return p


cdef cnp.ndarray[cnp.float64_t, ndim=1] _haar_smooth(
    cnp.ndarray[cnp.float64_t, ndim=1] src, int levels, bint soft, double threshold
):
    cdef Py_ssize_t n = src.shape[0]
    if levels <= 0 or n < 2:
        return src.copy()

    cdef Py_ssize_t padded = _next_pow2(n)
    cdef int depth = 0
    cdef Py_ssize_t size = padded
    while size > 1 and depth < levels:
        size >>= 1
        depth += 1

    cdef cnp.ndarray[cnp.float64_t, ndim=1] coeff = np.empty(padded, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.empty(padded, dtype=np.float64)
    cdef double[::1] c = coeff
    cdef double[::1] w = work
    cdef double[::1] s = src
    cdef Py_ssize_t i, j, half, width
    cdef double a, b, d, shrunk

    for i in range(n):
        c[i] = s[i]
    for i in range(n, padded):
        # symmetric reflection about the last sample (padded < 2n always)
        c[i] = s[2 * n - 1 - i]

    # In-place packing: [0, width) splits into approx [0, half) and the
    # level's detail band [half, width).
    width = padded
    for j in range(depth):
        half = width >> 1
        for i in range(half):
            a = c[2 * i]
            b = c[2 * i + 1]
            w[i] = (a - b) / SQRT2
            c[i] = (a + b) / SQRT2
        for i in range(half):
            c[half + i] = w[i]
        width = half

    for j in range(depth - 1, -1, -1):
        half = padded >> (j + 1)
        for i in range(half):
            a = c[i]
            d = c[half + i]
            if soft:
                shrunk = fabs(d) - threshold
                if shrunk < 0.0:
                    shrunk = 0.0
                d = shrunk if d > 0.0 else (-shrunk if d < 0.0 else 0.0)
            else:
                d = 0.0
            w[2 * i] = (a + d) / SQRT2
            w[2 * i + 1] = (a - d) / SQRT2
        for i in range(2 * half):
            c[i] = w[i]

    return coeff[:n].copy()


cdef Py_ssize_t _turning(double[::1] s, cnp.int64_t[::1] out):
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t i, count = 0
    cdef int sign, prev_sign = 0
    cdef Py_ssize_t prev_at = 0
    cdef double step
    for i in range(n - 1):
        step = s[i] - s[i + 1]
        sign = 1 if step > 0.0 else (-1 if step < 0.0 else 0)
        if sign != 0:
            if prev_sign != 0 and sign != prev_sign:
                out[count] = prev_at + 1
                count += 1
            prev_sign = sign
            prev_at = i
    return count


cdef inline void _fuzzy_split(
    double ang, long long* d1, double* m1, long long* d2, double* m2
):
    cdef double t = ang / QUARTER
    cdef long long k = <long long> floor(t)
    cdef double frac = t - <double> k
    cdef long long lo = ((k % 8) + 8) % 8 + 1
    cdef long long hi = (((k + 1) % 8) + 8) % 8 + 1
    if frac > 0.5 or (frac == 0.5 and hi < lo):
        d1[0] = hi
        m1[0] = frac
        d2[0] = lo
        m2[0] = 1.0 - frac
    else:
        d1[0] = lo
        m1[0] = 1.0 - frac
        d2[0] = hi
        m2[0] = frac


cdef inline long long _dominant(double dx, double dy):
    if dx == 0.0 and dy == 0.0:
        return 0
    cdef long long d1, d2
    cdef double m1, m2
    _fuzzy_split(atan2(dy, dx), &d1, &m1, &d2, &m2)
    return d1


def haar_smooth(seq, int levels, bint soft, double threshold):
    """Denoise one coordinate sequence; see pure.haar_smooth."""
    return _haar_smooth(np.ascontiguousarray(seq, dtype=np.float64), levels, soft, threshold)


def turning_indices(seq):
    """Indices where the per-step motion sign reverses; see pure."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] src = np.ascontiguousarray(seq, dtype=np.float64)
    cdef Py_ssize_t n = src.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(n if n > 1 else 1, dtype=np.int64)
    cdef Py_ssize_t count = _turning(src, out)
    return out[:count].copy()


def fuzzy_pairs(angles):
    """Flanking directions and memberships per angle; see pure."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] src = np.ascontiguousarray(angles, dtype=np.float64)
    cdef Py_ssize_t n = src.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] d1 = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m1 = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] d2 = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m2 = np.empty(n, dtype=np.float64)
    cdef double[::1] a = src
    cdef cnp.int64_t[::1] p1 = d1
    cdef double[::1] q1 = m1
    cdef cnp.int64_t[::1] p2 = d2
    cdef double[::1] q2 = m2
    cdef Py_ssize_t i
    cdef long long dd1, dd2
    cdef double mm1, mm2
    for i in range(n):
        _fuzzy_split(a[i], &dd1, &mm1, &dd2, &mm2)
        p1[i] = dd1
        q1[i] = mm1
        p2[i] = dd2
        q2[i] = mm2
    return d1, m1, d2, m2


def stroke_features(xs, ys, int levels, bint soft, double threshold):
    """Fused per-stroke chain on anchored coordinate sequences.

    Returns (sx, sy, critical_idx, trimmed_idx, directions, memberships,
    skipped, fdf); ``directions``/``memberships`` are (rows, 2) arrays.
    Zero rows means the stroke was fully degenerate; the caller raises.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sx = _haar_smooth(
        np.ascontiguousarray(xs, dtype=np.float64), levels, soft, threshold)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sy = _haar_smooth(
        np.ascontiguousarray(ys, dtype=np.float64), levels, soft, threshold)
    cdef Py_ssize_t n = sx.shape[0]

    cdef cnp.ndarray[cnp.int64_t, ndim=1] tx = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ty = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t cx = _turning(sx, tx)
    cdef Py_ssize_t cy = _turning(sy, ty)

    # Sorted union of {0, n-1} and both axes' marks (marks lie in [1, n-2]).
    cdef cnp.ndarray[cnp.int64_t, ndim=1] crit = np.empty(cx + cy + 2, dtype=np.int64)
    cdef cnp.int64_t[::1] cr = crit
    cdef cnp.int64_t[::1] vx = tx
    cdef cnp.int64_t[::1] vy = ty
    cdef Py_ssize_t ix = 0, iy = 0, kc = 0
    cdef long long candidate
    cr[kc] = 0
    kc += 1
    while ix < cx or iy < cy:
        if iy >= cy or (ix < cx and vx[ix] <= vy[iy]):
            candidate = vx[ix]
            ix += 1
        else:
            candidate = vy[iy]
            iy += 1
        if candidate != cr[kc - 1]:
            cr[kc] = candidate
            kc += 1
    if n - 1 != cr[kc - 1]:
        cr[kc] = n - 1
        kc += 1

    # Trim: drop interior points whose in/out dominant directions match,
    # rescanning until a full pass removes nothing.
    cdef cnp.ndarray[cnp.int64_t, ndim=1] keep = crit[:kc].copy()
    cdef cnp.int64_t[::1] kp = keep
    cdef cnp.ndarray[cnp.float64_t, ndim=1] px = np.empty(kc, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] py = np.empty(kc, dtype=np.float64)
    cdef double[::1] qx = px
    cdef double[::1] qy = py
    cdef double[::1] wx = sx
    cdef double[::1] wy = sy
    cdef Py_ssize_t i, j
    for i in range(kc):
        qx[i] = wx[kp[i]]
        qy[i] = wy[kp[i]]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dirs = np.empty(kc - 1, dtype=np.int64)
    cdef cnp.int64_t[::1] dr = dirs
    cdef Py_ssize_t kt = kc
    for i in range(kt - 1):
        dr[i] = _dominant(qx[i + 1] - qx[i], qy[i + 1] - qy[i])
    cdef bint changed = True
    cdef Py_ssize_t at
    while changed:
        changed = False
        at = 1
        while at < kt - 1:
            if dr[at - 1] != 0 and dr[at - 1] == dr[at]:
                for j in range(at, kt - 1):
                    kp[j] = kp[j + 1]
                    qx[j] = qx[j + 1]
                    qy[j] = qy[j + 1]
                for j in range(at, kt - 2):
                    dr[j] = dr[j + 1]
                kt -= 1
                dr[at - 1] = _dominant(qx[at] - qx[at - 1], qy[at] - qy[at - 1])
                changed = True
            else:
                at += 1

    # Fuzzy direction rows over the surviving segments.
    cdef cnp.ndarray[cnp.int64_t, ndim=2] directions = np.empty((kt - 1, 2), dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] memberships = np.empty((kt - 1, 2), dtype=np.float64)
    cdef cnp.int64_t[:, ::1] dd = directions
    cdef double[:, ::1] mm = memberships
    cdef Py_ssize_t rows = 0
    cdef int skipped = 0
    cdef double dx, dy
    cdef long long r1, r2
    cdef double s1, s2
    for i in range(kt - 1):
        dx = qx[i + 1] - qx[i]
        dy = qy[i + 1] - qy[i]
        if dx == 0.0 and dy == 0.0:
            skipped += 1
            continue
        _fuzzy_split(atan2(dy, dx), &r1, &s1, &r2, &s2)
        dd[rows, 0] = r1
        dd[rows, 1] = r2
        mm[rows, 0] = s1
        mm[rows, 1] = s2
        rows += 1

    # Mean membership per direction; accumulation order matches the
    # NumPy route (row by row, primary before secondary).
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fdf = np.zeros(8, dtype=np.float64)
    cdef double[::1] f = fdf
    cdef double sums[8]
    cdef long long counts[8]
    for i in range(8):
        sums[i] = 0.0
        counts[i] = 0
    for i in range(rows):
        sums[dd[i, 0] - 1] += mm[i, 0]
        counts[dd[i, 0] - 1] += 1
        sums[dd[i, 1] - 1] += mm[i, 1]
        counts[dd[i, 1] - 1] += 1
    for i in range(8):
        f[i] = sums[i] / (counts[i] if counts[i] > 0 else 1)

    return (
        sx,
        sy,
        crit[:kc].copy(),
        keep[:kt].copy(),
        directions[:rows].copy(),
        memberships[:rows].copy(),
        skipped,
        fdf,
    )
