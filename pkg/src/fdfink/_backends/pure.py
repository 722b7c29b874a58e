"""NumPy implementation of the per-stroke numeric kernels.

This is the always-available fallback and the executable reference for
the Cython extension: both backends must return identical values for
identical inputs (the test suite enforces it).
"""

from __future__ import annotations

import math

import numpy as np

_SQRT2 = math.sqrt(2.0)
_QUARTER = math.pi / 4.0


def _mirror_pad_pow2(seq: np.ndarray) -> np.ndarray:
    n = seq.size
    target = 1 << (n - 1).bit_length()
    if target == n:
        return seq.copy()
    return np.pad(seq, (0, target - n), mode="symmetric")


def haar_smooth(seq, levels: int, soft: bool, threshold: float) -> np.ndarray:
    """Denoise one coordinate sequence with an orthonormal Haar cascade.

    Mirror-pads to the next power of two, analyzes ``levels`` deep
    (clamped to the padded dyadic depth), zeroes or soft-shrinks the
    detail bands, reconstructs and strips the padding. Output length
    always equals input length.
    """
    a = np.asarray(seq, dtype=np.float64)
    n = a.size
    if levels <= 0 or n < 2:
        return a.copy()
    approx = _mirror_pad_pow2(a)
    depth = min(levels, int(math.log2(approx.size)))
    details = []
    for _ in range(depth):
        even = approx[0::2]
        odd = approx[1::2]
        details.append((even - odd) / _SQRT2)
        approx = (even + odd) / _SQRT2
    for detail in reversed(details):
        if soft:
            detail = np.sign(detail) * np.maximum(np.abs(detail) - threshold, 0.0)
        else:
            detail = np.zeros_like(detail)
        out = np.empty(2 * approx.size, dtype=np.float64)
        out[0::2] = (approx + detail) / _SQRT2
        out[1::2] = (approx - detail) / _SQRT2
        approx = out
    return approx[:n]


def turning_indices(seq) -> np.ndarray:
    """Indices where the per-step motion sign of a sequence reverses.

    Steps are signed as sgn(seq[i] - seq[i+1]). A reversal between two
    nonzero step signs marks the point right after the earlier step;
    flat runs in between collapse onto that single point, and flat
    lead-ins or tails mark nothing.
    """
    a = np.asarray(seq, dtype=np.float64)
    step = np.sign(a[:-1] - a[1:])
    moving = np.flatnonzero(step)
    if moving.size < 2:
        return np.empty(0, dtype=np.int64)
    signs = step[moving]
    flips = np.flatnonzero(signs[:-1] != signs[1:])
    return (moving[flips] + 1).astype(np.int64)


def fuzzy_pairs(angles) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Resolve angles into their two flanking directions with memberships.

    Directions are 1..8 with centers at (d - 1) * pi/4; memberships are
    triangular with half-width pi/4, so each row sums to 1. The stronger
    membership comes first; an exact tie goes to the lower direction
    index. Accepts angles in [-pi, pi] (-pi resolves like +pi).
    """
    ang = np.asarray(angles, dtype=np.float64)
    t = ang / _QUARTER
    k = np.floor(t).astype(np.int64)
    frac = t - k
    d_lo = k % 8 + 1
    d_hi = (k + 1) % 8 + 1
    m_lo = 1.0 - frac
    swap = (frac > 0.5) | ((frac == 0.5) & (d_hi < d_lo))
    d1 = np.where(swap, d_hi, d_lo)
    m1 = np.where(swap, frac, m_lo)
    d2 = np.where(swap, d_lo, d_hi)
    m2 = np.where(swap, m_lo, frac)
    return d1, m1, d2, m2
