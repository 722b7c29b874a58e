"""Fuzzy 8-direction features over turning-point segments.

Directions are indexed 1..8 counterclockwise from the positive x axis,
centered at (d - 1) * pi/4:

        3
     4  |  2
      \\ | /
   5 ----+---- 1
      / | \\
     6  |  8
        7

A segment angle always falls between two adjacent centers and gets a
triangular membership in both (half-width pi/4), so the two memberships
of a row sum to exactly 1. Rows are oriented along pen motion: the angle
of the segment from turning point c[l] to c[l+1] is that of the vector
c[l+1] - c[l]. Averaging the recorded memberships per direction yields
the stroke's 8-component feature vector; a direction never recorded
stays exactly 0, while a recorded membership of 0.0 still counts as an
occurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import _backends

if TYPE_CHECKING:
    from .turning import CriticalPoints

QUARTER = math.pi / 4.0

DIRECTION_CENTERS = tuple(
    math.remainder((d - 1) * QUARTER, math.tau) for d in range(1, 9)
)


class FeatureError(ValueError):
    """Raised when a stroke is too degenerate to yield features."""


@dataclass(frozen=True)
class FuzzyDirPair:
    """One row of the direction matrix: (direction, membership) twice.

    The two directions are adjacent modulo 8 and the memberships sum
    to 1; ``primary`` carries the larger membership.
    """

    primary: tuple[int, float]
    secondary: tuple[int, float]


@dataclass
class FdfMatrix:
    """Per-segment fuzzy direction rows, stored columnar for speed.

    ``directions[r]`` holds (primary, secondary) indices for row r and
    ``memberships[r]`` the matching membership values. ``skipped``
    counts degenerate (coincident) point pairs that produced no row.
    """

    directions: np.ndarray
    memberships: np.ndarray
    skipped: int = 0

    def __len__(self) -> int:
        return self.directions.shape[0]

    def rows(self) -> list[FuzzyDirPair]:
        return [
            FuzzyDirPair(
                (int(self.directions[r, 0]), float(self.memberships[r, 0])),
                (int(self.directions[r, 1]), float(self.memberships[r, 1])),
            )
            for r in range(len(self))
        ]


def angle_between(p_l, p_m) -> float:
    """Quadrant-aware angle of the vector p_l - p_m, in (-pi, pi]."""
    dx = float(p_l[0]) - float(p_m[0])
    dy = float(p_l[1]) - float(p_m[1])
    if dx == 0.0 and dy == 0.0:
        raise FeatureError("coincident points span no direction")
    ang = math.atan2(dy, dx)
    return math.pi if ang <= -math.pi else ang


def fuzzy_membership(center: float, deg: float) -> float:
    """Triangular membership 1 - |center - deg| / (pi/4), wrap-aware.

    Meaningful (in [0, 1]) when the circular distance is at most pi/4,
    which callers guarantee by picking flanking centers.
    """
    delta = abs(math.remainder(center - deg, math.tau))
    return 1.0 - delta / QUARTER


def deg2fuzzydir(deg: float) -> FuzzyDirPair:
    """The two adjacent directions flanking ``deg`` with memberships.

    Ties at the exact midpoint go to the lower direction index. Any
    finite angle is accepted and wrapped onto the circle.
    """
    wrapped = math.remainder(deg, math.tau)
    t = wrapped / QUARTER
    k = math.floor(t)
    frac = t - k
    d_lo = k % 8 + 1
    d_hi = (k + 1) % 8 + 1
    if frac > 0.5 or (frac == 0.5 and d_hi < d_lo):
        return FuzzyDirPair((d_hi, frac), (d_lo, 1.0 - frac))
    return FuzzyDirPair((d_lo, 1.0 - frac), (d_hi, frac))


def dominant_direction(p, q) -> int:
    """Strongest direction of pen motion from p to q; 0 when coincident."""
    if float(p[0]) == float(q[0]) and float(p[1]) == float(q[1]):
        return 0
    return deg2fuzzydir(angle_between(q, p)).primary[0]


def fdf_matrix(critical: "CriticalPoints") -> FdfMatrix:
    """One fuzzy direction row per consecutive turning-point pair.

    Coincident pairs contribute no row but are counted in ``skipped``.
    Angles come from libm atan2 (not the vectorized ufunc, which may
    differ in the last ulp) so every backend sees identical values.
    """
    pts = critical.points
    delta = pts[1:] - pts[:-1]
    angles = [
        math.atan2(dy, dx) for dx, dy in delta if dx != 0.0 or dy != 0.0
    ]
    skipped = delta.shape[0] - len(angles)
    if not angles:
        raise FeatureError("every consecutive turning-point pair is coincident")
    d1, m1, d2, m2 = _backends.kernels().fuzzy_pairs(np.asarray(angles))
    return FdfMatrix(
        directions=np.column_stack([d1, d2]),
        memberships=np.column_stack([m1, m2]),
        skipped=skipped,
    )


def mean_fdf(matrix: FdfMatrix) -> np.ndarray:
    """Average the recorded memberships per direction into an 8-vector.

    Each component is the sum of memberships recorded in that direction
    divided by how many rows recorded it; unrecorded directions are
    exactly 0.
    """
    if len(matrix) == 0:
        raise FeatureError("empty direction matrix")
    slots = matrix.directions.ravel() - 1
    values = matrix.memberships.ravel()
    counts = np.bincount(slots, minlength=8)
    sums = np.bincount(slots, weights=values, minlength=8)
    return sums / np.maximum(counts, 1)
