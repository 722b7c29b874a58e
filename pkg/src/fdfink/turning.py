"""Turning (critical) point extraction from coordinate sign changes.

Each axis is scanned independently: the step sign sequence is
sgn(seq[i] - seq[i+1]) and a point is a turning point of that axis when
the motion direction actually reverses there. A flat run between two
opposite signs counts as one turn, marked at the run's first point;
plateaus inside a monotone run and flat lead-ins or tails are not turns.
The stroke's critical points are the union of both axes' turning points
plus both endpoints, which are always kept.

Real pens emit several near-identical samples around every genuine
corner, so the raw union usually contains runs of points heading the
same way. ``trim_spurious`` drops interior points whose incoming and
outgoing segments share the same dominant fuzzy direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backends
from .corpus import Stroke
from .features import dominant_direction


@dataclass
class CriticalPoints:
    """Strictly increasing point indices into a stroke plus their coordinates."""

    indices: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        pts = np.asarray(self.points, dtype=np.float64)
        if idx.ndim != 1 or idx.size < 2:
            raise ValueError("need at least the two stroke endpoints")
        if np.any(idx[1:] <= idx[:-1]):
            raise ValueError("indices must be strictly increasing")
        if pts.shape != (idx.size, 2):
            raise ValueError("points must align with indices")
        self.indices = idx
        self.points = pts

    @property
    def k(self) -> int:
        return int(self.indices.size)


def sign_diff(seq) -> np.ndarray:
    """Step signs sgn(seq[i] - seq[i+1]) as an int array of length n-1."""
    a = np.asarray(seq, dtype=np.float64)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need a 1-D sequence of at least 2 samples")
    return np.sign(a[:-1] - a[1:]).astype(np.int64)


def critical_indices(seq) -> np.ndarray:
    """Sorted indices where the sequence's motion direction reverses."""
    a = np.asarray(seq, dtype=np.float64)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need a 1-D sequence of at least 2 samples")
    return _backends.kernels().turning_indices(a)


def critical_from_axes(xs: np.ndarray, ys: np.ndarray) -> CriticalPoints:
    """Turning-point union for pre-split coordinate sequences."""
    n = xs.shape[0]
    kernels = _backends.kernels()
    idx = np.unique(
        np.concatenate(
            [
                np.array([0, n - 1], dtype=np.int64),
                kernels.turning_indices(xs),
                kernels.turning_indices(ys),
            ]
        )
    )
    return CriticalPoints(idx, np.column_stack([xs[idx], ys[idx]]))


def extract_critical_points(stroke: Stroke) -> CriticalPoints:
    """Union of x- and y-axis turning points plus both endpoints."""
    return critical_from_axes(stroke.points[:, 0], stroke.points[:, 1])


def _dominant_directions(points: np.ndarray) -> list[int]:
    """Dominant direction per consecutive segment, 0 for coincident ends.

    Angles come from libm atan2 (not the vectorized ufunc, which may
    differ in the last ulp) so every backend sees identical values.
    """
    delta = points[1:] - points[:-1]
    dirs = np.zeros(delta.shape[0], dtype=np.int64)
    slots = []
    angles = []
    for i, (dx, dy) in enumerate(delta):
        if dx != 0.0 or dy != 0.0:
            slots.append(i)
            angles.append(math.atan2(dy, dx))
    if slots:
        dirs[slots] = _backends.kernels().fuzzy_pairs(np.asarray(angles))[0]
    return dirs.tolist()


def trim_spurious(critical: CriticalPoints) -> CriticalPoints:
    """Drop interior points that do not change the dominant direction.

    Scans left to right, removing a point whenever the segments into and
    out of it share the same dominant direction, and repeats until a full
    pass removes nothing, so the result is a fixed point (idempotent).
    Endpoints are never removed; segments with coincident ends have no
    direction and never make a point spurious.
    """
    idx = list(critical.indices)
    pts = [critical.points[i] for i in range(critical.k)]
    dirs = _dominant_directions(critical.points)

    changed = True
    while changed:
        changed = False
        at = 1
        while at < len(pts) - 1:
            if dirs[at - 1] != 0 and dirs[at - 1] == dirs[at]:
                del idx[at]
                del pts[at]
                del dirs[at]
                dirs[at - 1] = dominant_direction(pts[at - 1], pts[at])
                changed = True
            else:
                at += 1
    return CriticalPoints(np.array(idx, dtype=np.int64), np.array(pts))
