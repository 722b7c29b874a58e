"""End-to-end feature extraction: smooth, find turns, trim, fuzzify, average.

When the active backend ships the fused ``stroke_features`` kernel
(Cython), the whole per-stroke chain runs in C; otherwise it is composed
from the module-level operations. Both routes are value-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backends
from .corpus import Stroke
from .features import FdfMatrix, FeatureError, fdf_matrix, mean_fdf
from .smoothing import SmoothingConfig, smooth_sequence
from .turning import CriticalPoints, critical_from_axes, trim_spurious

_DEGENERATE_MSG = "every consecutive turning-point pair is coincident"


@dataclass
class StrokeAnalysis:
    """Full per-stroke breakdown, for inspection and UI overlays.

    ``critical`` / ``trimmed`` carry smoothed (re-anchored) coordinates;
    their indices refer to the original point order, so overlays can map
    them back onto the raw ink.
    """

    n_points: int
    critical: CriticalPoints
    trimmed: CriticalPoints
    matrix: FdfMatrix
    fdf: np.ndarray


def _fused_call(raw: np.ndarray, cfg: SmoothingConfig):
    """Run the fused kernel if the backend has one, else None.

    Coordinates are re-anchored at the first sample going in: angles and
    step signs only see differences, and shifting integer device offsets
    out keeps the wavelet arithmetic (hence the features) bit-stable
    under translation.
    """
    fused = getattr(_backends.kernels(), "stroke_features", None)
    if fused is None:
        return None
    return fused(
        raw[:, 0] - raw[0, 0],
        raw[:, 1] - raw[0, 1],
        cfg.levels,
        cfg.mode == "soft_threshold",
        cfg.threshold,
    )


def analyze_stroke(stroke: Stroke, config: SmoothingConfig | None = None) -> StrokeAnalysis:
    cfg = config if config is not None else SmoothingConfig()
    raw = stroke.points
    fused = _fused_call(raw, cfg)
    if fused is not None:
        sx, sy, crit_idx, trim_idx, dirs, mems, skipped, fdf = fused
        if dirs.shape[0] == 0:
            raise FeatureError(_DEGENERATE_MSG)
        critical = CriticalPoints(crit_idx, np.column_stack([sx[crit_idx], sy[crit_idx]]))
        trimmed = CriticalPoints(trim_idx, np.column_stack([sx[trim_idx], sy[trim_idx]]))
        matrix = FdfMatrix(dirs, mems, skipped)
        return StrokeAnalysis(raw.shape[0], critical, trimmed, matrix, fdf)
    xs = smooth_sequence(raw[:, 0] - raw[0, 0], cfg)
    ys = smooth_sequence(raw[:, 1] - raw[0, 1], cfg)
    critical = critical_from_axes(xs, ys)
    trimmed = trim_spurious(critical)
    matrix = fdf_matrix(trimmed)
    return StrokeAnalysis(raw.shape[0], critical, trimmed, matrix, mean_fdf(matrix))


def extract_fdf(stroke: Stroke, config: SmoothingConfig | None = None) -> np.ndarray:
    """The stroke's 8-component mean fuzzy direction vector.

    Raises FeatureError for degenerate strokes (all points coincident).
    """
    cfg = config if config is not None else SmoothingConfig()
    raw = stroke.points
    fused = _fused_call(raw, cfg)
    if fused is not None:
        if fused[4].shape[0] == 0:
            raise FeatureError(_DEGENERATE_MSG)
        return fused[7]
    xs = smooth_sequence(raw[:, 0] - raw[0, 0], cfg)
    ys = smooth_sequence(raw[:, 1] - raw[0, 1], cfg)
    trimmed = trim_spurious(critical_from_axes(xs, ys))
    return mean_fdf(fdf_matrix(trimmed))
