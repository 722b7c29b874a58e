"""Haar-wavelet smoothing of stroke coordinate sequences.

Electronic pens sample at a fixed rate (typically 100 Hz) and pick up
small sensor undulations that masquerade as turning points, so strokes
are denoised before feature extraction. The x and y sequences are
treated as independent 1-D signals: mirror-pad to a power of two, run an
orthonormal Haar analysis, damp the detail bands, synthesize back and
strip the padding.

``zero_detail`` drops every detail band down to the configured depth
(block averaging); ``soft_threshold`` shrinks detail coefficients toward
zero by a fixed amount instead, which preserves sharp genuine corners
better when the noise floor is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backends
from .corpus import Stroke

_SQRT2 = math.sqrt(2.0)

MODES = ("zero_detail", "soft_threshold")


@dataclass(frozen=True)
class SmoothingConfig:
    levels: int = 2
    mode: str = "zero_detail"
    threshold: float = 0.0

    def __post_init__(self):
        if not isinstance(self.levels, int) or self.levels < 0:
            raise ValueError("levels must be a non-negative integer")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.threshold >= 0:
            raise ValueError("threshold must be non-negative")

    def to_dict(self) -> dict:
        return {"levels": self.levels, "mode": self.mode, "threshold": self.threshold}

    @classmethod
    def from_dict(cls, obj: dict) -> "SmoothingConfig":
        return cls(
            levels=int(obj["levels"]),
            mode=str(obj["mode"]),
            threshold=float(obj["threshold"]),
        )


@dataclass
class HaarPyramid:
    """Analysis output: coarsest approximation plus detail bands.

    ``details[0]`` is the finest band; ``length`` remembers the pre-pad
    input length so reconstruction can strip the mirror padding.
    """

    length: int
    approx: np.ndarray
    details: list[np.ndarray] = field(default_factory=list)

    @property
    def levels(self) -> int:
        return len(self.details)


def mirror_pad_pow2(seq: np.ndarray) -> np.ndarray:
    """Symmetric (half-sample mirror) padding up to the next power of two."""
    a = np.asarray(seq, dtype=np.float64)
    n = a.size
    target = 1 << (n - 1).bit_length()
    if target == n:
        return a.copy()
    return np.pad(a, (0, target - n), mode="symmetric")


def haar_forward(seq, levels: int) -> HaarPyramid:
    """Orthonormal Haar analysis of a 1-D sequence.

    Each level maps pairs (a, b) to ((a+b)/sqrt2, (a-b)/sqrt2), so the
    transform preserves the energy of the (padded) input. ``levels``
    deeper than the padded dyadic depth are clamped; ``levels=0`` returns
    the sequence itself as the approximation.
    """
    a = np.asarray(seq, dtype=np.float64)
    if a.ndim != 1 or a.size < 1:
        raise ValueError("expected a non-empty 1-D sequence")
    if levels < 0:
        raise ValueError("levels must be non-negative")
    n = a.size
    if levels == 0 or n < 2:
        return HaarPyramid(length=n, approx=a.copy())
    approx = mirror_pad_pow2(a)
    depth = min(levels, int(math.log2(approx.size)))
    details: list[np.ndarray] = []
    for _ in range(depth):
        even = approx[0::2]
        odd = approx[1::2]
        details.append((even - odd) / _SQRT2)
        approx = (even + odd) / _SQRT2
    return HaarPyramid(length=n, approx=approx, details=details)


def haar_inverse(pyramid: HaarPyramid) -> np.ndarray:
    """Perfect reconstruction of the original (unpadded) sequence."""
    approx = np.asarray(pyramid.approx, dtype=np.float64)
    if approx.ndim != 1 or approx.size < 1:
        raise ValueError("pyramid approximation must be a non-empty 1-D array")
    for detail in reversed(pyramid.details):
        band = np.asarray(detail, dtype=np.float64)
        if band.shape != approx.shape:
            raise ValueError(
                f"detail band of length {band.size} does not match "
                f"approximation of length {approx.size}"
            )
        out = np.empty(2 * approx.size, dtype=np.float64)
        out[0::2] = (approx + band) / _SQRT2
        out[1::2] = (approx - band) / _SQRT2
        approx = out
    if not 1 <= pyramid.length <= approx.size:
        raise ValueError(
            f"pyramid length {pyramid.length} inconsistent with "
            f"{approx.size} reconstructed samples"
        )
    return approx[: pyramid.length]


def smooth_sequence(seq, config: SmoothingConfig) -> np.ndarray:
    """Denoise one coordinate sequence; length is preserved.

    ``levels=0`` is an exact copy (no float arithmetic at all).
    """
    a = np.asarray(seq, dtype=np.float64)
    if config.levels == 0:
        return a.copy()
    return _backends.kernels().haar_smooth(
        a, config.levels, config.mode == "soft_threshold", config.threshold
    )


def smooth_stroke(stroke: Stroke, config: SmoothingConfig | None = None) -> Stroke:
    """Smooth x and y independently; point count is unchanged."""
    cfg = config if config is not None else SmoothingConfig()
    xs = smooth_sequence(stroke.points[:, 0], cfg)
    ys = smooth_sequence(stroke.points[:, 1], cfg)
    return Stroke(np.column_stack([xs, ys]), stroke.sample_rate_hz)
