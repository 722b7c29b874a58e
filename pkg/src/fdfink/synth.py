"""Synthetic labeled stroke corpora for desk-scale training and evaluation.

Templates are short polylines in the unit box, optionally bowed into
arcs per segment. Instances resample a template with pen-like kinematics
(denser samples near bends, where real writing slows down) and then
perturb it with writer-style jitter: a small random rotation and scale
about the centroid plus per-point sensor noise. Everything is a pure
function of the seeds, so corpora are bit-reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Stroke, StrokeRecord

POINTS_PER_UNIT = 90
MIN_POINTS = 30


@dataclass
class TemplateSpec:
    """A labeled shape: polyline control points in [0, 1]^2.

    ``curvature`` optionally bows each segment into a quadratic arc; the
    value is the control-point offset perpendicular to the chord,
    relative to chord length (apex displacement is half of it).
    """

    id: str
    polyline: np.ndarray
    curvature: np.ndarray | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("template id must be non-empty")
        poly = np.asarray(self.polyline, dtype=np.float64)
        if poly.ndim != 2 or poly.shape[1] != 2 or poly.shape[0] < 2:
            raise ValueError("polyline needs at least 2 control points")
        if np.any(poly < 0.0) or np.any(poly > 1.0):
            raise ValueError("control points must lie in the unit box")
        self.polyline = poly
        if self.curvature is not None:
            bows = np.asarray(self.curvature, dtype=np.float64)
            if bows.shape != (poly.shape[0] - 1,):
                raise ValueError("curvature needs one bow factor per segment")
            self.curvature = bows


@dataclass(frozen=True)
class VariabilitySpec:
    """Writer-style jitter magnitudes; all zero means exact resampling."""

    rotation_jitter: float = 0.0
    scale_jitter: float = 0.0
    point_noise: float = 0.0
    speed_profile: float = 0.5
    seed: int = 0

    def __post_init__(self):
        for name in ("rotation_jitter", "scale_jitter", "point_noise"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not 0.0 <= self.speed_profile < 1.0:
            raise ValueError("speed_profile must be in [0, 1)")


def _segment_points(a, b, bow: float, count: int, profile: float, drop_first: bool):
    u = np.linspace(0.0, 1.0, count)
    if drop_first:
        u = u[1:]
    # Slow-pen warp: sample density peaks at the segment ends (the bends).
    t = u - profile * np.sin(2.0 * math.pi * u) / (2.0 * math.pi) if profile else u
    chord = b - a
    mid = (a + b) / 2.0
    normal = np.array([-chord[1], chord[0]])
    control = mid + bow * normal
    tt = t[:, None]
    return (1 - tt) ** 2 * a + 2 * (1 - tt) * tt * control + tt**2 * b


def sample_template(template: TemplateSpec, speed_profile: float = 0.0) -> np.ndarray:
    """Deterministic pen-like resampling of a template path."""
    poly = template.polyline
    segments = poly.shape[0] - 1
    chords = np.linalg.norm(np.diff(poly, axis=0), axis=1)
    total = float(chords.sum())
    if total <= 0.0:
        raise ValueError(f"template {template.id!r} has zero total length")
    budget = max(MIN_POINTS, int(round(total * POINTS_PER_UNIT)))
    counts = [max(3, int(round(budget * chord / total))) for chord in chords]
    bows = template.curvature if template.curvature is not None else np.zeros(segments)
    parts = [
        _segment_points(poly[s], poly[s + 1], bows[s], counts[s], speed_profile, s > 0)
        for s in range(segments)
    ]
    return np.vstack(parts)


def gen_stroke(template: TemplateSpec, var: VariabilitySpec, instance_seed: int) -> Stroke:
    """One jittered instance; identical seeds give identical strokes."""
    rng = np.random.default_rng((var.seed, instance_seed))
    pts = sample_template(template, var.speed_profile)
    theta = float(rng.normal(0.0, var.rotation_jitter))
    scale = math.exp(float(rng.normal(0.0, var.scale_jitter)))
    if theta != 0.0 or scale != 1.0:
        center = pts.mean(axis=0)
        c, s = math.cos(theta), math.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        pts = (pts - center) @ rot.T * scale + center
    if var.point_noise > 0.0:
        pts = pts + rng.normal(0.0, var.point_noise, pts.shape)
    return Stroke(pts, sample_rate_hz=100.0)


def gen_corpus(
    templates: list[TemplateSpec],
    var: VariabilitySpec,
    per_class: int,
    split_ratio: float = 0.5,
) -> Corpus:
    """``per_class`` instances per template with a deterministic split.

    The first round(per_class * split_ratio) instances of every class go
    to the train split, the rest to test.
    """
    if per_class < 1:
        raise ValueError("per_class must be at least 1")
    if not 0.0 <= split_ratio <= 1.0:
        raise ValueError("split_ratio must be in [0, 1]")
    n_train = int(round(per_class * split_ratio))
    items = []
    for t_index, template in enumerate(templates):
        for i in range(per_class):
            stroke = gen_stroke(template, var, instance_seed=t_index * per_class + i)
            items.append(
                StrokeRecord(
                    stroke,
                    label=template.id,
                    split="train" if i < n_train else "test",
                )
            )
    return Corpus(items)


def _line(label: str, angle_deg: float) -> TemplateSpec:
    ang = math.radians(angle_deg)
    center = np.array([0.5, 0.5])
    half = 0.45 * np.array([math.cos(ang), math.sin(ang)])
    return TemplateSpec(label, np.array([center - half, center + half]))


def builtin_templates() -> list[TemplateSpec]:
    """14 classes: 8 oriented lines, 4 L-hooks, 2 arcs.

    The lines sit exactly on the 8 direction centers; the hooks and arcs
    exercise multi-segment turns and curvature trimming. The mean
    feature ignores segment order, so the hooks and arcs are chosen with
    pairwise-distinct direction multisets (right-then-up vs up-then-right
    would be indistinguishable).
    """
    compass = ["e", "ne", "n", "nw", "w", "sw", "s", "se"]
    lines = [_line(f"line-{name}", 45.0 * i) for i, name in enumerate(compass)]
    hooks = [
        TemplateSpec("hook-ru", np.array([[0.1, 0.1], [0.9, 0.1], [0.9, 0.9]])),
        TemplateSpec("hook-rd", np.array([[0.1, 0.9], [0.9, 0.9], [0.9, 0.1]])),
        TemplateSpec("hook-lu", np.array([[0.9, 0.1], [0.1, 0.1], [0.1, 0.9]])),
        TemplateSpec("hook-ld", np.array([[0.9, 0.9], [0.1, 0.9], [0.1, 0.1]])),
    ]
    arcs = [
        TemplateSpec(
            "arc-up", np.array([[0.1, 0.35], [0.9, 0.35]]), curvature=np.array([1.0])
        ),
        TemplateSpec(
            "arc-right", np.array([[0.35, 0.9], [0.35, 0.1]]), curvature=np.array([1.0])
        ),
    ]
    return lines + hooks + arcs


def load_templates(path) -> list[TemplateSpec]:
    """Templates from a JSON array of {id, polyline, curvature?} objects."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError("template file must hold a non-empty JSON array")
    templates = []
    for entry in data:
        templates.append(
            TemplateSpec(
                id=entry.get("id", ""),
                polyline=np.asarray(entry["polyline"], dtype=np.float64),
                curvature=(
                    np.asarray(entry["curvature"], dtype=np.float64)
                    if entry.get("curvature") is not None
                    else None
                ),
            )
        )
    return templates
