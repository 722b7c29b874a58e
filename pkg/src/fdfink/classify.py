"""Template training, N-best ranking and accuracy evaluation.

A class template is the componentwise mean feature vector over its
training strokes. Recognition ranks templates by squared Euclidean
distance (order-equivalent to Euclidean, no square root taken) and a
test stroke counts as recognized at level alpha when its true label
appears among the first alpha candidates.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .corpus import Corpus, Stroke
from .features import FeatureError
from .pipeline import analyze_stroke, extract_fdf
from .smoothing import SmoothingConfig

MODEL_FORMAT_VERSION = 1


class TrainingError(ValueError):
    pass


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH makes model files byte-reproducible.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        now = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        now = datetime.now(tz=timezone.utc)
    return now.isoformat(timespec="seconds")


@dataclass
class Model:
    """Per-label template vectors plus the preprocessing they assume.

    The smoothing config travels with the model so classification can
    never silently diverge from training preprocessing. Instances are
    treated as immutable once trained.
    """

    templates: dict[str, np.ndarray]
    smoothing: SmoothingConfig
    trained_on: int
    excluded: dict[str, int] = field(default_factory=dict)
    created_at: str = ""

    def __post_init__(self):
        if not self.templates:
            raise ValueError("a model needs at least one template")
        for label, vec in self.templates.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (8,):
                raise ValueError(f"template {label!r} must have 8 components")
            if np.any(arr < 0) or np.any(arr > 1):
                raise ValueError(f"template {label!r} has components outside [0, 1]")
            self.templates[label] = arr
        if not self.created_at:
            self.created_at = _timestamp()

    @property
    def labels(self) -> list[str]:
        return sorted(self.templates)


def train(corpus: Corpus, config: SmoothingConfig | None = None) -> Model:
    """Average each label's feature vectors into its template.

    Strokes whose extraction fails are excluded and counted per label; a
    label with no usable stroke at all fails training.
    """
    cfg = config if config is not None else SmoothingConfig()
    if len(corpus) == 0:
        raise TrainingError("training corpus is empty")
    sums: dict[str, np.ndarray] = {}
    counts: dict[str, int] = {}
    excluded: dict[str, int] = {}
    for rec in corpus:
        if rec.label is None:
            raise TrainingError("training corpus contains an unlabeled stroke")
        sums.setdefault(rec.label, np.zeros(8))
        counts.setdefault(rec.label, 0)
        try:
            fdf = extract_fdf(rec.stroke, cfg)
        except FeatureError:
            excluded[rec.label] = excluded.get(rec.label, 0) + 1
            continue
        sums[rec.label] += fdf
        counts[rec.label] += 1
    dead = sorted(label for label, c in counts.items() if c == 0)
    if dead:
        raise TrainingError(
            "no usable training stroke for label(s): " + ", ".join(dead)
        )
    templates = {label: sums[label] / counts[label] for label in sorted(sums)}
    return Model(
        templates=templates,
        smoothing=cfg,
        trained_on=len(corpus),
        excluded=excluded,
    )


def rank(model: Model, fdf: np.ndarray) -> list[tuple[str, float]]:
    """Every label with its squared distance to the query, best first.

    Exact distance ties break lexicographically so output is stable.
    """
    query = np.asarray(fdf, dtype=np.float64)
    entries = [
        (label, float(np.sum((query - template) ** 2)))
        for label, template in model.templates.items()
    ]
    entries.sort(key=lambda e: (e[1], e[0]))
    return entries


def classify_nbest(model: Model, stroke: Stroke, alpha: int) -> list[str]:
    """The first min(alpha, number of labels) candidate labels."""
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    ranked = rank(model, extract_fdf(stroke, model.smoothing))
    return [label for label, _ in ranked[:alpha]]


_SPLIT_TITLES = {"train": "Train Data", "test": "Test Data", None: "All Data"}
_SPLIT_ORDER = ("train", "test", None)


@dataclass
class AccuracyTable:
    """Correct/total counts per split and per alpha, plus run statistics."""

    alphas: tuple[int, ...]
    correct: dict[str | None, dict[int, int]]
    totals: dict[str | None, int]
    unknown_labels: int = 0
    failed_extractions: int = 0
    mean_critical_ratio: float = 0.0
    mean_trimmed_ratio: float = 0.0

    def percentage(self, split: str | None, alpha: int) -> float:
        total = self.totals[split]
        return 100.0 * self.correct[split][alpha] / total if total else 0.0

    def splits(self) -> list[str | None]:
        ordered = [s for s in _SPLIT_ORDER if s in self.totals]
        ordered += sorted(s for s in self.totals if s not in _SPLIT_ORDER)
        return ordered

    def to_dict(self) -> dict:
        return {
            "format_version": 1,
            "alphas": list(self.alphas),
            "splits": {
                (split if split is not None else "all"): {
                    "title": _SPLIT_TITLES.get(split, str(split)),
                    "total": self.totals[split],
                    "alphas": {
                        str(a): {
                            "correct": self.correct[split][a],
                            "percent": self.percentage(split, a),
                        }
                        for a in self.alphas
                    },
                }
                for split in self.splits()
            },
            "stats": {
                "unknown_labels": self.unknown_labels,
                "failed_extractions": self.failed_extractions,
                "mean_critical_ratio": self.mean_critical_ratio,
                "mean_trimmed_ratio": self.mean_trimmed_ratio,
            },
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AccuracyTable":
        alphas = tuple(int(a) for a in obj["alphas"])
        correct: dict[str | None, dict[int, int]] = {}
        totals: dict[str | None, int] = {}
        for key, entry in obj["splits"].items():
            split = None if key == "all" else key
            totals[split] = int(entry["total"])
            correct[split] = {
                int(a): int(cell["correct"]) for a, cell in entry["alphas"].items()
            }
        stats = obj.get("stats", {})
        return cls(
            alphas=alphas,
            correct=correct,
            totals=totals,
            unknown_labels=int(stats.get("unknown_labels", 0)),
            failed_extractions=int(stats.get("failed_extractions", 0)),
            mean_critical_ratio=float(stats.get("mean_critical_ratio", 0.0)),
            mean_trimmed_ratio=float(stats.get("mean_trimmed_ratio", 0.0)),
        )


def evaluate(model: Model, corpus: Corpus, alphas: list[int]) -> AccuracyTable:
    """N-best accuracy per split at each requested alpha.

    Every record must carry a label. Labels missing from the model and
    strokes whose extraction fails count as incorrect at every alpha
    (both are tallied in the table's stats).
    """
    if not alphas or any(a < 1 for a in alphas):
        raise ValueError("alphas must be a non-empty list of positive integers")
    if len(corpus) == 0:
        raise ValueError("evaluation corpus is empty")
    alphas = list(alphas)
    correct: dict[str | None, dict[int, int]] = {}
    totals: dict[str | None, int] = {}
    unknown = 0
    failed = 0
    ratio_sum = 0.0
    trimmed_ratio_sum = 0.0
    model_labels = set(model.templates)
    for rec in corpus:
        if rec.label is None:
            raise ValueError("evaluation corpus contains an unlabeled stroke")
        split = rec.split
        totals[split] = totals.get(split, 0) + 1
        per_alpha = correct.setdefault(split, {a: 0 for a in alphas})
        position = None
        try:
            analysis = analyze_stroke(rec.stroke, model.smoothing)
        except FeatureError:
            failed += 1
        else:
            ratio_sum += analysis.critical.k / analysis.n_points
            trimmed_ratio_sum += analysis.trimmed.k / analysis.n_points
            if rec.label not in model_labels:
                unknown += 1
            else:
                ranked = rank(model, analysis.fdf)
                position = next(
                    i for i, (label, _) in enumerate(ranked) if label == rec.label
                )
        if position is not None:
            for a in alphas:
                if position < a:
                    per_alpha[a] += 1
    analyzed = len(corpus) - failed
    return AccuracyTable(
        alphas=tuple(alphas),
        correct=correct,
        totals=totals,
        unknown_labels=unknown,
        failed_extractions=failed,
        mean_critical_ratio=ratio_sum / analyzed if analyzed else 0.0,
        mean_trimmed_ratio=trimmed_ratio_sum / analyzed if analyzed else 0.0,
    )


def render_accuracy_table(table: AccuracyTable) -> str:
    """Plain-text accuracy table: splits as rows, alphas as columns.

    Cells read "P% (correct/total)", percentages with one decimal.
    """
    header = ["Data"] + [f"alpha={a}" for a in table.alphas]
    rows = []
    for split in table.splits():
        total = table.totals[split]
        cells = [_SPLIT_TITLES.get(split, str(split))]
        for a in table.alphas:
            cells.append(
                f"{table.percentage(split, a):.1f}% ({table.correct[split][a]}/{total})"
            )
        rows.append(cells)
    widths = [
        max(len(header[c]), *(len(r[c]) for r in rows)) for c in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for cells in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    return "\n".join(lines)


def model_to_json(model: Model) -> str:
    obj = {
        "format_version": MODEL_FORMAT_VERSION,
        "meta": {
            "created_at": model.created_at,
            "trained_on": model.trained_on,
            "excluded": {k: model.excluded[k] for k in sorted(model.excluded)},
            "smoothing": model.smoothing.to_dict(),
        },
        "templates": {label: model.templates[label].tolist() for label in model.labels},
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def model_from_json(text: str) -> Model:
    obj = json.loads(text)
    version = obj.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format_version: {version!r}")
    meta = obj["meta"]
    return Model(
        templates={label: np.asarray(vec) for label, vec in obj["templates"].items()},
        smoothing=SmoothingConfig.from_dict(meta["smoothing"]),
        trained_on=int(meta["trained_on"]),
        excluded={k: int(v) for k, v in meta.get("excluded", {}).items()},
        created_at=str(meta.get("created_at", "")),
    )


def save_model(model: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(model))


def load_model(path) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(fh.read())
