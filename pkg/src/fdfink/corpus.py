"""Stroke domain types and JSONL corpus (de)serialization.

A corpus file is UTF-8 with one JSON object per line:

    {"label": str|null, "writer_id": str|null, "split": "train"|"test"|null,
     "sample_rate_hz": number|null, "points": [[x, y], ...]}

Coordinates use the mathematical convention (y grows upward). Sources
that capture screen coordinates should be parsed with ``flip_y=True``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

SPLITS = ("train", "test")


class CorpusError(ValueError):
    """Malformed corpus text; ``line`` is 1-based when line-scoped."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(eq=False)
class Stroke:
    """Pen trajectory: an ordered (n, 2) float array of x/y samples.

    Points stay in pen-temporal order and the array is locked read-only
    after construction, so instances are safe to share across threads.
    """

    points: np.ndarray
    sample_rate_hz: float | None = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must form an (n, 2) array, got shape {pts.shape}")
        if pts.shape[0] < 2:
            raise ValueError(f"a stroke needs at least 2 points, got {pts.shape[0]}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("stroke coordinates must be finite")
        if self.sample_rate_hz is not None and not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be positive")
        pts.setflags(write=False)
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Stroke):
            return NotImplemented
        return self.sample_rate_hz == other.sample_rate_hz and np.array_equal(
            self.points, other.points
        )


@dataclass(eq=False)
class StrokeRecord:
    """One corpus entry: a stroke plus optional annotations."""

    stroke: Stroke
    label: str | None = None
    writer_id: str | None = None
    split: str | None = None

    def __post_init__(self):
        if self.label is not None and (not isinstance(self.label, str) or not self.label):
            raise ValueError("label must be a non-empty string or None")
        if self.split is not None and self.split not in SPLITS:
            raise ValueError(f"split must be one of {SPLITS} or None, got {self.split!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrokeRecord):
            return NotImplemented
        return (
            self.label == other.label
            and self.writer_id == other.writer_id
            and self.split == other.split
            and self.stroke == other.stroke
        )


@dataclass(eq=False)
class Corpus:
    items: list[StrokeRecord] = field(default_factory=list)

    @property
    def label_set(self) -> set[str]:
        return {rec.label for rec in self.items if rec.label is not None}

    def subset(self, split: str | None) -> "Corpus":
        """Records with the given split tag; ``"all"`` keeps everything."""
        if split in (None, "all"):
            return Corpus(list(self.items))
        return Corpus([rec for rec in self.items if rec.split == split])

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self.items == other.items


def _record_from_obj(obj, line: int, flip_y: bool) -> StrokeRecord:
    if not isinstance(obj, dict):
        raise CorpusError("record must be a JSON object", line)
    raw_points = obj.get("points")
    if not isinstance(raw_points, list) or not raw_points:
        raise CorpusError("record needs a non-empty 'points' array", line)
    for p in raw_points:
        if (
            not isinstance(p, (list, tuple))
            or len(p) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in p)
        ):
            raise CorpusError("each point must be a [x, y] pair of numbers", line)
    rate = obj.get("sample_rate_hz")
    if rate is not None and (isinstance(rate, bool) or not isinstance(rate, (int, float))):
        raise CorpusError("sample_rate_hz must be a number or null", line)
    pts = np.asarray(raw_points, dtype=np.float64)
    if flip_y:
        pts = pts * np.array([1.0, -1.0])
    try:
        stroke = Stroke(pts, None if rate is None else float(rate))
        return StrokeRecord(
            stroke,
            label=obj.get("label"),
            writer_id=obj.get("writer_id"),
            split=obj.get("split"),
        )
    except ValueError as exc:
        raise CorpusError(str(exc), line) from exc


def parse_corpus(text: str, *, flip_y: bool = False) -> Corpus:
    """Parse line-delimited records, preserving order.

    A final line that is not valid JSON *and* has no trailing newline is
    treated as a truncated partial write (e.g. a crash mid-append) and
    skipped with a warning; any other malformed line raises CorpusError
    with its line number.
    """
    items: list[StrokeRecord] = []
    lines = text.split("\n")
    truncated_tail = not text.endswith("\n")
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            if truncated_tail and lineno == len(lines):
                log.warning("skipping truncated final corpus line %d", lineno)
                continue
            raise CorpusError(f"invalid JSON: {exc.msg}", lineno) from exc
        items.append(_record_from_obj(obj, lineno, flip_y))
    return Corpus(items)


def record_to_json(rec: StrokeRecord) -> str:
    obj = {
        "label": rec.label,
        "writer_id": rec.writer_id,
        "split": rec.split,
        "sample_rate_hz": rec.stroke.sample_rate_hz,
        "points": rec.stroke.points.tolist(),
    }
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def write_corpus(corpus: Corpus) -> str:
    """Serialize to JSONL; ``parse_corpus`` round-trips it exactly."""
    return "".join(record_to_json(rec) + "\n" for rec in corpus)


def load_corpus(path, *, flip_y: bool = False) -> Corpus:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_corpus(fh.read(), flip_y=flip_y)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_corpus(corpus))
