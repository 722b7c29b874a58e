"""HTTP service exposing the recognizer to the capture pad.

Endpoints (JSON in, JSON out, all under /api):

    POST /api/classify  {"points": [[x, y], ...], "alpha": int}
        -> {"nbest": [{"label", "distance"}...], "fdf": [8 numbers],
            "critical_indices": [ints]}
    GET  /api/model     -> {"labels": [...], "meta": {...}}
    POST /api/strokes   {"label": str, "points": [...], "writer_id"?: str}
        -> {"stored": true}

The loaded model is immutable, so classify requests run concurrently;
corpus appends are serialized through one lock and flushed to disk
before the 200 goes out, keeping the file crash-safe at line
granularity. Anything outside /api serves static files from the
configured directory (the capture pad build).
"""

from __future__ import annotations

import json
import logging
import mimetypes
import os
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from .classify import Model, rank
from .corpus import Stroke, StrokeRecord, record_to_json
from .features import FeatureError
from .pipeline import analyze_stroke

log = logging.getLogger(__name__)

DEFAULT_ALPHA = 5


@dataclass
class ServeConfig:
    model_path: str
    corpus_out: str | None = None
    bind: str = "127.0.0.1"
    port: int = 8765
    static_dir: str | None = None

    def __post_init__(self):
        if not 0 <= self.port <= 65535:
            raise ValueError("port must be in [0, 65535]")


class _BadRequest(ValueError):
    pass


def _parse_points(obj) -> Stroke:
    points = obj.get("points")
    if not isinstance(points, list) or len(points) < 2:
        raise _BadRequest("'points' must be an array of at least 2 [x, y] pairs")
    try:
        return Stroke(np.asarray(points, dtype=np.float64))
    except (ValueError, TypeError) as exc:
        raise _BadRequest(f"bad points: {exc}") from exc


class RecognizerServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, config: ServeConfig, model: Model):
        super().__init__((config.bind, config.port), _Handler)
        self.config = config
        self.model = model
        self.append_lock = threading.Lock()

    @property
    def bound_port(self) -> int:
        return self.server_address[1]

    def append_stroke(self, record: StrokeRecord) -> None:
        if self.config.corpus_out is None:
            raise _BadRequest("stroke capture is disabled: no corpus output file configured")
        line = record_to_json(record) + "\n"
        with self.append_lock:
            with open(self.config.corpus_out, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())


class _Handler(BaseHTTPRequestHandler):
    server: RecognizerServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send_json(self, status: int, obj) -> None:
        body = json.dumps(obj).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self):
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError as exc:
            raise _BadRequest("bad Content-Length") from exc
        if length <= 0:
            raise _BadRequest("request body required")
        raw = self.rfile.read(length)
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _BadRequest(f"invalid JSON body: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise _BadRequest("request body must be a JSON object")
        return obj

    def do_GET(self):
        if self.path.split("?", 1)[0] == "/api/model":
            model = self.server.model
            self._send_json(
                200,
                {
                    "labels": model.labels,
                    "meta": {
                        "created_at": model.created_at,
                        "trained_on": model.trained_on,
                        "smoothing": model.smoothing.to_dict(),
                    },
                },
            )
            return
        if self.path.startswith("/api/"):
            self._send_json(404, {"error": "unknown endpoint"})
            return
        self._serve_static()

    def do_POST(self):
        route = self.path.split("?", 1)[0]
        try:
            if route == "/api/classify":
                self._classify()
            elif route == "/api/strokes":
                self._store_stroke()
            else:
                self._send_json(404, {"error": "unknown endpoint"})
        except _BadRequest as exc:
            self._send_json(400, {"error": str(exc)})
        except FeatureError as exc:
            self._send_json(400, {"error": f"feature extraction failed: {exc}"})

    def _classify(self):
        obj = self._read_json()
        stroke = _parse_points(obj)
        alpha = obj.get("alpha", DEFAULT_ALPHA)
        if isinstance(alpha, bool) or not isinstance(alpha, int) or alpha < 1:
            raise _BadRequest("'alpha' must be a positive integer")
        model = self.server.model
        analysis = analyze_stroke(stroke, model.smoothing)
        ranked = rank(model, analysis.fdf)
        self._send_json(
            200,
            {
                "nbest": [
                    {"label": label, "distance": dist} for label, dist in ranked[:alpha]
                ],
                "fdf": analysis.fdf.tolist(),
                "critical_indices": analysis.trimmed.indices.tolist(),
            },
        )

    def _store_stroke(self):
        obj = self._read_json()
        label = obj.get("label")
        if not isinstance(label, str) or not label:
            raise _BadRequest("'label' must be a non-empty string")
        stroke = _parse_points(obj)
        writer = obj.get("writer_id")
        if writer is not None and not isinstance(writer, str):
            raise _BadRequest("'writer_id' must be a string when present")
        self.server.append_stroke(StrokeRecord(stroke, label=label, writer_id=writer))
        self._send_json(200, {"stored": True})

    def _serve_static(self):
        root = self.server.config.static_dir
        if root is None:
            self._send_json(404, {"error": "no static assets configured (API-only mode)"})
            return
        rel = self.path.split("?", 1)[0].lstrip("/")
        if not rel or rel.endswith("/"):
            rel += "index.html"
        root_abs = os.path.realpath(root)
        target = os.path.realpath(os.path.join(root_abs, rel))
        if not target.startswith(root_abs + os.sep) and target != root_abs:
            self._send_json(404, {"error": "not found"})
            return
        if os.path.isdir(target):
            target = os.path.join(target, "index.html")
        if not os.path.isfile(target):
            self._send_json(404, {"error": "not found"})
            return
        ctype = mimetypes.guess_type(target)[0] or "application/octet-stream"
        with open(target, "rb") as fh:
            body = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def create_server(config: ServeConfig, model: Model) -> RecognizerServer:
    return RecognizerServer(config, model)
