"""Backend benchmark: batch feature extraction, Python vs Cython kernels."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _backends
from .pipeline import extract_fdf
from .synth import VariabilitySpec, builtin_templates, gen_corpus


@dataclass
class BenchResult:
    backend: str
    strokes: int
    seconds: float

    @property
    def per_stroke_us(self) -> float:
        return 1e6 * self.seconds / self.strokes


def run_benchmark(strokes: int = 400, seed: int = 0, repeats: int = 3) -> list[BenchResult]:
    """Time extract_fdf over a jittered corpus on every available backend.

    Reports the best of ``repeats`` passes per backend; the corpus is
    identical across backends.
    """
    templates = builtin_templates()
    per_class = max(1, strokes // len(templates))
    var = VariabilitySpec(
        rotation_jitter=0.06, scale_jitter=0.05, point_noise=0.005, seed=seed
    )
    corpus = gen_corpus(templates, var, per_class=per_class, split_ratio=1.0)
    results = []
    for name in _backends.available_backends():
        with _backends.using_backend(name):
            for rec in corpus.items[:10]:  # warm up
                extract_fdf(rec.stroke)
            best = float("inf")
            for _ in range(repeats):
                start = time.perf_counter()
                for rec in corpus:
                    extract_fdf(rec.stroke)
                best = min(best, time.perf_counter() - start)
        results.append(BenchResult(name, len(corpus), best))
    return results


def render_benchmark(results: list[BenchResult]) -> str:
    baseline = next((r.seconds for r in results if r.backend == "python"), None)
    lines = [f"{'backend':<10}{'strokes':>9}{'total_s':>10}{'per_stroke_us':>15}{'speedup':>9}"]
    for r in results:
        speedup = f"{baseline / r.seconds:.2f}x" if baseline else "-"
        lines.append(
            f"{r.backend:<10}{r.strokes:>9}{r.seconds:>10.4f}{r.per_stroke_us:>15.1f}{speedup:>9}"
        )
    return "\n".join(lines)
