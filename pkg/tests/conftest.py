import numpy as np
import pytest

from fdfink import _backends
from fdfink.corpus import Stroke
from fdfink.synth import VariabilitySpec, builtin_templates, gen_corpus


@pytest.fixture(params=_backends.available_backends())
def backend(request):
    """Run the test once per installed kernel backend."""
    with _backends.using_backend(request.param):
        yield request.param


@pytest.fixture(scope="session")
def jittered_corpus():
    """Small moderately-jittered corpus over the builtin classes."""
    var = VariabilitySpec(
        rotation_jitter=0.06, scale_jitter=0.05, point_noise=0.005, seed=11
    )
    return gen_corpus(builtin_templates(), var, per_class=6, split_ratio=0.5)


def random_strokes(count: int, seed: int = 0) -> list[Stroke]:
    """Noisy random polyline strokes for property tests."""
    rng = np.random.default_rng(seed)
    strokes = []
    for _ in range(count):
        corners = rng.integers(2, 5)
        waypoints = rng.uniform(0.0, 1.0, (corners, 2))
        parts = []
        for a, b in zip(waypoints[:-1], waypoints[1:]):
            t = np.linspace(0.0, 1.0, rng.integers(15, 40))[:, None]
            parts.append(a * (1 - t) + b * t)
        pts = np.vstack(parts)
        pts = pts + rng.normal(0.0, 0.004, pts.shape)
        strokes.append(Stroke(pts))
    return strokes


def brute_force_turnings(seq) -> list[int]:
    """Independent oracle: local extremum plateaus of a sequence.

    Splits the sequence into maximal runs of equal values; an interior
    run is a turning plateau when both neighbors lie on the same side,
    and it is marked at its first index.
    """
    values = list(seq)
    runs = []
    start = 0
    for i in range(1, len(values)):
        if values[i] != values[start]:
            runs.append((start, i - 1))
            start = i
    runs.append((start, len(values) - 1))
    marks = []
    for r in range(1, len(runs) - 1):
        first, _last = runs[r]
        left = values[runs[r - 1][1]]
        right = values[runs[r + 1][0]]
        here = values[first]
        if (left < here and right < here) or (left > here and right > here):
            marks.append(first)
    return marks
