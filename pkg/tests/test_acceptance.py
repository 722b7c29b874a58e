"""Release gate: every exit criterion at its pinned tolerance.

Each test exercises one criterion end to end, enforces its runtime
budget, and prints a single summary line (run with ``pytest -s`` to see
them). Thresholds here are frozen; loosening them is a release decision,
not a test fix.
"""

import math
import time
from itertools import product

import numpy as np

from fdfink import _backends
from fdfink.classify import evaluate, render_accuracy_table, train
from fdfink.cli import main
from fdfink.corpus import Stroke
from fdfink.features import deg2fuzzydir, fuzzy_membership
from fdfink.pipeline import extract_fdf
from fdfink.smoothing import haar_forward, haar_inverse
from fdfink.synth import VariabilitySpec, builtin_templates, gen_corpus
from fdfink.turning import critical_indices

from conftest import brute_force_turnings

GOLDEN = "tests/data/eval_table.golden.txt"


class _Budget:
    """Wall-clock guard for one criterion."""

    def __init__(self, name: str, limit_s: float):
        self.name = name
        self.limit_s = limit_s

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        if exc_type is None:
            assert self.elapsed < self.limit_s, (
                f"{self.name} took {self.elapsed:.2f}s, budget {self.limit_s}s"
            )
            print(f"ACCEPTANCE {self.name}: PASS ({self.elapsed:.2f}s)")
        return False


def test_membership_exactness():
    with _Budget("membership-exactness", 1.0):
        assert abs(fuzzy_membership(0.0, math.pi / 8) - 0.5) < 1e-9
        pair = deg2fuzzydir(0.0)
        assert pair.primary[0] == 1 and abs(pair.primary[1] - 1.0) < 1e-9
        assert pair.secondary[0] == 2 and abs(pair.secondary[1]) < 1e-9
        # seam: direction 5 is centered at pi and must catch angles near -pi
        assert abs(fuzzy_membership(math.pi, -7 * math.pi / 8) - 0.5) < 1e-9
        seam = deg2fuzzydir(math.pi)
        assert seam.primary == (5, 1.0) and seam.secondary[0] == 6
        assert deg2fuzzydir(-math.pi) == seam


def test_row_sum_invariant_100k_angles():
    with _Budget("row-sum-invariant", 5.0):
        rng = np.random.default_rng(2024)
        angles = rng.uniform(-math.pi, math.pi, 100_000)
        angles[angles == -math.pi] = math.pi
        d1, m1, d2, m2 = _backends.kernels().fuzzy_pairs(angles)
        total = m1 + m2
        assert np.max(np.abs(total - 1.0)) < 1e-9
        gaps = (d1 - d2) % 8
        assert np.all((gaps == 1) | (gaps == 7))
        assert np.all((d1 >= 1) & (d1 <= 8) & (d2 >= 1) & (d2 <= 8))
        assert np.all(m1 >= m2) and np.all(m2 >= 0.0)


def test_critical_point_oracle_exhaustive():
    with _Budget("critical-point-oracle", 10.0):
        checked = 0
        for n in range(2, 9):
            for seq in product((0.0, 1.0, 2.0), repeat=n):
                expected = brute_force_turnings(seq)
                got = critical_indices(np.asarray(seq)).tolist()
                assert got == expected, f"mismatch on {seq}"
                checked += 1
        assert checked == sum(3**n for n in range(2, 9))


def _invariance_strokes():
    var = VariabilitySpec(
        rotation_jitter=0.1, scale_jitter=0.08, point_noise=0.006, seed=99
    )
    corpus = gen_corpus(builtin_templates(), var, per_class=4, split_ratio=1.0)
    return [rec.stroke for rec in corpus]  # 56 strokes


def test_geometric_invariances():
    with _Budget("geometric-invariances", 10.0):
        strokes = _invariance_strokes()
        assert len(strokes) >= 50
        for stroke in strokes:
            base = extract_fdf(stroke)

            # translation: integer device-style coordinates shifted by
            # integer offsets are bit-exact thanks to first-point anchoring
            quantized = Stroke(np.round(stroke.points * 1000.0))
            shifted = Stroke(quantized.points + np.array([137.0, -4096.0]))
            assert np.array_equal(extract_fdf(quantized), extract_fdf(shifted))

            for s in (0.1, 3.0, 100.0):
                scaled = extract_fdf(Stroke(stroke.points * s))
                assert np.max(np.abs(scaled - base)) < 1e-9, f"scale {s}"

            pts = stroke.points
            rotated = Stroke(np.column_stack([-pts[:, 1], pts[:, 0]]))
            assert np.max(np.abs(extract_fdf(rotated) - np.roll(base, 2))) < 1e-9


def test_haar_round_trip_1000_sequences():
    with _Budget("haar-round-trip", 5.0):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            n = int(rng.integers(2, 258))
            seq = rng.normal(0.0, 50.0, n)
            levels = int(rng.integers(0, 9))
            out = haar_inverse(haar_forward(seq, levels))
            assert out.shape == seq.shape
            assert np.max(np.abs(out - seq)) < 1e-9
        for n in (2, 5, 16, 250):
            pyr = haar_forward(np.full(n, 3.25), 8)
            assert all(np.all(band == 0.0) for band in pyr.details)


def _moderate_setup():
    var = VariabilitySpec(
        rotation_jitter=0.06, scale_jitter=0.05, point_noise=0.005, seed=42
    )
    corpus = gen_corpus(builtin_templates(), var, per_class=40, split_ratio=0.5)
    model = train(corpus.subset("train"))
    return model, corpus


def test_alpha_monotonicity():
    with _Budget("alpha-monotonicity", 35.0):
        model, corpus = _moderate_setup()
        table = evaluate(model, corpus, [1, 2, 5])
        for split in table.splits():
            assert (
                table.percentage(split, 1)
                <= table.percentage(split, 2)
                <= table.percentage(split, 5)
            )


def test_synthetic_end_to_end():
    with _Budget("synthetic-end-to-end", 30.0):
        # zero variability: self-classification is perfect
        zero = gen_corpus(
            builtin_templates(),
            VariabilitySpec(speed_profile=0.0, seed=5),
            per_class=4,
            split_ratio=0.5,
        )
        zero_model = train(zero.subset("train"))
        zero_table = evaluate(zero_model, zero, [1])
        assert zero_table.percentage("train", 1) == 100.0
        assert zero_table.percentage("test", 1) == 100.0

        # moderate writer-style variability: 14 classes x 20 test instances
        model, corpus = _moderate_setup()
        table = evaluate(model, corpus, [1, 2, 5])
        assert table.totals["test"] == 14 * 20
        alpha1 = table.percentage("test", 1)
        alpha5 = table.percentage("test", 5)
        assert alpha1 >= 90.0, f"alpha=1 test accuracy {alpha1:.1f}% below 90%"
        assert alpha5 >= 99.0, f"alpha=5 test accuracy {alpha5:.1f}% below 99%"
        print(f"  (moderate corpus: alpha1={alpha1:.1f}%, alpha5={alpha5:.1f}%)")


def test_eval_table_golden(tmp_path, capsys, monkeypatch):
    with _Budget("eval-table-golden", 30.0):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        corpus = tmp_path / "corpus.jsonl"
        model = tmp_path / "model.json"
        assert main(["gen", "-o", str(corpus), "--per-class", "10", "--seed", "31",
                     "--rotation-jitter", "0.06", "--scale-jitter", "0.05",
                     "--point-noise", "0.005"]) == 0
        assert main(["train", str(corpus), "-o", str(model)]) == 0
        capsys.readouterr()
        assert main(["eval", str(corpus), "--model", str(model)]) == 0
        out = capsys.readouterr().out
        with open(GOLDEN, "r", encoding="utf-8") as fh:
            assert out == fh.read()


def test_reference_accuracy_layout():
    # Layout contract: splits as rows, alphas as columns, "P% (c/t)" cells.
    from fdfink.classify import AccuracyTable

    with _Budget("accuracy-table-layout", 1.0):
        table = AccuracyTable(
            alphas=(1, 2, 5),
            correct={"train": {1: 139, 2: 193, 5: 205}, "test": {1: 82, 2: 120, 5: 172}},
            totals={"train": 220, "test": 220},
        )
        lines = render_accuracy_table(table).splitlines()
        assert lines[0].split() == ["Data", "alpha=1", "alpha=2", "alpha=5"]
        assert lines[1].startswith("Train Data")
        assert lines[2].startswith("Test Data")
        import re

        for line in lines[1:]:
            assert len(re.findall(r"\d+\.\d% \(\d+/\d+\)", line)) == 3


def test_pipeline_determinism_byte_identical(tmp_path, monkeypatch):
    with _Budget("pipeline-determinism", 30.0):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        outputs = []
        for tag in ("first", "second"):
            base = tmp_path / tag
            base.mkdir()
            corpus = base / "corpus.jsonl"
            model = base / "model.json"
            report = base / "report.json"
            assert main(["gen", "-o", str(corpus), "--per-class", "8", "--seed", "13",
                         "--rotation-jitter", "0.06", "--scale-jitter", "0.05",
                         "--point-noise", "0.005"]) == 0
            assert main(["train", str(corpus), "-o", str(model)]) == 0
            assert main(["eval", str(corpus), "--model", str(model),
                         "--report", str(report)]) == 0
            outputs.append(
                (corpus.read_bytes(), model.read_bytes(), report.read_bytes())
            )
        assert outputs[0][0] == outputs[1][0], "corpus files differ"
        assert outputs[0][1] == outputs[1][1], "model files differ"
        assert outputs[0][2] == outputs[1][2], "report files differ"
