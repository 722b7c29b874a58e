"""Command line for the stroke recognizer.

Subcommands: gen (synthetic corpus), train, eval, classify, inspect,
serve (HTTP + capture pad), bench (backend comparison). Fixed seeds and
inputs produce byte-identical output files; set SOURCE_DATE_EPOCH to pin
the model timestamp as well.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, _backends
from .bench import render_benchmark, run_benchmark
from .classify import (
    TrainingError,
    evaluate,
    load_model,
    rank,
    render_accuracy_table,
    save_model,
    train,
)
from .corpus import CorpusError, load_corpus, parse_corpus, save_corpus
from .features import FeatureError
from .pipeline import analyze_stroke
from .server import ServeConfig, create_server
from .smoothing import SmoothingConfig
from .synth import VariabilitySpec, builtin_templates, gen_corpus, load_templates

_SMOOTH_MODES = {"zero": "zero_detail", "soft": "soft_threshold"}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _alpha_list(text: str) -> list[int]:
    try:
        alphas = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from exc
    if not alphas or any(a < 1 for a in alphas):
        raise argparse.ArgumentTypeError("alphas must be positive integers")
    return alphas


def _add_smoothing_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--smooth-levels", type=int, default=2, metavar="N",
                        help="wavelet decomposition depth (default: 2)")
    parser.add_argument("--smooth-mode", choices=sorted(_SMOOTH_MODES), default="zero",
                        help="detail handling: zero them or soft-threshold (default: zero)")
    parser.add_argument("--smooth-threshold", type=_nonneg_float, default=0.0, metavar="T",
                        help="shrinkage amount for soft mode (default: 0)")


def _smoothing_from_args(args) -> SmoothingConfig:
    return SmoothingConfig(
        levels=args.smooth_levels,
        mode=_SMOOTH_MODES[args.smooth_mode],
        threshold=args.smooth_threshold,
    )


def _add_flip_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--flip-y", action="store_true",
                        help="negate y at parse time (screen-coordinate sources)")


def cmd_gen(args) -> int:
    if args.classes == "builtin":
        templates = builtin_templates()
    else:
        templates = load_templates(args.classes)
    var = VariabilitySpec(
        rotation_jitter=args.rotation_jitter,
        scale_jitter=args.scale_jitter,
        point_noise=args.point_noise,
        speed_profile=args.speed_profile,
        seed=args.seed,
    )
    corpus = gen_corpus(templates, var, per_class=args.per_class, split_ratio=args.split_ratio)
    save_corpus(corpus, args.output)
    print(f"wrote {len(corpus)} strokes ({len(corpus.label_set)} classes) to {args.output}")
    return 0


def cmd_train(args) -> int:
    corpus = load_corpus(args.corpus, flip_y=args.flip_y).subset(args.split)
    if len(corpus) == 0:
        raise TrainingError(
            f"no records selected from {args.corpus} with --split {args.split}"
        )
    model = train(corpus, _smoothing_from_args(args))
    save_model(model, args.output)
    per_class = {label: 0 for label in model.labels}
    for rec in corpus:
        per_class[rec.label] += 1
    excluded_total = sum(model.excluded.values())
    print(f"trained {len(model.labels)} classes from {len(corpus)} strokes "
          f"({excluded_total} excluded) -> {args.output}")
    for label in model.labels:
        line = f"  {label}: {per_class[label]}"
        if model.excluded.get(label):
            line += f" ({model.excluded[label]} excluded)"
        print(line)
    return 0


def cmd_eval(args) -> int:
    model = load_model(args.model)
    corpus = load_corpus(args.corpus, flip_y=args.flip_y)
    table = evaluate(model, corpus, args.alphas)
    print(render_accuracy_table(table))
    print()
    print(f"critical points per stroke: mean k/n = {table.mean_critical_ratio:.3f} "
          f"({table.mean_trimmed_ratio:.3f} after trimming)")
    if table.unknown_labels:
        print(f"warning: {table.unknown_labels} strokes had labels missing from the model "
              f"(counted incorrect)", file=sys.stderr)
    if table.failed_extractions:
        print(f"warning: {table.failed_extractions} strokes failed feature extraction "
              f"(counted incorrect)", file=sys.stderr)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(table.to_dict(), fh, indent=2)
            fh.write("\n")
    return 0


def _read_single_record(path: str, flip_y: bool):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    corpus = parse_corpus(text, flip_y=flip_y)
    if len(corpus) != 1:
        raise CorpusError(f"expected exactly one stroke record, found {len(corpus)}")
    return corpus.items[0]


def cmd_classify(args) -> int:
    model = load_model(args.model)
    record = _read_single_record(args.stroke, args.flip_y)
    analysis = analyze_stroke(record.stroke, model.smoothing)
    for label, distance in rank(model, analysis.fdf)[: args.alpha]:
        print(f"{label} {distance:.6f}")
    return 0


def cmd_inspect(args) -> int:
    corpus = load_corpus(args.corpus, flip_y=args.flip_y)
    config = _smoothing_from_args(args)
    for rec in corpus:
        analysis = analyze_stroke(rec.stroke, config)
        raw = rec.stroke.points
        obj = {
            "label": rec.label,
            "n_points": analysis.n_points,
            "critical_indices": analysis.critical.indices.tolist(),
            "trimmed_indices": analysis.trimmed.indices.tolist(),
            "critical_points": raw[analysis.trimmed.indices].tolist(),
            "rows": [
                {
                    "primary": {"direction": row.primary[0], "membership": row.primary[1]},
                    "secondary": {"direction": row.secondary[0], "membership": row.secondary[1]},
                }
                for row in analysis.matrix.rows()
            ],
            "skipped_rows": analysis.matrix.skipped,
            "fdf": analysis.fdf.tolist(),
        }
        print(json.dumps(obj))
    return 0


def cmd_serve(args) -> int:
    config = ServeConfig(
        model_path=args.model,
        corpus_out=args.corpus_out,
        bind=args.bind,
        port=args.port,
        static_dir=args.static_dir,
    )
    model = load_model(config.model_path)
    server = create_server(config, model)
    print(f"serving {len(model.labels)} classes on http://{config.bind}:{server.bound_port}",
          flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def cmd_bench(args) -> int:
    results = run_benchmark(strokes=args.strokes, seed=args.seed, repeats=args.repeats)
    print(render_benchmark(results))
    return 0


def _env(name: str, default):
    return os.environ.get(f"FDF_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdfink",
        description="Fuzzy directional feature recognizer for on-line handwritten strokes.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({_backends.active_backend()} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic labeled corpus")
    p.add_argument("-o", "--output", required=True, help="corpus JSONL path")
    p.add_argument("--classes", default="builtin",
                   help="'builtin' or a template JSON file (default: builtin)")
    p.add_argument("--per-class", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split-ratio", type=float, default=0.5,
                   help="fraction of each class tagged train (default: 0.5)")
    p.add_argument("--rotation-jitter", type=_nonneg_float, default=0.0, metavar="RAD")
    p.add_argument("--scale-jitter", type=_nonneg_float, default=0.0, metavar="REL")
    p.add_argument("--point-noise", type=_nonneg_float, default=0.0, metavar="STD")
    p.add_argument("--speed-profile", type=float, default=0.5,
                   help="sampling nonuniformity in [0, 1) (default: 0.5)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="train per-class templates")
    p.add_argument("corpus", help="corpus JSONL path")
    p.add_argument("-o", "--output", required=True, help="model JSON path")
    p.add_argument("--split", choices=["train", "test", "all"], default="train")
    _add_smoothing_flags(p)
    _add_flip_flag(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="accuracy table for a labeled corpus")
    p.add_argument("corpus", help="corpus JSONL path")
    p.add_argument("--model", required=True)
    p.add_argument("--alphas", type=_alpha_list, default=[1, 2, 5],
                   help="comma-separated N-best levels (default: 1,2,5)")
    p.add_argument("--report", help="also write the table as JSON")
    _add_flip_flag(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="N-best labels for one stroke")
    p.add_argument("stroke", help="single-record JSONL file, or - for stdin")
    p.add_argument("--model", required=True)
    p.add_argument("--alpha", type=_positive_int, default=5)
    _add_flip_flag(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("inspect", help="per-stroke turning points and features as JSON")
    p.add_argument("corpus", help="corpus JSONL path")
    _add_smoothing_flags(p)
    _add_flip_flag(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("serve", help="HTTP recognizer + capture pad")
    p.add_argument("--model", default=_env("MODEL", None), required=_env("MODEL", None) is None)
    p.add_argument("--corpus-out", default=_env("CORPUS_OUT", None),
                   help="append labeled submissions to this JSONL file")
    p.add_argument("--bind", default=_env("BIND", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(_env("PORT", "8765")),
                   help="0 picks a free port")
    p.add_argument("--static-dir", default=_env("STATIC_DIR", None),
                   help="directory with the capture pad build")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bench", help="compare kernel backends")
    p.add_argument("--strokes", type=_positive_int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=_positive_int, default=3)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, FeatureError, TrainingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
