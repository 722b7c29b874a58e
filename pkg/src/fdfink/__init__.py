"""Fuzzy directional features for on-line handwritten strokes."""

from ._backends import active_backend, available_backends
from .classify import (
    AccuracyTable,
    Model,
    TrainingError,
    classify_nbest,
    evaluate,
    load_model,
    rank,
    render_accuracy_table,
    save_model,
    train,
)
from .corpus import (
    Corpus,
    CorpusError,
    Stroke,
    StrokeRecord,
    load_corpus,
    parse_corpus,
    save_corpus,
    write_corpus,
)
from .features import (
    FdfMatrix,
    FeatureError,
    FuzzyDirPair,
    angle_between,
    deg2fuzzydir,
    fdf_matrix,
    fuzzy_membership,
    mean_fdf,
)
from .pipeline import StrokeAnalysis, analyze_stroke, extract_fdf
from .smoothing import (
    HaarPyramid,
    SmoothingConfig,
    haar_forward,
    haar_inverse,
    smooth_sequence,
    smooth_stroke,
)
from .synth import (
    TemplateSpec,
    VariabilitySpec,
    builtin_templates,
    gen_corpus,
    gen_stroke,
    load_templates,
)
from .turning import (
    CriticalPoints,
    critical_indices,
    extract_critical_points,
    sign_diff,
    trim_spurious,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyTable",
    "Corpus",
    "CorpusError",
    "CriticalPoints",
    "FdfMatrix",
    "FeatureError",
    "FuzzyDirPair",
    "HaarPyramid",
    "Model",
    "SmoothingConfig",
    "Stroke",
    "StrokeAnalysis",
    "StrokeRecord",
    "TemplateSpec",
    "TrainingError",
    "VariabilitySpec",
    "active_backend",
    "analyze_stroke",
    "angle_between",
    "available_backends",
    "builtin_templates",
    "classify_nbest",
    "critical_indices",
    "deg2fuzzydir",
    "evaluate",
    "extract_critical_points",
    "extract_fdf",
    "fdf_matrix",
    "fuzzy_membership",
    "gen_corpus",
    "gen_stroke",
    "haar_forward",
    "haar_inverse",
    "load_corpus",
    "load_model",
    "load_templates",
    "mean_fdf",
    "parse_corpus",
    "rank",
    "render_accuracy_table",
    "save_corpus",
    "save_model",
    "sign_diff",
    "smooth_sequence",
    "smooth_stroke",
    "train",
    "trim_spurious",
    "write_corpus",
]
