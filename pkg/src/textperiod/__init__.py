"""Periodicity detection and harmonic-regression analysis for surprisal sequences.

The pipeline: per-token surprisal values go through a permutation-thresholded
periodogram scan (candidate periods, "hints"), then through circular-ACF hill
validation (refined integer periods). Corpus-level helpers partition documents
by detection outcome and fit harmonic regressions against the detected scales.
"""

from .acf_filter import ValidatedPeriod, acf_filtering, fit_split, search_window
from .analytics import (
    CorpusReport,
    DetectionResult,
    compare_groups,
    detect_corpus,
    detect_document,
    partition_corpus,
    period_unit_comparison,
)
from .corpus import (
    CorpusError,
    CorpusPartition,
    SurprisalDocument,
    read_corpus,
    write_corpus,
)
from .harmonic import (
    HRDesign,
    HRFit,
    build_design_matrix,
    evaluate_mse_by_partition,
    fit_design,
    fit_ols,
)
from .hints import HintConfig, PeriodHint, get_period_hints, permutation_threshold
from .spectrum import AcfCurve, Periodogram, acf, periodogram
from .synth import SynthSpec, generate_corpus

__version__ = "0.1.0"

__all__ = [
    "AcfCurve",
    "CorpusError",
    "CorpusPartition",
    "CorpusReport",
    "DetectionResult",
    "HRDesign",
    "HRFit",
    "HintConfig",
    "PeriodHint",
    "Periodogram",
    "SurprisalDocument",
    "SynthSpec",
    "ValidatedPeriod",
    "acf",
    "acf_filtering",
    "build_design_matrix",
    "compare_groups",
    "detect_corpus",
    "detect_document",
    "evaluate_mse_by_partition",
    "fit_design",
    "fit_ols",
    "fit_split",
    "generate_corpus",
    "get_period_hints",
    "partition_corpus",
    "period_unit_comparison",
    "periodogram",
    "permutation_threshold",
    "read_corpus",
    "search_window",
    "write_corpus",
]
