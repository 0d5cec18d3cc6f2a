"""Corpus-level detection runs, partitioning, and summary reports.

A corpus Sigma splits into nested subsets by detection outcome: P1 holds
documents with at least one hint, P2 those with at least one validated
period. Reports pool hint/period lengths over all hints/periods of the
respective subset (not per-document maxima) and bin period lengths into
width-10 histograms for plotting.
"""
from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from .acf_filter import ValidatedPeriod, acf_filtering
from .corpus import CorpusPartition, SurprisalDocument
from .hints import HintConfig, PeriodHint, get_period_hints

DEFAULT_MIN_LENGTH = 32
LONG_PERIOD_THRESHOLD = 50  # band highlighted in group comparisons
HISTOGRAM_BIN_WIDTH = 10


@dataclass
class DetectionResult:
    """Detection outcome for one document plus the config that produced it."""

    doc_id: str
    hints: list[PeriodHint]
    periods: list[ValidatedPeriod]
    config: dict
    classification: str
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        expected = classify(self.hints, self.periods)
        if self.classification != expected:
            raise ValueError(
                f"document {self.doc_id!r}: classification {self.classification!r} "
                f"inconsistent with outcomes (expected {expected!r})"
            )


def classify(hints, periods) -> str:
    if periods:
        if not hints:
            raise ValueError("validated periods without hints")
        return "periodic"
    return "hint_only" if hints else "none"


def config_snapshot(cfg: HintConfig, min_length: int, delta_theta: float) -> dict:
    return {
        "seed": cfg.seed,
        "confidence": cfg.confidence,
        "permutations": cfg.permutations,
        "backend": cfg.backend,
        "min_length": min_length,
        "delta_theta": delta_theta,
    }


def detect_document(
    doc: SurprisalDocument,
    cfg: HintConfig,
    *,
    min_length: int = DEFAULT_MIN_LENGTH,
    delta_theta: float = 0.01,
) -> DetectionResult:
    """Run hint extraction then ACF filtering on one document.

    Documents shorter than min_length are classified "none" with a
    diagnostic instead of being rejected.
    """
    snapshot = config_snapshot(cfg, min_length, delta_theta)
    diagnostics: list[str] = []
    if doc.n < min_length:
        diagnostics.append(f"length {doc.n} below min_length {min_length}; detection skipped")
        hints: list[PeriodHint] = []
        periods: list[ValidatedPeriod] = []
    else:
        hints = get_period_hints(doc.values, cfg)
        periods = acf_filtering(
            doc.values, hints, delta_theta=delta_theta, diagnostics=diagnostics
        )
    return DetectionResult(
        doc_id=doc.doc_id,
        hints=hints,
        periods=periods,
        config=snapshot,
        classification=classify(hints, periods),
        diagnostics=diagnostics,
    )


def _detect_task(args):
    doc, cfg, min_length, delta_theta = args
    try:
        return detect_document(doc, cfg, min_length=min_length, delta_theta=delta_theta), None
    except Exception as exc:  # collected, never aborts the corpus run
        return None, (doc.doc_id, f"{type(exc).__name__}: {exc}")


def detect_corpus(
    docs,
    cfg: HintConfig,
    *,
    min_length: int = DEFAULT_MIN_LENGTH,
    delta_theta: float = 0.01,
    jobs: int = 1,
):
    """Detect every document; returns (results, errors) in input order.

    Per-document failures are collected as (doc_id, message) pairs rather
    than raised. Results are independent of the worker count.
    """
    tasks = [(doc, cfg, min_length, delta_theta) for doc in docs]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_detect_task, tasks, chunksize=8))
    else:
        outcomes = [_detect_task(t) for t in tasks]
    results = [r for r, _ in outcomes if r is not None]
    errors = [e for _, e in outcomes if e is not None]
    return results, errors


# ---------------------------------------------------------------------------
# Reports


@dataclass
class CorpusReport:
    """Counts, ratios, pooled length statistics, and a period histogram."""

    sigma_count: int
    p1_count: int
    p2_count: int
    p1_over_sigma: float | None
    p2_over_p1: float | None
    p2_over_sigma: float | None
    hint_length_mean: float | None
    hint_length_median: float | None
    period_length_mean: float | None
    period_length_median: float | None
    histogram_edges: list[float]
    histogram_counts: list[int]
    unit_mean_lengths: dict[str, float] | None = None

    def to_dict(self) -> dict:
        return {
            "sigma_count": self.sigma_count,
            "p1_count": self.p1_count,
            "p2_count": self.p2_count,
            "p1_over_sigma": self.p1_over_sigma,
            "p2_over_p1": self.p2_over_p1,
            "p2_over_sigma": self.p2_over_sigma,
            "hint_length_mean": self.hint_length_mean,
            "hint_length_median": self.hint_length_median,
            "period_length_mean": self.period_length_mean,
            "period_length_median": self.period_length_median,
            "histogram_edges": self.histogram_edges,
            "histogram_counts": self.histogram_counts,
            "unit_mean_lengths": self.unit_mean_lengths,
        }

    def scalar_rows(self) -> list[tuple[str, object]]:
        """(metric, value) pairs in a fixed order for CSV emission."""
        rows = [
            ("sigma_count", self.sigma_count),
            ("p1_count", self.p1_count),
            ("p2_count", self.p2_count),
            ("p1_over_sigma", self.p1_over_sigma),
            ("p2_over_p1", self.p2_over_p1),
            ("p2_over_sigma", self.p2_over_sigma),
            ("hint_length_mean", self.hint_length_mean),
            ("hint_length_median", self.hint_length_median),
            ("period_length_mean", self.period_length_mean),
            ("period_length_median", self.period_length_median),
        ]
        if self.unit_mean_lengths:
            for kind in sorted(self.unit_mean_lengths):
                rows.append((f"unit_mean_{kind}", self.unit_mean_lengths[kind]))
        return rows


def period_histogram(periods, max_period: float | None = None):
    """Width-10 bin edges from 0 and counts for a pool of period lengths."""
    periods = np.asarray(list(periods), dtype=float)
    top = max(periods.max() if periods.size else 0.0, max_period or 0.0)
    upper = max(HISTOGRAM_BIN_WIDTH, int(np.ceil(top / HISTOGRAM_BIN_WIDTH)) * HISTOGRAM_BIN_WIDTH)
    edges = np.arange(0.0, upper + HISTOGRAM_BIN_WIDTH, HISTOGRAM_BIN_WIDTH)
    counts, _ = np.histogram(periods, bins=edges)
    return edges.tolist(), counts.tolist()


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def pooled_unit_means(docs) -> dict[str, float] | None:
    pools: dict[str, list] = {}
    for doc in docs:
        if doc.units:
            for kind in doc.units:
                pools.setdefault(kind, []).extend(doc.unit_lengths(kind).tolist())
    if not pools:
        return None
    return {kind: float(np.mean(lengths)) for kind, lengths in sorted(pools.items())}


def partition_corpus(results, docs=None):
    """Partition detection results into (CorpusPartition, CorpusReport).

    Hint statistics pool over all hints of P1 documents, period statistics
    over all validated periods of P2 documents. Ratios with an empty
    denominator are None. `docs` is only needed for unit mean lengths.
    """
    results = list(results)
    if not results:
        raise ValueError("no detection results to partition")
    sigma = frozenset(r.doc_id for r in results)
    p1 = frozenset(r.doc_id for r in results if r.hints)
    p2 = frozenset(r.doc_id for r in results if r.periods)
    partition = CorpusPartition(sigma=sigma, p1=p1, p2=p2)

    hint_lengths = np.array([h.period for r in results for h in r.hints], dtype=float)
    period_lengths = np.array(
        [vp.refined_period for r in results for vp in r.periods], dtype=float
    )
    edges, counts = period_histogram(period_lengths)
    report = CorpusReport(
        sigma_count=len(sigma),
        p1_count=len(p1),
        p2_count=len(p2),
        p1_over_sigma=_ratio(len(p1), len(sigma)),
        p2_over_p1=_ratio(len(p2), len(p1)),
        p2_over_sigma=_ratio(len(p2), len(sigma)),
        hint_length_mean=float(hint_lengths.mean()) if hint_lengths.size else None,
        hint_length_median=float(np.median(hint_lengths)) if hint_lengths.size else None,
        period_length_mean=float(period_lengths.mean()) if period_lengths.size else None,
        period_length_median=float(np.median(period_lengths)) if period_lengths.size else None,
        histogram_edges=edges,
        histogram_counts=counts,
        unit_mean_lengths=pooled_unit_means(docs) if docs is not None else None,
    )
    return partition, report


@dataclass
class UnitComparisonReport:
    """Detected period lengths against the mean lengths of annotated units."""

    unit_means: dict[str, float]
    period_count: int
    histogram_edges: list[float]
    histogram_counts: list[int]
    frac_periods_over_unit_mean: dict[str, float | None]
    frac_periods_over_100: float | None

    def to_dict(self) -> dict:
        return {
            "unit_means": self.unit_means,
            "period_count": self.period_count,
            "histogram_edges": self.histogram_edges,
            "histogram_counts": self.histogram_counts,
            "frac_periods_over_unit_mean": self.frac_periods_over_unit_mean,
            "frac_periods_over_100": self.frac_periods_over_100,
        }


def period_unit_comparison(results, docs) -> UnitComparisonReport:
    """Histogram of detected periods plus per-unit-kind mean lengths.

    Raises ValueError when no document carries unit annotations (the
    report should then be omitted).
    """
    unit_means = pooled_unit_means(docs)
    if unit_means is None:
        raise ValueError("no unit annotations present in the corpus; omit this report")
    periods = np.array([vp.refined_period for r in results for vp in r.periods], dtype=float)
    edges, counts = period_histogram(periods)
    if periods.size:
        frac_over = {k: float(np.mean(periods > m)) for k, m in unit_means.items()}
        frac_100 = float(np.mean(periods > 100))
    else:
        frac_over = {k: None for k in unit_means}
        frac_100 = None
    return UnitComparisonReport(
        unit_means=unit_means,
        period_count=int(periods.size),
        histogram_edges=edges,
        histogram_counts=counts,
        frac_periods_over_unit_mean=frac_over,
        frac_periods_over_100=frac_100,
    )


@dataclass
class GroupComparison:
    """Side-by-side partition reports for two result groups (e.g. human vs generated)."""

    report_a: CorpusReport
    report_b: CorpusReport
    ratio_deltas: dict[str, float | None]
    histogram_edges: list[float]
    histogram_counts_a: list[int]
    histogram_counts_b: list[int]
    long_period_threshold: int
    long_period_frac_a: float | None
    long_period_frac_b: float | None

    def csv_rows(self) -> list[list]:
        rows = [["metric", "group_a", "group_b", "delta"]]
        a, b = self.report_a, self.report_b
        for name in ("sigma_count", "p1_count", "p2_count"):
            rows.append([name, getattr(a, name), getattr(b, name), None])
        for name in ("p1_over_sigma", "p2_over_p1", "p2_over_sigma"):
            rows.append([name, getattr(a, name), getattr(b, name), self.ratio_deltas[name]])
        rows.append(
            [
                f"frac_periods_over_{self.long_period_threshold}",
                self.long_period_frac_a,
                self.long_period_frac_b,
                None,
            ]
        )
        return rows


def compare_groups(a, b) -> GroupComparison:
    """Compare two sets of detection results on shared histogram bins.

    The long-period band (> 50 tokens) is reported separately since group
    differences concentrate there.
    """
    a, b = list(a), list(b)
    if not a or not b:
        raise ValueError("both groups must be nonempty")
    _, report_a = partition_corpus(a)
    _, report_b = partition_corpus(b)
    deltas = {
        name: (
            None
            if getattr(report_a, name) is None or getattr(report_b, name) is None
            else getattr(report_b, name) - getattr(report_a, name)
        )
        for name in ("p1_over_sigma", "p2_over_p1", "p2_over_sigma")
    }
    periods_a = np.array([vp.refined_period for r in a for vp in r.periods], dtype=float)
    periods_b = np.array([vp.refined_period for r in b for vp in r.periods], dtype=float)
    top = max(
        periods_a.max() if periods_a.size else 0.0,
        periods_b.max() if periods_b.size else 0.0,
    )
    edges, counts_a = period_histogram(periods_a, max_period=top)
    _, counts_b = period_histogram(periods_b, max_period=top)
    return GroupComparison(
        report_a=report_a,
        report_b=report_b,
        ratio_deltas=deltas,
        histogram_edges=edges,
        histogram_counts_a=counts_a,
        histogram_counts_b=counts_b,
        long_period_threshold=LONG_PERIOD_THRESHOLD,
        long_period_frac_a=float(np.mean(periods_a > LONG_PERIOD_THRESHOLD))
        if periods_a.size
        else None,
        long_period_frac_b=float(np.mean(periods_b > LONG_PERIOD_THRESHOLD))
        if periods_b.size
        else None,
    )


# ---------------------------------------------------------------------------
# JSONL (de)serialization of detection results


def result_to_record(r: DetectionResult) -> dict:
    return {
        "doc_id": r.doc_id,
        "classification": r.classification,
        "hints": [
            {
                "k": h.k,
                "period": h.period,
                "frequency": h.frequency,
                "power": h.power,
                "threshold": h.threshold,
                "confidence": h.confidence,
            }
            for h in r.hints
        ],
        "periods": [
            {
                "refined_period": vp.refined_period,
                "hint_k": vp.source_hint.k,
                "hint_period": vp.source_hint.period,
                "power": vp.source_hint.power,
                "slope_left": vp.slope_left,
                "slope_right": vp.slope_right,
                "delta_theta": vp.delta_theta,
                "window": list(vp.window),
            }
            for vp in r.periods
        ],
        "config": r.config,
        "diagnostics": r.diagnostics,
    }


def result_from_record(rec: dict) -> DetectionResult:
    hints = [PeriodHint(**h) for h in rec["hints"]]
    by_k = {h.k: h for h in hints}
    periods = [
        ValidatedPeriod(
            source_hint=by_k[p["hint_k"]],
            refined_period=p["refined_period"],
            slope_left=p["slope_left"],
            slope_right=p["slope_right"],
            delta_theta=p["delta_theta"],
            window=tuple(p["window"]),
        )
        for p in rec["periods"]
    ]
    return DetectionResult(
        doc_id=rec["doc_id"],
        hints=hints,
        periods=periods,
        config=rec["config"],
        classification=rec["classification"],
        diagnostics=rec.get("diagnostics", []),
    )
