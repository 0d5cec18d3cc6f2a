"""Command-line surface: detect, synth, hr, compare, plot.

Every command is deterministic given its flags; the single --seed value
(default 42, overridable through the APS_SEED environment variable) fans
out to all random choices. Exit codes: 0 success, 1 usage or I/O error,
2 completed with per-document failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import analytics
from .corpus import CorpusError, read_corpus, write_corpus
from .harmonic import SCALERS, HRDesign, evaluate_mse_by_partition, fit_design, portion_docs
from .hints import HintConfig, hints_from_threshold, max_power_distribution, threshold_from_distribution
from .spectrum import acf, periodogram
from .svgplot import LinePlot
from .synth import SynthSpec, generate_corpus

BACKEND_FLAGS = {"classic": "classic", "lomb-scargle": "lomb_scargle"}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt_cell(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path, rows, header_comments=()):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for comment in header_comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _add_detection_flags(p):
    p.add_argument("--confidence", type=float, default=0.90,
                   help="confidence level for the permutation threshold (default 0.90)")
    p.add_argument("--permutations", type=int, default=100,
                   help="number of shuffles m (default 100)")
    p.add_argument("--backend", choices=sorted(BACKEND_FLAGS), default="lomb-scargle",
                   help="periodogram backend (default lomb-scargle)")
    p.add_argument("--min-length", type=int, default=analytics.DEFAULT_MIN_LENGTH,
                   help="documents shorter than this are classified none (default 32)")
    p.add_argument("--delta-theta", type=float, default=0.01,
                   help="hill-test angle threshold (default 0.01)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")


def _resolve_seed(parser, args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("APS_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        parser.error(f"APS_SEED must be an integer, got {env!r}")


def _hint_config(parser, args, seed) -> HintConfig:
    if not 0.0 < args.confidence < 1.0:
        parser.error("--confidence must be in (0, 1)")
    if args.permutations < 1:
        parser.error("--permutations must be >= 1")
    return HintConfig(
        permutations=args.permutations,
        confidence=args.confidence,
        seed=seed,
        backend=BACKEND_FLAGS[args.backend],
    )


def _read_corpus_or_die(path):
    try:
        return read_corpus(path)
    except (OSError, CorpusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)


def _read_results_or_die(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return [analytics.result_from_record(json.loads(line)) for line in fh if line.strip()]
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read detection results from {path}: {exc}", file=sys.stderr)
        raise SystemExit(1)


def _run_detection(parser, args, docs, seed):
    cfg = _hint_config(parser, args, seed)
    if args.min_length < 1:
        parser.error("--min-length must be >= 1")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    return analytics.detect_corpus(
        docs, cfg, min_length=args.min_length, delta_theta=args.delta_theta, jobs=args.jobs
    )


def _report_errors(errors, sidecar_path):
    if not errors:
        return
    with open(sidecar_path, "w", encoding="utf-8") as fh:
        for doc_id, msg in errors:
            print(f"document {doc_id}: {msg}", file=sys.stderr)
            fh.write(f"{doc_id}\t{msg}\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_detect(parser, args):
    docs = _read_corpus_or_die(args.input)
    seed = _resolve_seed(parser, args)
    results, errors = _run_detection(parser, args, docs, seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        for r in results:
            fh.write(json.dumps(analytics.result_to_record(r)))
            fh.write("\n")
    if results:
        _, report = analytics.partition_corpus(results, docs=docs)
        _write_json(f"{args.report_prefix}.json", report.to_dict())
        rows = [["metric", "value"]] + [list(r) for r in report.scalar_rows()]
        rows += [["histogram_bin_start", "count"]]
        rows += [
            [lo, c] for lo, c in zip(report.histogram_edges[:-1], report.histogram_counts)
        ]
        _write_csv(f"{args.report_prefix}.csv", rows)
    _report_errors(errors, f"{args.out}.errors.txt")
    return 2 if errors else 0


def cmd_synth(parser, args):
    periods = tuple(args.period or [50.0])
    amps = tuple(args.amp or [1.0])
    if len(amps) == 1 and len(periods) > 1:
        amps = amps * len(periods)
    seed = _resolve_seed(parser, args)
    try:
        spec = SynthSpec(
            n_docs=args.docs,
            length=args.length,
            periods=periods,
            amplitudes=amps,
            noise_sigma=args.sigma,
            fraction_periodic=args.fraction,
            seed=seed,
            baseline_mean=args.baseline,
        )
    except ValueError as exc:
        parser.error(str(exc))
    docs, manifest = generate_corpus(spec)
    try:
        write_corpus(docs, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)
    _write_json(args.manifest or f"{args.out}.manifest.json", manifest)
    return 0


def cmd_hr(parser, args):
    docs = _read_corpus_or_die(args.corpus)
    scalers = args.scaler or ["document"]
    for s in scalers:
        if s not in SCALERS:
            parser.error(f"unknown scaler {s!r}")
    if args.K < 0:
        parser.error("--K must be >= 0")
    results = _read_results_or_die(args.results) if args.results else None

    if args.table == "mse":
        if results is None:
            parser.error("--table mse requires --results (portions come from detection)")
        partition, _ = analytics.partition_corpus(results, docs=docs)
        designs = [HRDesign(K=args.K, scaler=s) for s in scalers]
        try:
            table = evaluate_mse_by_partition(docs, partition, designs, results=results)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(1)
        _write_csv(
            args.out,
            table.csv_rows(),
            header_comments=[
                f"baseline: {','.join(table.baseline_spec)}",
                f"K: {args.K}",
            ],
        )
        return 0

    if len(scalers) != 1:
        parser.error("--table coef takes exactly one --scaler")
    scaler = scalers[0]
    if results is not None:
        partition, _ = analytics.partition_corpus(results, docs=docs)
        subset = portion_docs(docs, partition)[args.portion]
    else:
        if scaler.startswith("aps_") or args.portion != "Sigma":
            parser.error("--results is required for aps scalers and non-Sigma portions")
        subset = docs
    if not subset:
        print(f"error: portion {args.portion} is empty", file=sys.stderr)
        raise SystemExit(1)
    design = HRDesign(K=args.K, scaler=scaler)
    try:
        fit = fit_design(subset, results, design)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)
    rows = [["k", "A_k", "beta", "coef", "p_value"]] + fit.harmonic_rows()
    _write_csv(
        args.out,
        rows,
        header_comments=[
            f"baseline: {','.join(design.baseline)}",
            f"scaler: {scaler}; K: {args.K}; portion: {args.portion}",
            f"n_obs: {fit.n_obs}; mse: {fit.mse!r}",
        ],
    )
    return 0


def cmd_compare(parser, args):
    docs_a = _read_corpus_or_die(args.group_a)
    docs_b = _read_corpus_or_die(args.group_b)
    seed = _resolve_seed(parser, args)
    results_a, errors_a = _run_detection(parser, args, docs_a, seed)
    results_b, errors_b = _run_detection(parser, args, docs_b, seed)
    if not results_a or not results_b:
        print("error: a group produced no detection results", file=sys.stderr)
        raise SystemExit(1)
    comparison = analytics.compare_groups(results_a, results_b)
    _write_csv(f"{args.out_prefix}_comparison.csv", comparison.csv_rows())
    hist_rows = [["bin_start", "count_a", "count_b"]]
    hist_rows += [
        [lo, ca, cb]
        for lo, ca, cb in zip(
            comparison.histogram_edges[:-1],
            comparison.histogram_counts_a,
            comparison.histogram_counts_b,
        )
    ]
    _write_csv(f"{args.out_prefix}_histogram.csv", hist_rows)
    plot = LinePlot(
        title="Validated period length distribution",
        x_label="period (tokens)",
        y_label="documents' periods per bin",
    )
    plot.add_bars("group_a", comparison.histogram_edges, comparison.histogram_counts_a)
    plot.add_bars("group_b", comparison.histogram_edges, comparison.histogram_counts_b)
    plot.write(f"{args.out_prefix}_histogram.svg")
    _report_errors(errors_a + errors_b, f"{args.out_prefix}.errors.txt")
    return 2 if errors_a or errors_b else 0


def _find_doc(parser, docs, doc_id):
    for doc in docs:
        if doc.doc_id == doc_id:
            return doc
    parser.error(f"document {doc_id!r} not found in corpus")


def cmd_plot(parser, args):
    seed = _resolve_seed(parser, args)
    rows = [["series", "x", "y"]]
    if args.kind == "periodogram":
        if not args.corpus or not args.doc:
            parser.error("--kind periodogram requires --corpus and --doc")
        doc = _find_doc(parser, _read_corpus_or_die(args.corpus), args.doc)
        cfg = _hint_config(parser, args, seed)
        try:
            levels = sorted(float(s) for s in args.confidence_levels.split(","))
        except ValueError:
            parser.error("--confidence-levels must be a comma-separated list of numbers")
        if any(not 0.0 < c < 1.0 for c in levels):
            parser.error("--confidence-levels values must be in (0, 1)")
        pg = periodogram(doc.values, cfg.backend)
        dist = max_power_distribution(doc.values, cfg)
        plot = LinePlot(
            title=f"Periodogram of {doc.doc_id} ({cfg.backend})",
            x_label="frequency (cycles/token)",
            y_label="power",
        )
        plot.add_line("power", pg.frequencies, pg.powers)
        for f, p in zip(pg.frequencies, pg.powers):
            rows.append(["power", float(f), float(p)])
        for cl in levels:
            thr = threshold_from_distribution(dist, cl)
            plot.add_hline(f"threshold CL={cl:g}", thr)
            rows.append(["threshold", cl, thr])
        hints = hints_from_threshold(
            doc.values, threshold_from_distribution(dist, cfg.confidence), cfg
        )
        if hints:
            plot.add_marks("hints", [h.frequency for h in hints], [h.power for h in hints])
        for h in hints:
            rows.append(["hint", h.frequency, h.power])
    elif args.kind == "acf":
        if not args.corpus or not args.doc:
            parser.error("--kind acf requires --corpus and --doc")
        doc = _find_doc(parser, _read_corpus_or_die(args.corpus), args.doc)
        curve = acf(doc.values)
        plot = LinePlot(
            title=f"Circular ACF of {doc.doc_id}", x_label="lag (tokens)", y_label="ACF"
        )
        lags = list(range(curve.n))
        plot.add_line("acf", lags, curve.values)
        for lag, v in zip(lags, curve.values):
            rows.append(["acf", lag, float(v)])
        marks = []
        if args.results:
            for r in _read_results_or_die(args.results):
                if r.doc_id == doc.doc_id:
                    marks = [vp.refined_period for vp in r.periods]
        if marks:
            plot.add_marks("validated periods", marks, [float(curve.values[m]) for m in marks])
        for m in marks:
            rows.append(["period", m, float(curve.values[m])])
    else:  # histogram
        if not args.results:
            parser.error("--kind histogram requires --results")
        results = _read_results_or_die(args.results)
        periods = [vp.refined_period for r in results for vp in r.periods]
        edges, counts = analytics.period_histogram(periods)
        plot = LinePlot(
            title="Validated period length distribution",
            x_label="period (tokens)",
            y_label="count",
        )
        plot.add_bars("periods", edges, counts)
        for lo, c in zip(edges[:-1], counts):
            rows.append(["hist", float(lo), int(c)])
    _write_csv(f"{args.out_prefix}.csv", rows)
    plot.write(f"{args.out_prefix}.svg")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="textperiod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[], help="detect periods in a corpus")
    p.add_argument("input", help="corpus JSONL")
    p.add_argument("--out", required=True, help="detection results JSONL")
    p.add_argument("--report-prefix", default=None,
                   help="prefix for the partition report (default: <out> without extension)")
    p.add_argument("--seed", type=int, default=None)
    _add_detection_flags(p)

    p = sub.add_parser("synth", help="generate a synthetic corpus with planted periods")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", default=None, help="ground-truth JSON (default <out>.manifest.json)")
    p.add_argument("--docs", type=int, default=100)
    p.add_argument("--length", type=int, default=500)
    p.add_argument("--period", type=float, action="append",
                   help="planted period; repeatable (default 50)")
    p.add_argument("--amp", type=float, action="append",
                   help="amplitude per period; repeatable (default 1.0)")
    p.add_argument("--sigma", type=float, default=0.3)
    p.add_argument("--fraction", type=float, default=0.3)
    p.add_argument("--baseline", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("hr", help="harmonic-regression tables")
    p.add_argument("--corpus", required=True)
    p.add_argument("--results", default=None, help="detection results JSONL")
    p.add_argument("--scaler", action="append", choices=SCALERS,
                   help="scaling length source; repeatable for --table mse")
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--portion", choices=["P2", "P1", "Sigma", "Sigma-P1"], default="Sigma")
    p.add_argument("--table", choices=["coef", "mse"], default="coef")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("compare", help="compare detection outcomes of two corpora")
    p.add_argument("group_a")
    p.add_argument("group_b")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--seed", type=int, default=None)
    _add_detection_flags(p)

    p = sub.add_parser("plot", help="SVG + CSV figures")
    p.add_argument("--kind", choices=["periodogram", "acf", "histogram"], required=True)
    p.add_argument("--corpus", default=None)
    p.add_argument("--results", default=None)
    p.add_argument("--doc", default=None)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--confidence-levels", default="0.5,0.9,0.99",
                   help="dashed thresholds for periodogram plots")
    p.add_argument("--seed", type=int, default=None)
    _add_detection_flags(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "report_prefix", None) is None and args.command == "detect":
        base = args.out
        if base.endswith(".jsonl"):
            base = base[: -len(".jsonl")]
        args.report_prefix = base + ".report"
    handler = {
        "detect": cmd_detect,
        "synth": cmd_synth,
        "hr": cmd_hr,
        "compare": cmd_compare,
        "plot": cmd_plot,
    }[args.command]
    try:
        return handler(parser, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
