"""Acceptance suite: one test per release criterion, each printing PASS/FAIL.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines
and timings. Tolerances are fixed here and must not be loosened.
"""
import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import brute_dft_magnitudes, exhaustive_split
from textperiod.acf_filter import fit_split
from textperiod.analytics import (
    compare_groups,
    detect_corpus,
    detect_document,
    partition_corpus,
)
from textperiod.cli import main as cli_main
from textperiod.corpus import SurprisalDocument
from textperiod.harmonic import HRDesign, evaluate_mse_by_partition, fit_design, fit_ols
from textperiod.hints import HintConfig, get_period_hints
from textperiod.spectrum import AcfCurve, acf
from textperiod.synth import SynthSpec, generate_corpus


@contextmanager
def criterion(name):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.1f}s)")
        raise
    print(f"ACCEPTANCE {name}: PASS ({time.perf_counter() - start:.1f}s)")


def test_01_spectrum_oracle():
    with criterion("spectrum-oracle"):
        start = time.perf_counter()
        rng = np.random.default_rng(1001)
        from textperiod.spectrum import periodogram

        for _ in range(100):
            n = int(rng.integers(8, 257))
            x = rng.normal(rng.uniform(-2, 2), rng.uniform(0.5, 3.0), n)
            got = periodogram(x, "classic").powers
            want = brute_dft_magnitudes(x)
            np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-9)
            # Wiener-Khinchin: IDFT of the squared magnitude spectrum == N * acf
            xt = x - x.mean()
            lhs = np.fft.ifft(np.abs(np.fft.fft(xt)) ** 2).real
            np.testing.assert_allclose(lhs, n * acf(x).values, rtol=1e-6, atol=1e-9)
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"spectrum oracle took {elapsed:.1f}s (limit 10s)"


def test_02_planted_period_recovery():
    with criterion("planted-period-recovery"):
        start = time.perf_counter()
        cfg = HintConfig(permutations=100, confidence=0.90, seed=4242)
        for planted in (20, 50, 100, 160):
            docs, _ = generate_corpus(
                SynthSpec(
                    n_docs=50,
                    length=500,
                    periods=(float(planted),),
                    amplitudes=(1.0,),
                    noise_sigma=0.3,
                    fraction_periodic=1.0,
                    seed=1000 + planted,
                )
            )
            n_periodic = 0
            for doc in docs:
                res = detect_document(doc, cfg)
                if res.classification == "periodic":
                    n_periodic += 1
                for vp in res.periods:
                    assert abs(vp.refined_period - planted) <= 0.05 * planted, (
                        f"T={planted}: refined {vp.refined_period} outside +-5%"
                    )
            assert n_periodic >= 45, f"T={planted}: only {n_periodic}/50 periodic"
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"recovery suite took {elapsed:.1f}s (limit 60s)"


def test_03_false_positive_calibration():
    with criterion("false-positive-calibration"):
        n_docs, n = 500, 512
        cfg99 = HintConfig(permutations=100, confidence=0.99, seed=77)
        cfg90 = HintConfig(permutations=100, confidence=0.90, seed=77)
        with_hint = 0
        for d in range(n_docs):
            x = np.random.default_rng([2024, d]).standard_normal(n)
            ks99 = {h.k for h in get_period_hints(x, cfg99)}
            ks90 = {h.k for h in get_period_hints(x, cfg90)}
            if ks99:
                with_hint += 1
            assert ks99 <= ks90, f"doc {d}: CL .99 hints not a subset of CL .90 hints"
        frac = with_hint / n_docs
        assert frac <= 0.06, f"false-positive fraction {frac:.3f} exceeds 6%"


def test_04_short_period_fragility(tmp_path):
    with criterion("short-period-fragility"):
        n_docs, n = 150, 512
        counts = {}
        for cl in (0.50, 0.99):
            cfg = HintConfig(permutations=100, confidence=cl, seed=31)
            short = total = 0
            for d in range(n_docs):
                x = np.random.default_rng([909, d]).standard_normal(n)
                hints = get_period_hints(x, cfg)
                total += len(hints)
                short += sum(1 for h in hints if h.period < 10)
            counts[cl] = (short, total)
        report = tmp_path / "short_period_fragility.csv"
        report.write_text(
            "confidence,short_period_hints,total_hints\n"
            + "".join(f"{cl},{s},{t}\n" for cl, (s, t) in sorted(counts.items()))
        )
        print(
            f"  short-period (<10 tokens) hints over {n_docs} noise docs: "
            f"CL .50 -> {counts[0.50][0]}, CL .99 -> {counts[0.99][0]} "
            f"(report: {report})"
        )
        assert counts[0.99][0] < counts[0.50][0], "raising CL must shrink short-period hints"
        # the fragility concentrates at short periods: most CL .50 hints are short
        assert counts[0.50][0] >= counts[0.50][1] * 0.5


def test_05_acf_filter_oracle():
    with criterion("acf-filter-oracle"):
        start = time.perf_counter()
        rng = np.random.default_rng(55)
        for _ in range(200):
            n = 300
            vals = np.cumsum(rng.standard_normal(n)) / 8.0
            lo = int(rng.integers(2, n - 40))
            hi = lo + int(rng.integers(4, 35))
            curve = AcfCurve(n=n, values=vals)
            got_t, _, _ = fit_split(curve, (lo, hi))
            want_t, _, _ = exhaustive_split(vals, lo, hi)
            assert got_t == want_t, f"split mismatch on window [{lo}, {hi}]"
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"acf-filter oracle took {elapsed:.1f}s (limit 5s)"


def test_06_hr_recovery_and_inference():
    with criterion("hr-recovery"):
        # exact amplitude recovery through the detection-scaled design
        from test_harmonic import _result_with_periods

        n = 1000
        t = np.arange(float(n))
        doc = SurprisalDocument("d", 5.0 + 0.5 * np.sin(2 * np.pi * t / 50.0))
        fit = fit_design([doc], [_result_with_periods("d", [50])],
                         HRDesign(K=1, scaler="aps_period"))
        assert abs(fit.amplitudes[1] - 0.5) <= 1e-6
        assert fit.pvalue[fit.columns.index("sin_1")] < 1e-10
        assert fit.pvalue[fit.columns.index("cos_1")] < 1e-10 or abs(
            fit.coefficient("cos_1")
        ) < 1e-10

        # OLS equals the normal-equations oracle
        rng = np.random.default_rng(66)
        for _ in range(30):
            rows = int(rng.integers(30, 201))
            cols = int(rng.integers(2, 13))
            X = rng.normal(size=(rows, cols))
            X[:, 0] = 1.0
            y = rng.normal(size=rows)
            fit = fit_ols(X, y)
            oracle = np.linalg.solve(X.T @ X, X.T @ y)
            np.testing.assert_allclose(fit.beta, oracle, rtol=1e-8, atol=1e-8)

        # p-value calibration on pure noise
        rng = np.random.default_rng(88)
        rows, cols = 60, 4
        X = rng.normal(size=(rows, cols))
        X[:, 0] = 1.0
        rejections = np.zeros(cols)
        n_sims = 1000
        for _ in range(n_sims):
            rejections += fit_ols(X, rng.normal(size=rows)).pvalue < 0.05
        rates = rejections / n_sims
        assert np.all((rates >= 0.03) & (rates <= 0.07)), f"rejection rates {rates}"


def test_07_mse_ordering_on_planted_corpus():
    with criterion("mse-partition-ordering"):
        rng = np.random.default_rng(1212)
        docs = []
        bounds = list(range(50, 401, 50))
        for i in range(8):  # periodic docs: half the variance is sentence-locked
            t = np.tile(np.arange(50.0), 8)
            y = 5.0 + np.sin(2 * np.pi * t / 50.0) + rng.normal(0.0, 0.3, 400)
            docs.append(SurprisalDocument(f"p-{i}", y, units={"sentence": bounds}))
        for i in range(8):  # matched total variance, nothing predictable
            y = 5.0 + rng.normal(0.0, np.sqrt(0.5 + 0.09), 400)
            docs.append(SurprisalDocument(f"n-{i}", y, units={"sentence": bounds}))
        cfg = HintConfig(permutations=100, confidence=0.90, seed=9)
        results, errors = detect_corpus(docs, cfg)
        assert not errors
        partition, _ = partition_corpus(results)
        assert len(partition.p2) >= 7  # planted docs detected
        table = evaluate_mse_by_partition(
            docs, partition, [HRDesign(K=2, scaler="sentence")], results=results
        )
        cell = {
            (portion, design): table.values[i][j]
            for i, portion in enumerate(table.portions)
            for j, design in enumerate(table.designs)
        }
        assert cell[("P2", "sentence")] < cell[("Sigma-P1", "sentence")]
        for portion in table.portions:
            if cell[(portion, "sentence")] is not None:
                assert cell[(portion, "sentence")] <= cell[(portion, "baseline")] + 1e-12
        print(
            f"  MSE sentence-scaled: P2={cell[('P2', 'sentence')]:.4f} "
            f"Sigma-P1={cell[('Sigma-P1', 'sentence')]:.4f}"
        )


def test_08_table_arithmetic_fixtures():
    with criterion("table-arithmetic"):
        from test_analytics import _hint, _result, _vp

        def build(n_sigma, n_p1, n_p2, tag):
            out = []
            for i in range(n_p2):
                out.append(_result(f"{tag}p2-{i}", hints=[_hint()], periods=[_vp()]))
            for i in range(n_p1 - n_p2):
                out.append(_result(f"{tag}p1-{i}", hints=[_hint()]))
            for i in range(n_sigma - n_p1):
                out.append(_result(f"{tag}n-{i}"))
            return out

        _, report = partition_corpus(build(2499, 221, 131, "x"))
        assert f"{100 * report.p1_over_sigma:.2f}" == "8.84"
        assert f"{100 * report.p2_over_p1:.2f}" == "59.28"
        assert f"{100 * report.p2_over_sigma:.2f}" == "5.24"

        cmp = compare_groups(
            build(5000, 1032, 740, "h"), build(5000, 1882, 1503, "g")
        )
        assert f"{100 * cmp.report_a.p2_over_sigma:.2f}" == "14.80"
        assert f"{100 * cmp.report_b.p2_over_sigma:.2f}" == "30.06"


def _run_cli(argv):
    try:
        code = cli_main(argv)
    except SystemExit as exc:
        code = exc.code
    return code


def test_09_cli_determinism(tmp_path):
    with criterion("cli-determinism"):
        outputs = {}
        for tag in ("a", "b"):
            d = tmp_path / tag
            d.mkdir()
            corpus = d / "corpus.jsonl"
            results = d / "results.jsonl"
            assert _run_cli([
                "synth", "--out", str(corpus), "--docs", "10", "--length", "300",
                "--period", "40", "--sigma", "0.3", "--fraction", "0.5", "--seed", "21",
            ]) == 0
            assert _run_cli([
                "detect", str(corpus), "--out", str(results),
                "--permutations", "80", "--confidence", "0.9", "--seed", "21",
            ]) == 0
            assert _run_cli([
                "hr", "--corpus", str(corpus), "--results", str(results),
                "--scaler", "aps_period", "--K", "2", "--portion", "P2",
                "--out", str(d / "coef.csv"),
            ]) == 0
            assert _run_cli([
                "hr", "--corpus", str(corpus), "--results", str(results),
                "--scaler", "document", "--K", "2", "--table", "mse",
                "--out", str(d / "mse.csv"),
            ]) == 0
            assert _run_cli([
                "compare", str(corpus), str(corpus), "--out-prefix", str(d / "cmp"),
                "--permutations", "80", "--seed", "21",
            ]) == 0
            assert _run_cli([
                "plot", "--kind", "periodogram", "--corpus", str(corpus),
                "--doc", "synth-0000", "--out-prefix", str(d / "spec"),
                "--permutations", "80", "--seed", "21",
            ]) == 0
            assert _run_cli([
                "plot", "--kind", "acf", "--corpus", str(corpus),
                "--doc", "synth-0000", "--results", str(results),
                "--out-prefix", str(d / "acf"),
            ]) == 0
            assert _run_cli([
                "plot", "--kind", "histogram", "--results", str(results),
                "--out-prefix", str(d / "hist"),
            ]) == 0
            outputs[tag] = {
                p.name: p.read_bytes() for p in sorted(d.iterdir()) if p.is_file()
            }
        assert outputs["a"].keys() == outputs["b"].keys()
        for name in outputs["a"]:
            assert outputs["a"][name] == outputs["b"][name], f"{name} differs between reruns"
        print(f"  {len(outputs['a'])} files byte-identical across reruns")
