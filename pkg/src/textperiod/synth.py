"""Synthetic corpora with planted periodic components.

Periodic documents are sums of seeded random-phase sinusoids over a
constant baseline plus Gaussian noise; the rest are baseline plus noise
only. A manifest records the ground truth per document so detection runs
can be scored against it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import SurprisalDocument


@dataclass(frozen=True)
class SynthSpec:
    """Generator settings; periods must fit in [2, length/2]."""

    n_docs: int
    length: int
    periods: tuple[float, ...]
    amplitudes: tuple[float, ...]
    noise_sigma: float
    fraction_periodic: float
    seed: int
    baseline_mean: float = 5.0

    def __post_init__(self):
        if self.n_docs < 1 or self.length < 4:
            raise ValueError("need n_docs >= 1 and length >= 4")
        if len(self.periods) != len(self.amplitudes):
            raise ValueError("periods and amplitudes must pair up")
        for t in self.periods:
            if not 2.0 <= t <= self.length / 2:
                raise ValueError(f"period {t} outside detectable range [2, {self.length / 2}]")
        if not 0.0 <= self.fraction_periodic <= 1.0:
            raise ValueError("fraction_periodic must be in [0, 1]")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")


def generate_corpus(spec: SynthSpec):
    """Build documents plus a ground-truth manifest; fully seeded.

    The first round(fraction * n_docs) documents carry the planted
    components. Per-document randomness derives from (seed, doc index), so
    any document can be regenerated independently.
    """
    n_periodic = int(round(spec.fraction_periodic * spec.n_docs))
    docs = []
    entries = []
    idx_axis = np.arange(spec.length)
    width = max(4, len(str(spec.n_docs - 1)))
    for i in range(spec.n_docs):
        rng = np.random.default_rng([spec.seed, i])
        periodic = i < n_periodic
        values = np.full(spec.length, spec.baseline_mean)
        phases = []
        if periodic:
            for period, amp in zip(spec.periods, spec.amplitudes):
                phase = float(rng.uniform(0.0, 2.0 * np.pi))
                phases.append(phase)
                values = values + amp * np.sin(2.0 * np.pi * idx_axis / period + phase)
        values = values + rng.normal(0.0, spec.noise_sigma, spec.length)
        doc_id = f"synth-{i:0{width}d}"
        docs.append(SurprisalDocument(doc_id=doc_id, values=values))
        entries.append(
            {
                "doc_id": doc_id,
                "periodic": periodic,
                "periods": list(spec.periods) if periodic else [],
                "amplitudes": list(spec.amplitudes) if periodic else [],
                "phases": phases,
            }
        )
    manifest = {
        "seed": spec.seed,
        "n_docs": spec.n_docs,
        "length": spec.length,
        "periods": list(spec.periods),
        "amplitudes": list(spec.amplitudes),
        "noise_sigma": spec.noise_sigma,
        "fraction_periodic": spec.fraction_periodic,
        "baseline_mean": spec.baseline_mean,
        "documents": entries,
    }
    return docs, manifest
