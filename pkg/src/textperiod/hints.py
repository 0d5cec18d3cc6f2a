"""Candidate-period extraction against a permutation-derived power threshold.

The input sequence is shuffled m times; each shuffle's maximum spectral
power goes into an empirical null distribution, and the configured
confidence level picks the threshold out of it. Every frequency whose
power on the *unpermuted* sequence strictly exceeds the threshold yields a
candidate period N/k. Shuffle randomness is derived from (seed, run index),
so results do not depend on execution order.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .spectrum import BACKENDS, periodogram


@dataclass(frozen=True)
class HintConfig:
    """Knobs for the permutation test (defaults: 100 shuffles, CL 0.90)."""

    permutations: int = 100
    confidence: float = 0.90
    seed: int = 42
    backend: str = "lomb_scargle"

    def __post_init__(self):
        if self.permutations < 1:
            raise ValueError("permutations must be >= 1")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError("confidence must be in (0, 1)")
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass(frozen=True)
class PeriodHint:
    """A frequency bin whose power beat the permutation threshold."""

    k: int
    period: float
    frequency: float
    power: float
    threshold: float
    confidence: float


def max_power_distribution(x, cfg: HintConfig) -> np.ndarray:
    """Sorted maxima of the periodogram over m seeded shuffles of x."""
    x = np.asarray(x, dtype=float)
    maxima = np.empty(cfg.permutations)
    for i in range(cfg.permutations):
        rng = np.random.default_rng([cfg.seed, i])
        maxima[i] = periodogram(rng.permutation(x), cfg.backend).powers.max()
    maxima.sort()
    return maxima


def threshold_from_distribution(sorted_maxima: np.ndarray, confidence: float) -> float:
    """Pick the confidence-level element of the sorted null maxima.

    Index floor(m * confidence), clamped to the last element; clamping to
    the observed maximum is warned about since the tail is then unresolved.
    """
    m = len(sorted_maxima)
    idx = int(m * confidence)
    if idx >= m - 1 and m * (1.0 - confidence) < 1.0:
        warnings.warn(
            f"m*(1-confidence) = {m * (1.0 - confidence):.3g} < 1: threshold is the "
            "maximum of the permutation distribution; increase permutations",
            stacklevel=2,
        )
    return float(sorted_maxima[min(idx, m - 1)])


def permutation_threshold(x, cfg: HintConfig) -> float:
    """Power threshold from m seeded shuffles at cfg.confidence."""
    return threshold_from_distribution(max_power_distribution(x, cfg), cfg.confidence)


def hints_from_threshold(x, threshold: float, cfg: HintConfig) -> list[PeriodHint]:
    """Hints of x against a precomputed threshold (ascending k)."""
    pg = periodogram(x, cfg.backend)
    out = []
    for i in np.nonzero(pg.powers > threshold)[0]:
        k = int(i) + 1
        out.append(
            PeriodHint(
                k=k,
                period=pg.n / k,
                frequency=k / pg.n,
                power=float(pg.powers[i]),
                threshold=threshold,
                confidence=cfg.confidence,
            )
        )
    return out


def get_period_hints(x, cfg: HintConfig) -> list[PeriodHint]:
    """Candidate periods whose power strictly exceeds the permutation threshold.

    Returns one hint per qualifying frequency index k >= 1, ordered by
    ascending k (descending period). An empty list is a valid outcome.
    """
    return hints_from_threshold(x, permutation_threshold(x, cfg), cfg)
