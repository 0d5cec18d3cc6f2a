"""Scoring protocol and the sliding-window surprisal computation.

A scorer owns a tokenizer and a causal model. It must provide:

    encode(text)              -> (token ids, token strings, char offset pairs)
    conditional_logprobs(ids) -> natural-log p(ids[j] | BOS, ids[:j]) per j

Documents longer than the scorer's context are scored with overlapping
windows (stride = half the window): each window re-scores its tail so
every token keeps at least half a window of left context. The first
window is scored in full, conditioning token 0 on BOS alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

LN2 = float(np.log(2.0))


class ExtractorError(RuntimeError):
    """Configuration, model-loading, or alignment failure."""


@dataclass(frozen=True)
class Encoded:
    ids: list[int]
    tokens: list[str]
    offsets: list[tuple[int, int]]  # (char_start, char_end) per token


class CausalScorer(Protocol):
    max_context: int  # model positions, including the BOS slot

    def encode(self, text: str) -> Encoded: ...

    def conditional_logprobs(self, ids: Sequence[int]) -> np.ndarray: ...


@dataclass(frozen=True)
class ExtractionConfig:
    """Extraction settings; base "e" emits nats, "2" emits bits."""

    model: str
    device: str = "cpu"
    max_context: int = 1024
    batch_size: int = 8
    base: str = "e"
    input_format: str = "plain"  # "plain" text dir | "annotated" (dir + boundary TSV)

    def __post_init__(self):
        if self.max_context < 2:
            raise ExtractorError("max_context must be >= 2")
        if self.batch_size < 1:
            raise ExtractorError("batch_size must be >= 1")
        if self.base not in ("e", "2"):
            raise ExtractorError('base must be "e" (nats) or "2" (bits)')
        if self.input_format not in ("plain", "annotated"):
            raise ExtractorError(f"unknown input format {self.input_format!r}")

    @property
    def units_of_measure(self) -> str:
        return "nats" if self.base == "e" else "bits"


def _score_windows(scorer: CausalScorer, windows: list[list[int]]) -> list[np.ndarray]:
    batched = getattr(scorer, "conditional_logprobs_many", None)
    if batched is not None:
        return [np.asarray(a) for a in batched(windows)]
    return [np.asarray(scorer.conditional_logprobs(w)) for w in windows]


def surprisal_values(scorer: CausalScorer, ids: Sequence[int], base: str = "e") -> np.ndarray:
    """Per-token surprisal of an id sequence under the scorer.

    Fits-in-context sequences are scored in one pass; longer ones with a
    half-window stride, keeping for each token the score with the longest
    available context. Scorers may expose conditional_logprobs_many to
    batch the continuation windows.
    """
    ids = list(ids)
    n = len(ids)
    if n == 0:
        return np.empty(0)
    window = scorer.max_context - 1  # BOS takes one position
    if window < 1:
        raise ExtractorError("scorer context too small to hold any token")
    values = np.full(n, np.nan)
    head = min(window, n)
    values[:head] = -np.asarray(scorer.conditional_logprobs(ids[:head]))
    if n > window:
        stride = max(window // 2, 1)
        keep_from = window - stride  # positions with >= half-window context
        starts = []
        start = stride
        while start + keep_from < n:
            starts.append(start)
            start += stride
        scored = _score_windows(scorer, [ids[s : s + window] for s in starts])
        for s, lps in zip(starts, scored):
            stop = min(window, n - s)
            values[s + keep_from : s + stop] = -lps[keep_from:stop]
    assert not np.any(np.isnan(values))
    if base == "2":
        values = values / LN2
    return values
