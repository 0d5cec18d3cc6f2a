"""Document data model and the JSONL interchange format.

A corpus is a JSONL file: one JSON object per line with fields

    doc_id            string, required
    values            list of finite numbers (per-token surprisal), required
    tokens            optional list of strings, same length as values
    units             optional map unit-kind -> strictly increasing end indices
    units_of_measure  optional, "nats" (default) or "bits"

Files are UTF-8; numbers are serialized with full round-trip precision, so
``read_corpus(write_corpus(docs))`` reproduces ``docs`` exactly.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

UNIT_KINDS = ("edu", "sentence", "paragraph", "document")


class CorpusError(ValueError):
    """Malformed corpus file or document invariant violation."""


@dataclass
class SurprisalDocument:
    """One document's per-token surprisal values plus optional annotations."""

    doc_id: str
    values: np.ndarray
    tokens: list[str] | None = None
    units: dict[str, list[int]] | None = None
    units_of_measure: str = "nats"

    def __post_init__(self):
        try:
            self.values = np.asarray(self.values, dtype=float)
        except (TypeError, ValueError):
            raise CorpusError(f"document {self.doc_id!r}: values must be numeric") from None
        if self.values.ndim != 1 or self.values.size < 1:
            raise CorpusError(f"document {self.doc_id!r}: values must be a non-empty sequence")
        if not np.all(np.isfinite(self.values)):
            raise CorpusError(f"document {self.doc_id!r}: values contain non-finite entries")
        n = self.values.size
        if self.tokens is not None and len(self.tokens) != n:
            raise CorpusError(
                f"document {self.doc_id!r}: tokens length {len(self.tokens)} != values length {n}"
            )
        if self.units is not None:
            for kind, bounds in self.units.items():
                if kind not in UNIT_KINDS:
                    raise CorpusError(
                        f"document {self.doc_id!r}: unknown unit kind {kind!r} "
                        f"(expected one of {UNIT_KINDS})"
                    )
                prev = 0
                for b in bounds:
                    if not isinstance(b, int) or b <= prev or b > n:
                        raise CorpusError(
                            f"document {self.doc_id!r}: units[{kind!r}] boundaries must be "
                            f"strictly increasing integers in [1, {n}], got {bounds}"
                        )
                    prev = b
        # Proper-probability surprisal is non-negative; model scores may be
        # post-processed, so this is advisory only.
        if self.units_of_measure in ("nats", "bits") and np.any(self.values < 0):
            warnings.warn(
                f"document {self.doc_id!r}: negative surprisal values present",
                stacklevel=2,
            )

    @property
    def n(self) -> int:
        return int(self.values.size)

    def unit_lengths(self, kind: str) -> np.ndarray:
        """Token lengths of the annotated units of one kind (consecutive boundary diffs)."""
        if self.units is None or kind not in self.units:
            raise KeyError(f"document {self.doc_id!r} has no {kind!r} annotations")
        bounds = self.units[kind]
        return np.diff(np.concatenate(([0], bounds)))


@dataclass(frozen=True)
class CorpusPartition:
    """Nested document-id sets: periodic p2, quasi-periodic p1, full corpus sigma."""

    sigma: frozenset[str]
    p1: frozenset[str]
    p2: frozenset[str]

    def __post_init__(self):
        if not (self.p2 <= self.p1 <= self.sigma):
            raise ValueError("partition nesting violated: expected p2 <= p1 <= sigma")


def _doc_from_record(rec: dict, lineno: int) -> SurprisalDocument:
    if not isinstance(rec, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    try:
        doc_id = rec["doc_id"]
        values = rec["values"]
    except KeyError as exc:
        raise CorpusError(f"line {lineno}: missing required field {exc.args[0]!r}") from None
    units = rec.get("units")
    if units is not None:
        units = {kind: list(bounds) for kind, bounds in units.items()}
    return SurprisalDocument(
        doc_id=doc_id,
        values=values,
        tokens=rec.get("tokens"),
        units=units,
        units_of_measure=rec.get("units_of_measure", "nats"),
    )


def read_corpus(path) -> list[SurprisalDocument]:
    """Read a JSONL corpus, validating every document invariant.

    Raises CorpusError naming the offending line number (malformed JSON) or
    doc_id and field (invariant violations). Blank lines are skipped.
    """
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from None
            docs.append(_doc_from_record(rec, lineno))
    return docs


def document_to_record(doc: SurprisalDocument) -> dict:
    """JSON-serializable record for one document, with a fixed key order."""
    rec = {"doc_id": doc.doc_id, "values": doc.values.tolist()}
    if doc.tokens is not None:
        rec["tokens"] = list(doc.tokens)
    if doc.units is not None:
        rec["units"] = {k: list(v) for k, v in doc.units.items()}
    if doc.units_of_measure != "nats":
        rec["units_of_measure"] = doc.units_of_measure
    return rec


def write_corpus(docs, path) -> None:
    """Write documents as JSONL with full float precision (round-trip exact)."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(document_to_record(doc), ensure_ascii=False))
            fh.write("\n")
