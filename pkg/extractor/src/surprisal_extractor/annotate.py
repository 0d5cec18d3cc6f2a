"""Merging structural-unit annotations into extracted corpora.

Annotations arrive as TSV rows (doc_id, unit_kind, char_start, char_end)
in character coordinates of the original text. The extracted JSONL keeps
each token's character span, so alignment is a lookup: a unit's end
boundary is the index just past the last token overlapping the span.
"""
from __future__ import annotations

import json
from collections import defaultdict

from .scoring import ExtractorError

UNIT_KINDS = ("edu", "sentence", "paragraph", "document")


def read_annotations(path) -> dict[str, list[tuple[str, int, int]]]:
    """Parse the TSV; returns doc_id -> [(unit_kind, char_start, char_end), ...]."""
    table: dict[str, list[tuple[str, int, int]]] = defaultdict(list)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ExtractorError(f"{path}:{lineno}: expected 4 tab-separated fields")
            doc_id, kind, start, end = parts
            if kind not in UNIT_KINDS:
                raise ExtractorError(f"{path}:{lineno}: unknown unit kind {kind!r}")
            try:
                start_i, end_i = int(start), int(end)
            except ValueError:
                raise ExtractorError(f"{path}:{lineno}: offsets must be integers") from None
            if not 0 <= start_i < end_i:
                raise ExtractorError(f"{path}:{lineno}: need 0 <= char_start < char_end")
            table[doc_id].append((kind, start_i, end_i))
    return dict(table)


def char_span_to_token_end(offsets, char_start: int, char_end: int) -> int:
    """End-exclusive token index of the last token overlapping [char_start, char_end)."""
    last = None
    for i, (s, e) in enumerate(offsets):
        if s < char_end and e > char_start:
            last = i
    if last is None:
        raise ExtractorError(f"no tokens overlap characters [{char_start}, {char_end})")
    return last + 1


def merge_record(rec: dict, spans) -> dict:
    """Attach unit boundaries to one extracted record (mutates and returns it).

    Boundaries are per-kind, strictly increasing end indices; spans whose
    tokens cannot be found (misaligned offsets) raise naming the document.
    """
    doc_id = rec["doc_id"]
    offsets = rec.get("char_offsets")
    if offsets is None:
        raise ExtractorError(
            f"document {doc_id!r}: no char_offsets field; re-extract before merging"
        )
    n = len(rec["values"])
    units: dict[str, list[int]] = defaultdict(list)
    for kind, start, end in spans:
        try:
            bound = char_span_to_token_end(offsets, start, end)
        except ExtractorError as exc:
            raise ExtractorError(f"document {doc_id!r}: {exc}") from None
        if bound > n:
            raise ExtractorError(f"document {doc_id!r}: boundary {bound} beyond {n} tokens")
        units[kind].append(bound)
    for kind, bounds in units.items():
        ordered = sorted(set(bounds))
        if len(ordered) != len(bounds):
            raise ExtractorError(f"document {doc_id!r}: duplicate {kind} boundaries")
        rec["units"] = rec.get("units") or {}
        rec["units"][kind] = ordered
    return rec


def merge_annotations(jsonl_path, annotations_path, out_path) -> int:
    """Populate the units field of an extracted JSONL from a TSV; returns docs touched."""
    annotations = read_annotations(annotations_path)
    touched = 0
    with open(jsonl_path, encoding="utf-8") as fin, open(out_path, "w", encoding="utf-8") as fout:
        for line in fin:
            if not line.strip():
                continue
            rec = json.loads(line)
            spans = annotations.get(rec["doc_id"])
            if spans:
                merge_record(rec, spans)
                touched += 1
            fout.write(json.dumps(rec, ensure_ascii=False))
            fout.write("\n")
    return touched
