"""Directory-of-text-files -> surprisal JSONL in the shared corpus format.

Each emitted line carries doc_id, per-token surprisal values, the token
strings, the measurement unit, and the tokens' character offsets (used
later to align unit annotations without reloading the model). Extra
fields are ignored by the corpus reader, so the output stays a valid
interchange file.
"""
from __future__ import annotations

import json
import warnings
from pathlib import Path

from .scoring import CausalScorer, ExtractionConfig, ExtractorError, surprisal_values


def extract_document(scorer: CausalScorer, doc_id: str, text: str, base: str = "e") -> dict:
    """Score one text; returns the JSONL record as a dict."""
    if not text.strip():
        raise ExtractorError(f"document {doc_id!r}: empty text")
    enc = scorer.encode(text)
    if not enc.ids:
        raise ExtractorError(f"document {doc_id!r}: tokenizer produced no tokens")
    window = scorer.max_context - 1
    if len(enc.ids) > window:
        warnings.warn(
            f"document {doc_id!r}: {len(enc.ids)} tokens exceed the {window}-token "
            "context; scoring with half-window-stride sliding windows",
            stacklevel=2,
        )
    values = surprisal_values(scorer, enc.ids, base=base)
    return {
        "doc_id": doc_id,
        "values": values.tolist(),
        "tokens": enc.tokens,
        "units_of_measure": "nats" if base == "e" else "bits",
        "char_offsets": [list(o) for o in enc.offsets],
    }


def extract(
    corpus_dir,
    cfg: ExtractionConfig,
    out_path,
    scorer: CausalScorer | None = None,
    annotations_path=None,
):
    """Score every *.txt under corpus_dir (sorted by name) into a JSONL file.

    The scorer is built from cfg.model unless one is injected. With
    input_format "annotated", boundary annotations (default:
    corpus_dir/annotations.tsv) are merged into the emitted records.
    Returns the list of emitted doc_ids.
    """
    corpus_dir = Path(corpus_dir)
    files = sorted(corpus_dir.glob("*.txt"))
    if not files:
        raise ExtractorError(f"no *.txt documents under {corpus_dir}")
    annotations = None
    if cfg.input_format == "annotated":
        from .annotate import read_annotations

        annotations_path = Path(annotations_path or corpus_dir / "annotations.tsv")
        if not annotations_path.exists():
            raise ExtractorError(f"annotated input needs a boundary TSV at {annotations_path}")
        annotations = read_annotations(annotations_path)
    if scorer is None:
        from .hf import TransformersScorer

        scorer = TransformersScorer.from_config(cfg)
    doc_ids = []
    with open(out_path, "w", encoding="utf-8") as fh:
        for path in files:
            rec = extract_document(scorer, path.stem, path.read_text(encoding="utf-8"), cfg.base)
            if annotations and rec["doc_id"] in annotations:
                from .annotate import merge_record

                merge_record(rec, annotations[rec["doc_id"]])
            fh.write(json.dumps(rec, ensure_ascii=False))
            fh.write("\n")
            doc_ids.append(rec["doc_id"])
    return doc_ids
