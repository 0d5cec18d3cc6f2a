"""Per-token surprisal extraction with a locally hosted causal language model."""

from .annotate import (
    char_span_to_token_end,
    merge_annotations,
    merge_record,
    read_annotations,
)
from .extract import extract, extract_document
from .scoring import (
    CausalScorer,
    Encoded,
    ExtractionConfig,
    ExtractorError,
    surprisal_values,
)

__version__ = "0.1.0"

__all__ = [
    "CausalScorer",
    "Encoded",
    "ExtractionConfig",
    "ExtractorError",
    "char_span_to_token_end",
    "extract",
    "extract_document",
    "merge_annotations",
    "merge_record",
    "read_annotations",
    "surprisal_values",
]
