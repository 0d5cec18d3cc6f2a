"""Scorer adapter for Hugging Face causal language models.

Loads lazily so the rest of the package works without torch installed.
Scoring prepends BOS, runs one forward pass per window, and gathers the
log-softmax at the realized token ids in float64.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .scoring import Encoded, ExtractionConfig, ExtractorError


class TransformersScorer:
    """Wraps a (model, tokenizer) pair behind the scoring protocol."""

    def __init__(
        self,
        model,
        tokenizer,
        device: str = "cpu",
        max_context: int | None = None,
        batch_size: int = 8,
    ):
        import torch  # deferred: heavy import

        self._torch = torch
        self.model = model.to(device).eval()
        self.tokenizer = tokenizer
        self.device = device
        self.batch_size = max(int(batch_size), 1)
        limit = getattr(model.config, "n_positions", None) or getattr(
            model.config, "max_position_embeddings", None
        )
        self.max_context = int(min(max_context or limit, limit))
        if self.max_context < 2:
            raise ExtractorError("model context must be >= 2")
        self.bos_id = tokenizer.bos_token_id
        if self.bos_id is None:
            self.bos_id = tokenizer.eos_token_id
        if self.bos_id is None:
            raise ExtractorError("tokenizer defines neither BOS nor EOS token")

    @classmethod
    def from_config(cls, cfg: ExtractionConfig) -> "TransformersScorer":
        try:
            from transformers import AutoModelForCausalLM, AutoTokenizer
        except ImportError as exc:
            raise ExtractorError(f"transformers not available: {exc}") from None
        try:
            tokenizer = AutoTokenizer.from_pretrained(cfg.model)
            model = AutoModelForCausalLM.from_pretrained(cfg.model)
        except Exception as exc:
            raise ExtractorError(f"cannot load model {cfg.model!r}: {exc}") from None
        return cls(
            model,
            tokenizer,
            device=cfg.device,
            max_context=cfg.max_context,
            batch_size=cfg.batch_size,
        )

    def encode(self, text: str) -> Encoded:
        enc = self.tokenizer(text, return_offsets_mapping=True, add_special_tokens=False)
        ids = list(enc["input_ids"])
        offsets = [tuple(o) for o in enc["offset_mapping"]]
        tokens = [text[s:e] for s, e in offsets]
        return Encoded(ids=ids, tokens=tokens, offsets=offsets)

    def conditional_logprobs(self, ids: Sequence[int]) -> np.ndarray:
        return self.conditional_logprobs_many([list(ids)])[0]

    def conditional_logprobs_many(self, windows: list[list[int]]) -> list[np.ndarray]:
        """Score windows in right-padded batches of self.batch_size.

        Right padding is safe under causal attention: logits at the real
        positions do not depend on anything after them.
        """
        torch = self._torch
        out: list[np.ndarray] = []
        for i in range(0, len(windows), self.batch_size):
            batch = windows[i : i + self.batch_size]
            for w in batch:
                if len(w) + 1 > self.max_context:
                    raise ExtractorError(
                        f"window of {len(w)} tokens plus BOS exceeds context {self.max_context}"
                    )
            width = 1 + max(len(w) for w in batch)
            inp = torch.full((len(batch), width), self.bos_id, dtype=torch.long)
            mask = torch.zeros((len(batch), width), dtype=torch.long)
            for r, w in enumerate(batch):
                inp[r, 1 : 1 + len(w)] = torch.tensor(w, dtype=torch.long)
                mask[r, : 1 + len(w)] = 1
            with torch.no_grad():
                logits = self.model(inp.to(self.device), attention_mask=mask.to(self.device)).logits
            for r, w in enumerate(batch):
                lp = torch.log_softmax(logits[r, : len(w)].double(), dim=-1)
                gathered = lp[torch.arange(len(w)), torch.tensor(w)]
                out.append(gathered.cpu().numpy())
        return out
