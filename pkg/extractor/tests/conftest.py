"""Fixtures: deterministic toy scorers and a locally built tiny causal LM.

The sandbox has no model-hub access, so the transformers adapter is
exercised with a randomly initialized (seeded) miniature GPT-2 plus a
word-level tokenizer constructed in process. The scoring contracts under
test (forced-decode agreement, ln 2 arithmetic, reader round-trips) do
not depend on the model being trained.
"""
import numpy as np
import pytest

from surprisal_extractor.scoring import Encoded

VOCAB_WORDS = [f"w{i}" for i in range(48)]


def _whitespace_encode(text, word_to_id):
    ids, tokens, offsets = [], [], []
    pos = 0
    for word in text.split():
        start = text.index(word, pos)
        end = start + len(word)
        pos = end
        ids.append(word_to_id[word])
        tokens.append(word)
        offsets.append((start, end))
    return Encoded(ids=ids, tokens=tokens, offsets=offsets)


class BigramScorer:
    """Exact conditional probabilities from explicit tables."""

    def __init__(self, vocab, bos_probs, bigram_probs, max_context=4096):
        self.vocab = list(vocab)
        self.word_to_id = {w: i for i, w in enumerate(self.vocab)}
        self.bos_probs = bos_probs
        self.bigram_probs = bigram_probs
        self.max_context = max_context

    def encode(self, text):
        return _whitespace_encode(text, self.word_to_id)

    def conditional_logprobs(self, ids):
        out = np.empty(len(ids))
        for j, tid in enumerate(ids):
            word = self.vocab[tid]
            if j == 0:
                p = self.bos_probs[word]
            else:
                p = self.bigram_probs[(self.vocab[ids[j - 1]], word)]
            out[j] = np.log(p)
        return out


class ToyScorer:
    """Prefix-sensitive scorer: scores depend on position and window content,
    so sliding-window truncation is observable."""

    def __init__(self, max_context=8):
        self.max_context = max_context
        self.vocab = list("abcd")
        self.word_to_id = {w: i for i, w in enumerate(self.vocab)}

    def encode(self, text):
        return _whitespace_encode(text, self.word_to_id)

    def conditional_logprobs(self, ids):
        ids = list(ids)
        return np.array(
            [
                -(0.5 + 0.05 * j + 0.01 * ids[j] + 0.003 * sum(ids[:j]))
                for j in range(len(ids))
            ]
        )


@pytest.fixture
def toy_scorer():
    return ToyScorer()


@pytest.fixture
def coin_scorer():
    # "x y": the model assigns p = 0.5 to y following x
    return BigramScorer(
        vocab=["x", "y"],
        bos_probs={"x": 1.0, "y": 1.0},
        bigram_probs={("x", "y"): 0.5, ("x", "x"): 0.5, ("y", "x"): 0.25, ("y", "y"): 0.75},
    )


@pytest.fixture(scope="session")
def tiny_scorer():
    torch = pytest.importorskip("torch")
    tokenizers = pytest.importorskip("tokenizers")
    transformers = pytest.importorskip("transformers")
    from surprisal_extractor.hf import TransformersScorer

    vocab = {"<bos>": 0, "<unk>": 1}
    for w in VOCAB_WORDS:
        vocab[w] = len(vocab)
    tok = tokenizers.Tokenizer(tokenizers.models.WordLevel(vocab, unk_token="<unk>"))
    tok.pre_tokenizer = tokenizers.pre_tokenizers.WhitespaceSplit()
    fast = transformers.PreTrainedTokenizerFast(
        tokenizer_object=tok, bos_token="<bos>", unk_token="<unk>"
    )
    torch.manual_seed(1234)
    config = transformers.GPT2Config(
        vocab_size=len(vocab),
        n_positions=64,
        n_embd=32,
        n_layer=2,
        n_head=2,
        bos_token_id=0,
        eos_token_id=0,
    )
    model = transformers.GPT2LMHeadModel(config)
    return TransformersScorer(model, fast, device="cpu")


@pytest.fixture(scope="session")
def mini_corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("minicorpus")
    rng = np.random.default_rng(5)
    for i in range(20):
        n = int(rng.integers(20, 120))  # some exceed the tiny model's context
        words = rng.choice(VOCAB_WORDS, size=n)
        (d / f"doc-{i:02d}.txt").write_text(" ".join(words), encoding="utf-8")
    return d
