import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textperiod.corpus import (
    CorpusError,
    CorpusPartition,
    SurprisalDocument,
    read_corpus,
    write_corpus,
)


def test_minimal_record_roundtrip(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"doc_id":"a","values":[1.0,2.0,1.5]}\n')
    docs = read_corpus(path)
    assert len(docs) == 1
    assert docs[0].doc_id == "a"
    assert docs[0].n == 3
    np.testing.assert_array_equal(docs[0].values, [1.0, 2.0, 1.5])


def test_boundary_beyond_length_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"doc_id":"b","values":[1.0],"units":{"sentence":[2]}}\n')
    with pytest.raises(CorpusError, match="b"):
        read_corpus(path)


def test_malformed_json_names_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"doc_id":"a","values":[1.0,2.0]}\n{oops\n')
    with pytest.raises(CorpusError, match="line 2"):
        read_corpus(path)


def test_missing_field_names_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"doc_id":"a"}\n')
    with pytest.raises(CorpusError, match="values"):
        read_corpus(path)


def test_nonfinite_values_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"doc_id":"a","values":[1.0, NaN, 2.0]}\n')
    with pytest.raises(CorpusError, match="non-finite"):
        read_corpus(path)


def test_boundaries_must_strictly_increase():
    with pytest.raises(CorpusError, match="strictly increasing"):
        SurprisalDocument("d", np.ones(10), units={"sentence": [3, 3]})


def test_unknown_unit_kind_rejected():
    with pytest.raises(CorpusError, match="unit kind"):
        SurprisalDocument("d", np.ones(10), units={"chapter": [5]})


def test_negative_surprisal_warns_but_passes():
    with pytest.warns(UserWarning, match="negative"):
        doc = SurprisalDocument("d", np.array([1.0, -0.5, 2.0]))
    assert doc.n == 3


def test_count_preservation_on_large_corpus(tmp_path):
    path = tmp_path / "big.jsonl"
    docs = [SurprisalDocument(f"doc-{i:04d}", np.array([1.0, 2.0, 3.0, 4.0])) for i in range(2499)]
    write_corpus(docs, path)
    assert len(read_corpus(path)) == 2499


def test_empty_corpus_roundtrip(tmp_path):
    path = tmp_path / "empty.jsonl"
    write_corpus([], path)
    assert path.read_text() == ""
    assert read_corpus(path) == []


def test_single_doc_single_line(tmp_path):
    path = tmp_path / "one.jsonl"
    write_corpus([SurprisalDocument("x", np.array([0.25]))], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["doc_id"] == "x"


def _random_doc(rng, i):
    n = int(rng.integers(1, 40))
    units = None
    if rng.random() < 0.5 and n >= 2:
        k = int(rng.integers(1, min(n, 5)))
        bounds = rng.choice(np.arange(1, n + 1), size=k, replace=False)
        units = {"sentence": sorted(int(b) for b in bounds)}
    return SurprisalDocument(
        doc_id=f"doc-{i}",
        values=rng.normal(5.0, 2.0, n) ** 2,  # keep non-negative, arbitrary precision
        tokens=[f"tok{j}" for j in range(n)] if rng.random() < 0.5 else None,
        units=units,
    )


def test_roundtrip_100_random_docs_byte_identical(tmp_path, rng):
    docs = [_random_doc(rng, i) for i in range(100)]
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_corpus(docs, p1)
    docs_back = read_corpus(p1)
    assert len(docs_back) == len(docs)
    for d, b in zip(docs, docs_back):
        assert d.doc_id == b.doc_id
        np.testing.assert_array_equal(d.values, b.values)
        assert d.tokens == b.tokens
        assert d.units == b.units
    write_corpus(docs_back, p2)
    assert p1.read_bytes() == p2.read_bytes()


@settings(max_examples=50, deadline=None)
@given(
    values=st.lists(
        st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=64,
    )
)
def test_roundtrip_property(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("rt") / "c.jsonl"
    doc = SurprisalDocument("p", np.array(values))
    write_corpus([doc], path)
    (back,) = read_corpus(path)
    np.testing.assert_array_equal(back.values, doc.values)


def test_partition_nesting_enforced():
    CorpusPartition(frozenset("abc"), frozenset("ab"), frozenset("a"))
    with pytest.raises(ValueError, match="nesting"):
        CorpusPartition(frozenset("ab"), frozenset("a"), frozenset("c"))
