from __future__ import annotations

import pytest

from helpers import write_jsonl
from parseforge.corpus import Document, attach_sentences, load_corpus, load_qa
from parseforge.errors import AlignmentError, CorpusError


def test_load_corpus_reads_documents_in_order(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_jsonl(
        path,
        [
            {"id": "a", "text": "First doc."},
            {"id": "b", "text": "Second doc.", "meta": {"source": "unit"}},
        ],
    )
    docs = load_corpus(str(path))
    assert [d.doc_id for d in docs] == ["a", "b"]
    assert docs[0].text == "First doc."
    assert docs[1].meta == {"source": "unit"}


def test_load_corpus_rejects_duplicate_ids(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_jsonl(path, [{"id": "a", "text": "x"}, {"id": "a", "text": "y"}])
    with pytest.raises(CorpusError, match="duplicate"):
        load_corpus(str(path))


def test_load_corpus_reports_line_number_for_bad_json(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text('{"id": "a", "text": "x"}\nnot json\n', encoding="utf-8")
    with pytest.raises(CorpusError, match=":2:"):
        load_corpus(str(path))


def test_load_corpus_requires_string_fields(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_jsonl(path, [{"id": "a", "text": 7}])
    with pytest.raises(CorpusError):
        load_corpus(str(path))


def test_load_corpus_rejects_non_flat_meta(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_jsonl(path, [{"id": "a", "text": "x", "meta": {"k": 1}}])
    with pytest.raises(CorpusError, match="meta"):
        load_corpus(str(path))


def test_load_corpus_empty_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text("", encoding="utf-8")
    with pytest.raises(CorpusError, match="empty"):
        load_corpus(str(path))
    assert load_corpus(str(path), allow_empty=True) == []


def test_attach_sentences_offsets_are_sentence_relative():
    doc = Document(doc_id="d", text="Hi. Bye.")
    first, second = attach_sentences(doc, [["Hi", "."], ["Bye", "."]])
    assert first.text == "Hi."
    assert [(t.char_start, t.char_end) for t in first.tokens] == [(0, 2), (2, 3)]
    assert second.text == "Bye."
    assert second.doc_start == 4
    assert [(t.char_start, t.char_end) for t in second.tokens] == [(0, 3), (3, 4)]
    # Document-absolute byte positions come from doc_start + relative offset.
    absolute = [
        (second.doc_start + t.char_start, second.doc_start + t.char_end)
        for t in second.tokens
    ]
    assert absolute == [(4, 7), (7, 8)]


def test_attach_sentences_offsets_are_bytes_not_chars():
    doc = Document(doc_id="d", text="Zoé mange.")
    (sent,) = attach_sentences(doc, [["Zoé", "mange", "."]])
    zoe = sent.tokens[0]
    assert (zoe.char_start, zoe.char_end) == (0, 4)  # é is two UTF-8 bytes
    assert sent.token_bytes(0, 1) == "Zoé"
    assert sent.token_bytes(0, 2) == "Zoé mange"


def test_attach_sentences_missing_form_is_an_error():
    doc = Document(doc_id="d", text="Hi there.")
    with pytest.raises(AlignmentError, match="'absent'"):
        attach_sentences(doc, [["Hi", "absent", "."]])


def test_attach_sentences_rejects_uncovered_text_between_sentences():
    doc = Document(doc_id="d", text="Hi. xx Bye.")
    with pytest.raises(AlignmentError, match="uncovered"):
        attach_sentences(doc, [["Hi", "."], ["Bye", "."]])


def test_attach_sentences_rejects_trailing_junk():
    doc = Document(doc_id="d", text="Hi. zz")
    with pytest.raises(AlignmentError, match="after the last sentence"):
        attach_sentences(doc, [["Hi", "."]])


def test_attach_sentences_allows_whitespace_gaps():
    doc = Document(doc_id="d", text="  Hi.\n\n  Bye.  ")
    first, second = attach_sentences(doc, [["Hi", "."], ["Bye", "."]])
    assert first.text == "Hi."
    assert second.text == "Bye."


def test_load_qa_checks_known_doc_ids(tmp_path):
    path = tmp_path / "qa.jsonl"
    write_jsonl(path, [{"doc_id": "a", "question": "Q?", "answer": "A."}])
    (record,) = load_qa(str(path), known_doc_ids={"a"})
    assert record.reference_answer == "A."
    with pytest.raises(CorpusError, match="unknown doc_id"):
        load_qa(str(path), known_doc_ids={"b"})


def test_load_qa_missing_field(tmp_path):
    path = tmp_path / "qa.jsonl"
    write_jsonl(path, [{"doc_id": "a", "question": "Q?"}])
    with pytest.raises(CorpusError, match="answer"):
        load_qa(str(path))
