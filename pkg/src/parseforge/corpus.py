"""Corpus registry: documents, sentences, and tokens with byte-offset alignment.

Documents are read from line-delimited JSON records. Sentence and token
boundaries are never computed here; they arrive from annotation files and are
aligned against the raw document text, so the annotations and the corpus share
one source of truth.

All offsets are byte offsets into the UTF-8 encoding of the text they index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import AlignmentError, CorpusError

__all__ = [
    "Document",
    "Token",
    "Sentence",
    "QARecord",
    "load_corpus",
    "load_qa",
    "attach_sentences",
]


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    meta: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Token:
    """One surface token; char_start/char_end are byte offsets into the
    UTF-8 encoding of the owning sentence's text."""

    index: int
    form: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sent_index: int
    text: str
    tokens: tuple[Token, ...]
    # Byte offset of this sentence's first byte within the document text;
    # doc_start + token.char_start gives document-absolute positions.
    doc_start: int = 0

    def token_bytes(self, start: int, end: int) -> str:
        """Surface text of tokens[start:end], with original spacing."""
        raw = self.text.encode("utf-8")
        return raw[self.tokens[start].char_start : self.tokens[end - 1].char_end].decode("utf-8")


@dataclass(frozen=True)
class QARecord:
    doc_id: str
    question: str
    reference_answer: str


def _parse_record(line: str, lineno: int, path: str) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}:{lineno}: not valid JSON: {exc}") from None
    if not isinstance(record, dict):
        raise CorpusError(f"{path}:{lineno}: record is not an object")
    return record


def load_corpus(path: str, allow_empty: bool = False) -> list[Document]:
    """Read a line-delimited corpus file into Documents, in file order.

    Each record needs string fields `id` and `text` and may carry a flat
    string-to-string `meta` map. Duplicate ids and empty files are errors;
    `allow_empty=True` permits a file with zero records (used by `stats`).
    """
    docs: list[Document] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_record(line, lineno, path)
            doc_id = record.get("id")
            text = record.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise CorpusError(f"{path}:{lineno}: missing or empty `id` field")
            if not isinstance(text, str) or not text.strip():
                raise CorpusError(f"{path}:{lineno}: missing or blank `text` field")
            if doc_id in seen:
                raise CorpusError(f"{path}:{lineno}: duplicate doc_id {doc_id!r}")
            meta = record.get("meta", {})
            if not isinstance(meta, dict) or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in meta.items()
            ):
                raise CorpusError(f"{path}:{lineno}: `meta` must be a flat string map")
            seen.add(doc_id)
            docs.append(Document(doc_id=doc_id, text=text, meta=dict(meta)))
    if not docs and not allow_empty:
        raise CorpusError(f"{path}: empty corpus file")
    return docs


def load_qa(path: str, known_doc_ids: set[str] | None = None) -> list[QARecord]:
    """Read line-delimited QA records {doc_id, question, answer}."""
    records: list[QARecord] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            record = _parse_record(line, lineno, path)
            try:
                doc_id = record["doc_id"]
                question = record["question"]
                answer = record["answer"]
            except KeyError as exc:
                raise CorpusError(f"{path}:{lineno}: missing field {exc.args[0]!r}") from None
            if known_doc_ids is not None and doc_id not in known_doc_ids:
                raise CorpusError(f"{path}:{lineno}: unknown doc_id {doc_id!r}")
            records.append(QARecord(doc_id=doc_id, question=question, reference_answer=answer))
    return records


def attach_sentences(doc: Document, segmentation: list[list[str]]) -> list[Sentence]:
    """Align annotation-supplied token forms against the raw document text.

    `segmentation` holds, per sentence, the token forms in document order.
    Each form is located at or after the running cursor in the document's
    UTF-8 bytes; a form that cannot be found is an alignment error. The
    resulting sentence texts must cover all non-whitespace document content
    (gaps before, between, and after sentences are whitespace only).
    """
    raw = doc.text.encode("utf-8")
    cursor = 0
    prev_end = 0
    sentences: list[Sentence] = []
    for sent_index, forms in enumerate(segmentation):
        if not forms:
            raise AlignmentError(f"doc {doc.doc_id!r} sentence {sent_index}: empty token list")
        spans: list[tuple[int, int]] = []
        for tok_index, form in enumerate(forms):
            needle = form.encode("utf-8")
            if not needle:
                raise AlignmentError(
                    f"doc {doc.doc_id!r} sentence {sent_index} token {tok_index}: empty form"
                )
            pos = raw.find(needle, cursor)
            if pos < 0:
                raise AlignmentError(
                    f"doc {doc.doc_id!r} sentence {sent_index} token {tok_index}: "
                    f"form {form!r} not found at/after byte {cursor}"
                )
            spans.append((pos, pos + len(needle)))
            cursor = pos + len(needle)
        sent_start, sent_end = spans[0][0], spans[-1][1]
        if raw[prev_end:sent_start].decode("utf-8").strip():
            raise AlignmentError(
                f"doc {doc.doc_id!r} sentence {sent_index}: uncovered non-whitespace "
                f"content before sentence start (byte {sent_start})"
            )
        text = raw[sent_start:sent_end].decode("utf-8")
        tokens = tuple(
            Token(index=i, form=form, char_start=start - sent_start, char_end=end - sent_start)
            for i, (form, (start, end)) in enumerate(zip(forms, spans))
        )
        sentences.append(
            Sentence(
                doc_id=doc.doc_id,
                sent_index=sent_index,
                text=text,
                tokens=tokens,
                doc_start=sent_start,
            )
        )
        prev_end = sent_end
    if raw[prev_end:].decode("utf-8").strip():
        raise AlignmentError(
            f"doc {doc.doc_id!r}: non-whitespace content after the last sentence "
            f"(byte {prev_end})"
        )
    return sentences
