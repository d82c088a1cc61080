"""Drive a parser backend over a corpus and write the interchange files.

Outputs, all in `out_dir`:

- ``annotations.conllu`` — one block per sentence with ``# sent_id =
  <doc_id>:<sent_index>`` and ``# text`` comments;
- ``annotations.trees`` — one bracketed tree per line, line-aligned with the
  CoNLL-U blocks;
- ``manifest.jsonl`` — a run record (corpus digest, backend, model names)
  followed by one record per document with its sentence count.

Documents are parsed in parallel; files are written sequentially in corpus
order so reruns are byte-stable.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass

from . import __version__ as _version
from .base import ParsedSentence

_PARAGRAPH = re.compile(r"\n\s*\n")

CONLLU_NAME = "annotations.conllu"
TREES_NAME = "annotations.trees"
MANIFEST_NAME = "manifest.jsonl"


class ExportError(Exception):
    """Bad corpus input or a backend that cannot be constructed."""


@dataclass(frozen=True)
class DocumentResult:
    doc_id: str
    sentences: list[ParsedSentence]
    empty: bool


def read_corpus(path: str) -> list[tuple[str, str]]:
    """(doc_id, text) pairs from a JSON-lines corpus file."""
    docs: list[tuple[str, str]] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ExportError(f"{path}:{lineno}: not valid JSON: {exc}") from exc
            doc_id, text = record.get("id"), record.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise ExportError(f"{path}:{lineno}: missing or empty `id` field")
            if not isinstance(text, str):
                raise ExportError(f"{path}:{lineno}: `text` must be a string")
            if doc_id in seen:
                raise ExportError(f"{path}:{lineno}: duplicate document id {doc_id!r}")
            seen.add(doc_id)
            docs.append((doc_id, text))
    if not docs:
        raise ExportError(f"{path}: corpus contains no documents")
    return docs


def chunk_text(text: str, max_chars: int) -> list[str]:
    """Split on paragraph boundaries so no chunk exceeds max_chars.

    A single paragraph longer than the limit is split at the last whitespace
    before it; the concatenation of the chunks is always the original text.
    """
    if max_chars <= 0:
        raise ExportError(f"max_chars must be positive, got {max_chars}")
    if len(text) <= max_chars:
        return [text]
    pieces: list[str] = []
    boundaries = [gap.end() for gap in _PARAGRAPH.finditer(text)] + [len(text)]
    start = 0
    cursor = 0
    for boundary in boundaries:
        if boundary - start > max_chars and cursor > start:
            pieces.append(text[start:cursor])
            start = cursor
        cursor = boundary
    pieces.append(text[start:])
    split: list[str] = []
    for piece in pieces:
        while len(piece) > max_chars:
            cut = piece.rfind(" ", 1, max_chars)
            if cut <= 0:
                cut = max_chars
            split.append(piece[:cut])
            piece = piece[cut:]
        split.append(piece)
    return [p for p in split if p]


_worker_backend = None


def _make_backend(name: str, dep_model: str, const_model: str):
    if name == "rule":
        from .rule_backend import RuleBackend

        return RuleBackend(dep_model, const_model)
    if name == "spacy":
        from .spacy_backend import BackendUnavailable, SpacyBackend

        try:
            return SpacyBackend(dep_model, const_model)
        except BackendUnavailable as exc:
            raise ExportError(str(exc)) from exc
    raise ExportError(f"unknown backend {name!r}")


def _worker_init(name: str, dep_model: str, const_model: str) -> None:
    global _worker_backend
    _worker_backend = _make_backend(name, dep_model, const_model)


def _parse_document(payload: tuple[str, str, int]) -> DocumentResult:
    doc_id, text, max_chars = payload
    if not text.strip():
        return DocumentResult(doc_id, [], empty=True)
    sentences: list[ParsedSentence] = []
    for chunk in chunk_text(text, max_chars):
        sentences.extend(_worker_backend.parse(chunk))
    return DocumentResult(doc_id, sentences, empty=False)


def _conllu_block(doc_id: str, index: int, sent: ParsedSentence) -> str:
    lines = [f"# sent_id = {doc_id}:{index}", f"# text = {sent.text}"]
    for i, form in enumerate(sent.forms):
        lines.append(
            "\t".join(
                [
                    str(i + 1),
                    form,
                    sent.lemmas[i],
                    sent.upos[i],
                    "_",
                    "_",
                    str(sent.heads[i]),
                    sent.deprels[i],
                    "_",
                    "_",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(path) or "."
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=directory, suffix=".tmp", delete=False
    )
    try:
        with handle:
            handle.write(payload)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise


def export_annotations(
    corpus_path: str,
    out_dir: str,
    backend: str = "spacy",
    dep_model: str | None = None,
    const_model: str | None = None,
    max_chars: int = 20000,
    workers: int | None = None,
) -> list[dict]:
    """Parse every document and write the three interchange files.

    Returns the manifest records.  Documents with only whitespace yield zero
    blocks; they are warned about and recorded in the manifest.
    """
    defaults = {
        "spacy": ("en_core_web_trf", "benepar_en3"),
        "rule": ("rule", "rule"),
    }.get(backend, (None, None))
    if defaults == (None, None):
        raise ExportError(f"unknown backend {backend!r}")
    dep_model = dep_model or defaults[0]
    const_model = const_model or defaults[1]

    docs = read_corpus(corpus_path)
    payloads = [(doc_id, text, max_chars) for doc_id, text in docs]
    workers = workers if workers is not None else os.cpu_count() or 1
    if workers < 1:
        raise ExportError(f"workers must be >= 1, got {workers}")

    if workers > 1 and len(payloads) > 1 and backend == "rule":
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=workers,
            initializer=_worker_init,
            initargs=(backend, dep_model, const_model),
        ) as pool:
            results = list(pool.map(_parse_document, payloads, chunksize=4))
    else:
        # The transformer backend keeps one model in-process; documents are
        # still batched through it in corpus order.
        _worker_init(backend, dep_model, const_model)
        results = [_parse_document(p) for p in payloads]

    conllu_parts: list[str] = []
    tree_lines: list[str] = []
    doc_records: list[dict] = []
    for result in results:
        for index, sent in enumerate(result.sentences):
            conllu_parts.append(_conllu_block(result.doc_id, index, sent))
            tree_lines.append(sent.tree)
        record = {"doc_id": result.doc_id, "sentences": len(result.sentences)}
        if not result.sentences:
            record["note"] = "empty document: no annotations emitted"
            print(f"warning: {result.doc_id}: no sentences, skipped", file=sys.stderr)
        doc_records.append(record)

    os.makedirs(out_dir, exist_ok=True)
    _atomic_write(os.path.join(out_dir, CONLLU_NAME), "\n".join(conllu_parts))
    _atomic_write(
        os.path.join(out_dir, TREES_NAME),
        "".join(line + "\n" for line in tree_lines),
    )
    header = {
        "tool": "annotate-export",
        "version": _version,
        "backend": backend,
        "dep_model": dep_model,
        "const_model": const_model,
        "corpus_sha256": _sha256(corpus_path),
    }
    manifest = [header] + doc_records
    _atomic_write(
        os.path.join(out_dir, MANIFEST_NAME),
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in manifest),
    )
    return manifest
