"""Small builders shared across test modules."""

from __future__ import annotations

import json

from parseforge.corpus import Document, Sentence, attach_sentences


def make_sentence(
    text: str,
    forms: list[str] | None = None,
    doc_id: str = "d0",
    sent_index: int = 0,
) -> Sentence:
    """Build one aligned Sentence from raw text (default: whitespace forms)."""
    if forms is None:
        forms = text.split()
    sentence = attach_sentences(Document(doc_id=doc_id, text=text), [forms])[0]
    if sent_index != 0:
        sentence = Sentence(
            doc_id=sentence.doc_id,
            sent_index=sent_index,
            text=sentence.text,
            tokens=sentence.tokens,
            doc_start=sentence.doc_start,
        )
    return sentence


def write_jsonl(path, records) -> None:
    text = "\n".join(json.dumps(r, ensure_ascii=False) for r in records)
    path.write_text(text + "\n", encoding="utf-8")


def brute_lcs(a: list[str], b: list[str]) -> int:
    """Exponential LCS oracle: enumerate subsequences by decreasing length.

    Deliberately shares no machinery with the scorer's bit-parallel row
    recurrence; only usable for short lists.
    """
    import itertools

    if len(a) > len(b):
        a, b = b, a

    def is_subsequence(sub, seq) -> bool:
        it = iter(seq)
        return all(x in it for x in sub)

    for length in range(len(a), 0, -1):
        for combo in itertools.combinations(a, length):
            if is_subsequence(combo, b):
                return length
    return 0


def conllu_block(doc_id, sent_index, rows, text=None) -> str:
    """Render rows of (form, lemma, upos, head, deprel) as one CoNLL-U block."""
    lines = [f"# sent_id = {doc_id}:{sent_index}"]
    if text is not None:
        lines.append(f"# text = {text}")
    for i, (form, lemma, upos, head, deprel) in enumerate(rows, start=1):
        lines.append(
            "\t".join((str(i), form, lemma, upos, "_", "_", str(head), deprel, "_", "_"))
        )
    return "\n".join(lines) + "\n"
