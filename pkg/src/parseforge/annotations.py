"""Load dependency/constituency annotation files and align them to a corpus.

The CoNLL-U file, when present, is the segmentation authority: its
`# sent_id = <doc_id>:<sent_index>` comments map blocks to documents. With
only a tree file, sentences are assigned to documents greedily: lines fill
the current document until its remaining text is whitespace, then the next
document starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Document, Sentence, attach_sentences
from .depgraph import DependencyGraph, parse_conllu
from .errors import AlignmentError, ConlluError, DataError, TreeError
from .treebank import ConstituencyTree, leaf_forms, parse_bracketed


@dataclass(frozen=True)
class Violation:
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


@dataclass
class AnnotatedCorpus:
    documents: list[Document]
    # doc_id -> sentences; empty when no annotation file provided.
    sentences: dict[str, list[Sentence]] = field(default_factory=dict)
    graphs: dict[tuple[str, int], DependencyGraph] = field(default_factory=dict)
    trees: dict[tuple[str, int], ConstituencyTree] = field(default_factory=dict)

    def sentence_order(self) -> list[Sentence]:
        """All sentences in canonical corpus order (doc order, sent_index)."""
        out: list[Sentence] = []
        for doc in self.documents:
            out.extend(self.sentences.get(doc.doc_id, []))
        return out


def _read_conllu_blocks(path: str) -> list[tuple[int, str]]:
    """Split a CoNLL-U file into (starting line number, block text) pairs."""
    blocks: list[tuple[int, str]] = []
    current: list[str] = []
    start = 1
    with open(path, encoding="utf-8") as handle:
        lineno = 0
        for lineno, line in enumerate(handle, start=1):
            if line.strip():
                if not current:
                    start = lineno
                current.append(line)
            elif current:
                blocks.append((start, "".join(current)))
                current = []
    if current:
        blocks.append((start, "".join(current)))
    return blocks


def _block_identity(block: str) -> tuple[str, int] | None:
    """Pull (doc_id, sent_index) out of a block's sent_id comment, if any."""
    for line in block.splitlines():
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment.startswith("sent_id"):
                _, _, value = comment.partition("=")
                doc_id, _, index = value.strip().rpartition(":")
                if not doc_id:
                    return None
                try:
                    return doc_id, int(index)
                except ValueError:
                    return None
    return None


def _block_forms(block: str) -> list[str]:
    forms: list[str] = []
    for line in block.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"expected 10 tab-separated columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue
        forms.append(cols[1])
    return forms


def _read_tree_lines(path: str) -> list[tuple[int, str]]:
    lines: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if line.strip():
                lines.append((lineno, line.strip()))
    return lines


def load_annotations(
    documents: list[Document],
    conllu_path: str | None = None,
    trees_path: str | None = None,
) -> tuple[AnnotatedCorpus, list[Violation]]:
    """Build the aligned view of a corpus plus its annotation files.

    Returns the (possibly partial) annotated corpus and every violation
    found; callers that need hard failure check the violation list.
    """
    corpus = AnnotatedCorpus(documents=list(documents))
    violations: list[Violation] = []
    doc_by_id = {doc.doc_id: doc for doc in documents}

    if conllu_path is not None:
        _load_conllu(corpus, violations, doc_by_id, conllu_path)
        if trees_path is not None:
            _load_trees_aligned(corpus, violations, trees_path)
    elif trees_path is not None:
        _load_trees_greedy(corpus, violations, trees_path)
    return corpus, violations


def _load_conllu(
    corpus: AnnotatedCorpus,
    violations: list[Violation],
    doc_by_id: dict[str, Document],
    path: str,
) -> None:
    blocks = _read_conllu_blocks(path)
    if not blocks:
        violations.append(Violation(f"{path}", "no sentence blocks found"))
        return

    # Group consecutive blocks by document, checking canonical order.
    per_doc: dict[str, list[tuple[int, int, str]]] = {}
    doc_sequence: list[str] = []
    for lineno, block in blocks:
        identity = _block_identity(block)
        if identity is None:
            violations.append(
                Violation(f"{path}:{lineno}", "missing or malformed '# sent_id = <doc_id>:<index>'")
            )
            return
        doc_id, sent_index = identity
        if doc_id not in doc_by_id:
            violations.append(
                Violation(f"{path}:{lineno}", f"sent_id names unknown document {doc_id!r}")
            )
            return
        if not doc_sequence or doc_sequence[-1] != doc_id:
            if doc_id in per_doc:
                violations.append(
                    Violation(f"{path}:{lineno}", f"blocks for document {doc_id!r} are not contiguous")
                )
                return
            doc_sequence.append(doc_id)
            per_doc[doc_id] = []
        expected_index = len(per_doc[doc_id])
        if sent_index != expected_index:
            violations.append(
                Violation(
                    f"{path}:{lineno}",
                    f"sent_id index {sent_index} out of order (expected {expected_index})",
                )
            )
            return
        per_doc[doc_id].append((lineno, sent_index, block))

    corpus_order = [doc.doc_id for doc in corpus.documents if doc_by_id[doc.doc_id].text.strip()]
    annotated_order = doc_sequence
    if annotated_order != corpus_order:
        violations.append(
            Violation(
                path,
                "document order does not match the corpus "
                f"(corpus: {corpus_order[:5]}..., file: {annotated_order[:5]}...)",
            )
        )
        return

    for doc_id in doc_sequence:
        doc = doc_by_id[doc_id]
        entries = per_doc[doc_id]
        try:
            segmentation = [_block_forms(block) for _, _, block in entries]
        except ConlluError as exc:
            violations.append(Violation(f"{path} (doc {doc_id!r})", str(exc)))
            continue
        try:
            sentences = attach_sentences(doc, segmentation)
        except AlignmentError as exc:
            violations.append(Violation(path, str(exc)))
            continue
        corpus.sentences[doc_id] = sentences
        for (lineno, sent_index, block), sentence in zip(entries, sentences):
            try:
                corpus.graphs[(doc_id, sent_index)] = parse_conllu(block, sentence)
            except ConlluError as exc:
                violations.append(Violation(f"{path}:{lineno}", str(exc)))


def _load_trees_aligned(
    corpus: AnnotatedCorpus, violations: list[Violation], path: str
) -> None:
    """Tree lines map 1:1 onto the sentence order the CoNLL-U file defined."""
    lines = _read_tree_lines(path)
    order = corpus.sentence_order()
    if len(lines) != len(order):
        where = path
        if len(lines) > len(order):
            where = f"{path}:{lines[len(order)][0]}"
        violations.append(
            Violation(
                where,
                f"{len(lines)} tree lines but corpus has {len(order)} sentences",
            )
        )
        return
    for (lineno, line), sentence in zip(lines, order):
        try:
            tree = parse_bracketed(line, sentence)
        except TreeError as exc:
            violations.append(Violation(f"{path}:{lineno}", str(exc)))
            continue
        corpus.trees[(sentence.doc_id, sentence.sent_index)] = tree


def _load_trees_greedy(
    corpus: AnnotatedCorpus, violations: list[Violation], path: str
) -> None:
    """Without CoNLL-U, tree lines define the segmentation themselves."""
    lines = _read_tree_lines(path)
    cursor = 0
    for doc in corpus.documents:
        raw = doc.text.encode("utf-8")
        segmentation: list[list[str]] = []
        tail = 0
        while raw[tail:].decode("utf-8").strip():
            if cursor >= len(lines):
                violations.append(
                    Violation(
                        path,
                        f"ran out of tree lines inside document {doc.doc_id!r}",
                    )
                )
                return
            lineno, line = lines[cursor]
            try:
                forms = leaf_forms(line)
            except TreeError as exc:
                violations.append(Violation(f"{path}:{lineno}", str(exc)))
                return
            pos = tail
            for form in forms:
                needle = form.encode("utf-8")
                found = raw.find(needle, pos)
                if found < 0:
                    violations.append(
                        Violation(
                            f"{path}:{lineno}",
                            f"leaf {form!r} not found in document {doc.doc_id!r} "
                            f"at/after byte {pos}",
                        )
                    )
                    return
                pos = found + len(needle)
            segmentation.append(forms)
            tail = pos
            cursor += 1
        try:
            sentences = attach_sentences(doc, segmentation)
        except AlignmentError as exc:
            violations.append(Violation(path, str(exc)))
            return
        corpus.sentences[doc.doc_id] = sentences
        for sentence in sentences:
            lineno, line = lines[cursor - len(sentences) + sentence.sent_index]
            try:
                tree = parse_bracketed(line, sentence)
            except TreeError as exc:
                violations.append(Violation(f"{path}:{lineno}", str(exc)))
                continue
            corpus.trees[(doc.doc_id, sentence.sent_index)] = tree
    if cursor < len(lines):
        violations.append(
            Violation(
                f"{path}:{lines[cursor][0]}",
                f"{len(lines) - cursor} tree lines left over after the last document",
            )
        )


def require_clean(violations: list[Violation]) -> None:
    """Raise if any violations were collected (used by forge before writing)."""
    if violations:
        raise DataError(
            f"{len(violations)} validation violation(s); first: {violations[0]}"
        )
