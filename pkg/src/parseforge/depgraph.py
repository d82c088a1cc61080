"""CoNLL-U dependency graphs and (subject, relation, object) tuple extraction."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Sentence
from .errors import ConlluError

SUBJECT_DEPRELS = frozenset({"nsubj", "nsubj:pass", "csubj"})
OBJECT_DEPRELS = frozenset({"obj", "dobj", "iobj", "obl", "attr"})
CLAUSAL_DEPRELS = frozenset({"conj", "ccomp", "advcl", "parataxis"})
CLAUSAL_UPOS = frozenset({"VERB", "AUX"})


@dataclass(frozen=True)
class DepNode:
    """One syntactic word; `head` is a 0-based token index, None for ROOT."""

    token_index: int
    form: str
    lemma: str
    upos: str
    head: int | None
    deprel: str


@dataclass(frozen=True)
class DependencyGraph:
    nodes: tuple[DepNode, ...]

    def children(self) -> list[list[int]]:
        """Adjacency: children[i] lists token indices headed by token i."""
        out: list[list[int]] = [[] for _ in self.nodes]
        for node in self.nodes:
            if node.head is not None:
                out[node.head].append(node.token_index)
        return out


@dataclass(frozen=True)
class KnowledgeTuple:
    subject: str
    relation: str
    object: str
    # Token indices of the subject, relation, and object head tokens.
    provenance: tuple[int, int, int]


def parse_conllu(block: str, sentence: Sentence) -> DependencyGraph:
    """Parse one CoNLL-U sentence block against the sentence it annotates.

    Comment lines are honoured only for the mandatory `# sent_id` check;
    multiword-token ranges (`1-2`) and empty nodes (`1.1`) are skipped.
    """
    sent_id: str | None = None
    rows: list[tuple[int, str, str, str, int, str]] = []
    for raw in block.splitlines():
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment.startswith("sent_id"):
                _, _, value = comment.partition("=")
                sent_id = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(
                f"{_where(sentence)}: expected 10 tab-separated columns, got {len(cols)}: {line!r}"
            )
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            continue  # multiword-token range / empty node
        try:
            idx = int(token_id)
        except ValueError:
            raise ConlluError(f"{_where(sentence)}: bad token id {token_id!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluError(
                f"{_where(sentence)}: bad head {cols[6]!r} for token {token_id}"
            ) from None
        rows.append((idx, cols[1], cols[2], cols[3], head, cols[7]))

    if sent_id is None:
        raise ConlluError(f"{_where(sentence)}: missing '# sent_id' comment")
    doc_part, _, index_part = sent_id.rpartition(":")
    if doc_part != sentence.doc_id or index_part != str(sentence.sent_index):
        raise ConlluError(
            f"{_where(sentence)}: sent_id {sent_id!r} does not match this sentence"
        )

    n = len(sentence.tokens)
    if len(rows) != n:
        raise ConlluError(
            f"{_where(sentence)}: block has {len(rows)} words but sentence has {n} tokens"
        )
    nodes: list[DepNode] = []
    for position, (idx, form, lemma, upos, head, deprel) in enumerate(rows):
        if idx != position + 1:
            raise ConlluError(
                f"{_where(sentence)}: token ids not consecutive (saw {idx} at word {position + 1})"
            )
        expected = sentence.tokens[position].form
        if form != expected:
            raise ConlluError(
                f"{_where(sentence)}: token {position} form {form!r} != sentence form {expected!r}"
            )
        if not 0 <= head <= n:
            raise ConlluError(
                f"{_where(sentence)}: token {position} head {head} out of range 0..{n}"
            )
        nodes.append(
            DepNode(
                token_index=position,
                form=form,
                lemma=lemma,
                upos=upos,
                head=None if head == 0 else head - 1,
                deprel=deprel,
            )
        )
    if not any(node.deprel == "root" for node in nodes):
        raise ConlluError(f"{_where(sentence)}: no token has deprel 'root'")
    _check_acyclic(nodes, sentence)
    return DependencyGraph(nodes=tuple(nodes))


def _where(sentence: Sentence) -> str:
    return f"{sentence.doc_id}:{sentence.sent_index}"


def _check_acyclic(nodes: list[DepNode], sentence: Sentence) -> None:
    state = [0] * len(nodes)  # 0 unvisited, 1 on current path, 2 done
    for start in range(len(nodes)):
        path = []
        i: int | None = start
        while i is not None and state[i] == 0:
            state[i] = 1
            path.append(i)
            i = nodes[i].head
        if i is not None and state[i] == 1:
            raise ConlluError(f"{_where(sentence)}: head cycle through token {i}")
        for j in path:
            state[j] = 2


def serialize_conllu(graph: DependencyGraph, sentence: Sentence) -> str:
    """Emit the graph as a CoNLL-U block (with sent_id and text comments)."""
    lines = [
        f"# sent_id = {sentence.doc_id}:{sentence.sent_index}",
        f"# text = {sentence.text}",
    ]
    for node in graph.nodes:
        head = 0 if node.head is None else node.head + 1
        lines.append(
            "\t".join(
                (
                    str(node.token_index + 1),
                    node.form,
                    node.lemma or "_",
                    node.upos or "_",
                    "_",
                    "_",
                    str(head),
                    node.deprel,
                    "_",
                    "_",
                )
            )
        )
    return "\n".join(lines) + "\n"


def _subtree_span(graph: DependencyGraph, head: int) -> tuple[int, int]:
    """Projective span of `head`'s subtree, trimmed of punctuation nodes."""
    children = graph.children()
    members: list[int] = []
    stack = [head]
    while stack:
        i = stack.pop()
        members.append(i)
        stack.extend(children[i])
    kept = [i for i in members if graph.nodes[i].deprel != "punct" or i == head]
    return (min(kept), max(kept) + 1)


def _field_text(
    graph: DependencyGraph, sentence: Sentence, head: int, span_mode: str
) -> str:
    if span_mode == "head-token":
        return graph.nodes[head].form
    start, end = _subtree_span(graph, head)
    return sentence.token_bytes(start, end)


def extract_tuples(
    graph: DependencyGraph,
    sentence: Sentence,
    span_mode: str = "head-token",
    clausal_predicates: bool = True,
    expand_conjuncts: bool = False,
    subject_deprels: frozenset[str] = SUBJECT_DEPRELS,
    object_deprels: frozenset[str] = OBJECT_DEPRELS,
) -> list[KnowledgeTuple]:
    """Extract (subject, relation, object) tuples from one dependency graph.

    Predicates are the "root" token(s) plus, when `clausal_predicates` is on,
    verbal heads attached by conj/ccomp/advcl/parataxis. Every subject x
    object pairing under a predicate yields one tuple, ordered by
    (predicate, subject, object) token index. `span_mode` controls whether
    subject/object render as the bare head token or its subtree span; the
    relation is always the predicate's own form. `expand_conjuncts`
    additionally pairs conjuncts of each subject/object with the same
    predicate.
    """
    if span_mode not in ("head-token", "subtree"):
        raise ValueError(f"unknown span_mode {span_mode!r}")
    children = graph.children()

    predicates = [n.token_index for n in graph.nodes if n.deprel == "root"]
    if clausal_predicates:
        predicates += [
            n.token_index
            for n in graph.nodes
            if n.deprel in CLAUSAL_DEPRELS and n.upos in CLAUSAL_UPOS
        ]
    predicates = sorted(set(predicates))

    def dependents(head: int, deprels: frozenset[str]) -> list[tuple[int, bool]]:
        base = [i for i in children[head] if graph.nodes[i].deprel in deprels]
        found = [(i, False) for i in base]
        if expand_conjuncts:
            for i in base:
                found += [
                    (j, True) for j in children[i] if graph.nodes[j].deprel == "conj"
                ]
        return sorted(found)

    tuples: list[KnowledgeTuple] = []
    for p in predicates:
        subjects = dependents(p, subject_deprels)
        objects = dependents(p, object_deprels)
        for s, s_expanded in subjects:
            for o, o_expanded in objects:
                if not s_expanded:
                    assert graph.nodes[s].head == p
                if not o_expanded:
                    assert graph.nodes[o].head == p
                tuples.append(
                    KnowledgeTuple(
                        subject=_field_text(graph, sentence, s, span_mode),
                        relation=graph.nodes[p].form,
                        object=_field_text(graph, sentence, o, span_mode),
                        provenance=(s, p, o),
                    )
                )
    return tuples


def serialize_tuples(tuples: list[KnowledgeTuple]) -> str:
    """Canonical "(subject, relation, object)" list; "(none)" when empty."""
    if not tuples:
        return "(none)"
    return "; ".join(f"({t.subject}, {t.relation}, {t.object})" for t in tuples)
