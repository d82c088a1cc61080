"""Build task-tagged (user_query, response) training examples.

Five objectives: raw next-token chunks (NTP), masked token (MTP), masked
phrase (MPP), and the two knowledge-tuple directions (NL2KG, KG2NL).
Random choices are driven entirely by per-example seeds derived from
(master_seed, doc_id, sent_index, task, draw), so output is independent
of traversal order and parallelism.
"""

from __future__ import annotations

import enum
import hashlib
import random
import re
from dataclasses import dataclass

from .annotations import AnnotatedCorpus
from .corpus import Document, Sentence
from .depgraph import KnowledgeTuple, extract_tuples, serialize_tuples
from .errors import DataError
from .treebank import DEFAULT_PHRASE_LABELS, Phrase, extract_phrases

MASK = "<mask>"
MTP_PREFIX = "Complete the masked token: "
MPP_PREFIX = "Complete the masked words: "
NL2KG_PREFIX = "Please extract knowledge tuples (subject, verb, object) from the text: "
KG2NL_PREFIX = (
    "Please write a sentence expressing the knowledge tuples (subject, verb, object): "
)


class TaskKind(enum.Enum):
    NTP = "NTP"
    MTP = "MTP"
    MPP = "MPP"
    NL2KG = "NL2KG"
    KG2NL = "KG2NL"


CANONICAL_TASK_ORDER = (
    TaskKind.NTP,
    TaskKind.MTP,
    TaskKind.MPP,
    TaskKind.NL2KG,
    TaskKind.KG2NL,
)

SENTENCE_TASKS = frozenset(
    {TaskKind.MTP, TaskKind.MPP, TaskKind.NL2KG, TaskKind.KG2NL}
)


@dataclass(frozen=True)
class TrainingExample:
    task: TaskKind
    user_query: str
    response: str
    doc_id: str
    sent_index: int
    selection_seed: int


@dataclass
class TaskCounts:
    emitted: int = 0
    skipped: int = 0


def selection_seed(
    master_seed: int, doc_id: str, sent_index: int, task: TaskKind, draw: int = 0
) -> int:
    """Stable 64-bit seed for one (document, sentence, task, draw) slot."""
    payload = "\x1f".join(
        (str(master_seed), doc_id, str(sent_index), task.value, str(draw))
    )
    digest = hashlib.blake2b(payload.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _splice_mask(sentence: Sentence, byte_start: int, byte_end: int) -> str:
    raw = sentence.text.encode("utf-8")
    return (raw[:byte_start] + MASK.encode("utf-8") + raw[byte_end:]).decode("utf-8")


def make_mtp(sentence: Sentence, seed: int) -> TrainingExample:
    """Mask one uniformly chosen token; the response is that token's form."""
    n = len(sentence.tokens)
    if n < 2:
        raise DataError(
            f"doc {sentence.doc_id!r} sentence {sentence.sent_index}: "
            f"cannot mask a {n}-token sentence"
        )
    i = random.Random(seed).randrange(n)
    token = sentence.tokens[i]
    masked = _splice_mask(sentence, token.char_start, token.char_end)
    return TrainingExample(
        task=TaskKind.MTP,
        user_query=MTP_PREFIX + masked,
        response=token.form,
        doc_id=sentence.doc_id,
        sent_index=sentence.sent_index,
        selection_seed=seed,
    )


def make_mpp(
    sentence: Sentence, phrases: list[Phrase], seed: int
) -> TrainingExample | None:
    """Mask one uniformly chosen phrase span; None when no phrase exists."""
    if not phrases:
        return None
    phrase = phrases[random.Random(seed).randrange(len(phrases))]
    start = sentence.tokens[phrase.token_start].char_start
    end = sentence.tokens[phrase.token_end - 1].char_end
    masked = _splice_mask(sentence, start, end)
    return TrainingExample(
        task=TaskKind.MPP,
        user_query=MPP_PREFIX + masked,
        response=phrase.text,
        doc_id=sentence.doc_id,
        sent_index=sentence.sent_index,
        selection_seed=seed,
    )


def make_nl2kg(
    sentence: Sentence, tuples: list[KnowledgeTuple], seed: int = 0
) -> TrainingExample | None:
    if not tuples:
        return None
    return TrainingExample(
        task=TaskKind.NL2KG,
        user_query=NL2KG_PREFIX + sentence.text,
        response=serialize_tuples(tuples),
        doc_id=sentence.doc_id,
        sent_index=sentence.sent_index,
        selection_seed=seed,
    )


def make_kg2nl(
    sentence: Sentence, tuples: list[KnowledgeTuple], seed: int = 0
) -> TrainingExample | None:
    if not tuples:
        return None
    return TrainingExample(
        task=TaskKind.KG2NL,
        user_query=KG2NL_PREFIX + serialize_tuples(tuples),
        response=sentence.text,
        doc_id=sentence.doc_id,
        sent_index=sentence.sent_index,
        selection_seed=seed,
    )


def make_ntp(
    doc: Document, chunk_size: int = 512, master_seed: int = 0
) -> list[TrainingExample]:
    """Chunk the raw document into runs of at most chunk_size words.

    Chunks keep the document's original inter-token spacing; only the
    whitespace between two chunks is dropped.
    """
    if chunk_size < 1:
        raise DataError(f"chunk_size must be >= 1, got {chunk_size}")
    spans = [m.span() for m in re.finditer(r"\S+", doc.text)]
    examples: list[TrainingExample] = []
    for chunk_index, at in enumerate(range(0, len(spans), chunk_size)):
        group = spans[at : at + chunk_size]
        text = doc.text[group[0][0] : group[-1][1]]
        examples.append(
            TrainingExample(
                task=TaskKind.NTP,
                user_query="",
                response=text,
                doc_id=doc.doc_id,
                sent_index=-1,
                selection_seed=selection_seed(
                    master_seed, doc.doc_id, -1, TaskKind.NTP, chunk_index
                ),
            )
        )
    return examples


def forge_dataset(
    corpus: AnnotatedCorpus,
    tasks: set[TaskKind],
    master_seed: int,
    per_sentence: int = 1,
    chunk_size: int = 512,
    phrase_labels: frozenset[str] = DEFAULT_PHRASE_LABELS,
    span_mode: str = "head-token",
    clausal_predicates: bool = True,
    expand_conjuncts: bool = False,
) -> tuple[list[TrainingExample], dict[TaskKind, TaskCounts]]:
    """Emit examples in canonical (task, document, sentence, draw) order.

    Sentences that cannot yield a given task (too short for MTP, no
    phrases/tuples, surface text already containing the mask literal) are
    counted as skipped, never silently dropped from the tally.
    """
    if per_sentence < 1:
        raise DataError(f"per_sentence must be >= 1, got {per_sentence}")
    ordered_tasks = [t for t in CANONICAL_TASK_ORDER if t in tasks]
    have_material = any(doc.text.strip() for doc in corpus.documents)
    if have_material and not corpus.sentences:
        needed = [t.value for t in ordered_tasks if t in SENTENCE_TASKS]
        if needed:
            raise DataError(
                f"tasks {needed} need sentence annotations, but none were loaded"
            )

    examples: list[TrainingExample] = []
    counts = {task: TaskCounts() for task in ordered_tasks}
    for task in ordered_tasks:
        for doc in corpus.documents:
            if task is TaskKind.NTP:
                chunks = make_ntp(doc, chunk_size=chunk_size, master_seed=master_seed)
                examples.extend(chunks)
                counts[task].emitted += len(chunks)
                if not chunks:
                    counts[task].skipped += 1
                continue
            for sentence in corpus.sentences.get(doc.doc_id, []):
                built = _sentence_task(
                    corpus,
                    sentence,
                    task,
                    master_seed,
                    per_sentence,
                    phrase_labels,
                    span_mode,
                    clausal_predicates,
                    expand_conjuncts,
                )
                if built:
                    examples.extend(built)
                    counts[task].emitted += len(built)
                else:
                    counts[task].skipped += 1
    return examples, counts


def _sentence_task(
    corpus: AnnotatedCorpus,
    sentence: Sentence,
    task: TaskKind,
    master_seed: int,
    per_sentence: int,
    phrase_labels: frozenset[str],
    span_mode: str,
    clausal_predicates: bool,
    expand_conjuncts: bool,
) -> list[TrainingExample]:
    key = (sentence.doc_id, sentence.sent_index)
    if task is TaskKind.MTP:
        if len(sentence.tokens) < 2 or MASK in sentence.text:
            return []
        return [
            make_mtp(
                sentence,
                selection_seed(master_seed, sentence.doc_id, sentence.sent_index, task, draw),
            )
            for draw in range(per_sentence)
        ]
    if task is TaskKind.MPP:
        if key not in corpus.trees:
            raise DataError(f"no constituency tree for sentence {key[0]}:{key[1]}")
        if MASK in sentence.text:
            return []
        phrases = extract_phrases(corpus.trees[key], sentence, phrase_labels)
        built = [
            make_mpp(
                sentence,
                phrases,
                selection_seed(master_seed, sentence.doc_id, sentence.sent_index, task, draw),
            )
            for draw in range(per_sentence)
        ]
        return [e for e in built if e is not None]
    # NL2KG / KG2NL: deterministic, one example per sentence.
    if key not in corpus.graphs:
        raise DataError(f"no dependency graph for sentence {key[0]}:{key[1]}")
    tuples = extract_tuples(
        corpus.graphs[key],
        sentence,
        span_mode=span_mode,
        clausal_predicates=clausal_predicates,
        expand_conjuncts=expand_conjuncts,
    )
    seed = selection_seed(master_seed, sentence.doc_id, sentence.sent_index, task)
    maker = make_nl2kg if task is TaskKind.NL2KG else make_kg2nl
    built = maker(sentence, tuples, seed)
    return [built] if built is not None else []
