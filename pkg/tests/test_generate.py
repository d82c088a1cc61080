from __future__ import annotations

import pytest

from helpers import conllu_block, make_sentence
from parseforge.annotations import AnnotatedCorpus
from parseforge.corpus import Document, attach_sentences
from parseforge.depgraph import extract_tuples, parse_conllu, serialize_tuples
from parseforge.errors import DataError
from parseforge.generate import (
    CANONICAL_TASK_ORDER,
    MASK,
    TaskKind,
    forge_dataset,
    make_kg2nl,
    make_mpp,
    make_mtp,
    make_nl2kg,
    make_ntp,
    selection_seed,
)
from parseforge.treebank import extract_phrases, parse_bracketed


def seed_selecting(index: int, n: int) -> int:
    """Find a seed whose uniform draw over n options picks `index`."""
    import random

    for seed in range(10_000):
        if random.Random(seed).randrange(n) == index:
            return seed
    raise AssertionError("no seed found")


def test_selection_seed_is_stable_and_64_bit():
    a = selection_seed(7, "doc", 3, TaskKind.MTP)
    assert a == selection_seed(7, "doc", 3, TaskKind.MTP)
    assert 0 <= a < 2**64
    others = {
        selection_seed(8, "doc", 3, TaskKind.MTP),
        selection_seed(7, "odc", 3, TaskKind.MTP),
        selection_seed(7, "doc", 4, TaskKind.MTP),
        selection_seed(7, "doc", 3, TaskKind.MPP),
        selection_seed(7, "doc", 3, TaskKind.MTP, draw=1),
    }
    assert a not in others and len(others) == 5


def test_make_mtp_masks_the_selected_token():
    sent = make_sentence("The cat sat")
    example = make_mtp(sent, seed_selecting(1, 3))
    assert example.user_query == "Complete the masked token: The <mask> sat"
    assert example.response == "cat"
    assert example.task is TaskKind.MTP


def test_make_mtp_boundary_token():
    sent = make_sentence("Go home")
    example = make_mtp(sent, seed_selecting(0, 2))
    assert example.user_query == "Complete the masked token: <mask> home"
    assert example.response == "Go"


def test_make_mtp_rejects_single_token_sentence():
    with pytest.raises(DataError, match="1-token"):
        make_mtp(make_sentence("Stop"), seed=0)


def test_mtp_round_trip_with_multibyte_text():
    sent = make_sentence("Zoé aime le café .", ["Zoé", "aime", "le", "café", "."])
    for seed in range(25):
        example = make_mtp(sent, seed)
        masked = example.user_query[len("Complete the masked token: ") :]
        assert masked.replace(MASK, example.response, 1) == sent.text


def test_make_mpp_masks_the_selected_phrase():
    sent = make_sentence("The cat sat")
    tree = parse_bracketed("(S (NP (DT The) (NN cat)) (VP (VBD sat)))", sent)
    phrases = extract_phrases(tree, sent)
    example = make_mpp(sent, phrases, seed_selecting(0, 2))
    assert example.user_query == "Complete the masked words: <mask> sat"
    assert example.response == "The cat"


def test_make_mpp_skips_without_phrases():
    assert make_mpp(make_sentence("The cat sat"), [], seed=1) is None


def test_make_mpp_single_candidate_ignores_seed():
    sent = make_sentence("The cat sat")
    tree = parse_bracketed("(S (NP (DT The) (NN cat)) (VP (VBD sat)))", sent)
    only = [p for p in extract_phrases(tree, sent) if p.label == "VP"]
    for seed in (0, 1, 99):
        example = make_mpp(sent, only, seed)
        assert example.response == "sat"


def alice_sentence_graph():
    sent = make_sentence("Alice builds rockets")
    block = conllu_block(
        "d0",
        0,
        [
            ("Alice", "Alice", "PROPN", 2, "nsubj"),
            ("builds", "build", "VERB", 0, "root"),
            ("rockets", "rocket", "NOUN", 2, "obj"),
        ],
    )
    return sent, parse_conllu(block, sent)


def test_nl2kg_and_kg2nl_contents():
    sent, graph = alice_sentence_graph()
    tuples = extract_tuples(graph, sent)
    forward = make_nl2kg(sent, tuples)
    backward = make_kg2nl(sent, tuples)
    assert forward.user_query == (
        "Please extract knowledge tuples (subject, verb, object) "
        "from the text: Alice builds rockets"
    )
    assert forward.response == "(Alice, builds, rockets)"
    assert backward.user_query == (
        "Please write a sentence expressing the knowledge tuples "
        "(subject, verb, object): (Alice, builds, rockets)"
    )
    assert backward.response == "Alice builds rockets"
    # Loop consistency: each direction embeds what the other answers.
    assert forward.response in backward.user_query
    assert backward.response in forward.user_query
    assert forward.response == serialize_tuples(tuples)


def test_nl2kg_skips_without_tuples():
    sent = make_sentence("Run .", ["Run", "."])
    assert make_nl2kg(sent, []) is None
    assert make_kg2nl(sent, []) is None


def test_make_ntp_chunking_arithmetic():
    doc = Document(doc_id="d", text="one two three four five")
    chunks = make_ntp(doc, chunk_size=3)
    assert [c.response for c in chunks] == ["one two three", "four five"]
    assert all(c.user_query == "" and c.sent_index == -1 for c in chunks)
    (whole,) = make_ntp(doc, chunk_size=50)
    assert whole.response == doc.text


def test_make_ntp_preserves_internal_spacing():
    doc = Document(doc_id="d", text="a  b\tc d")
    chunks = make_ntp(doc, chunk_size=3)
    assert [c.response for c in chunks] == ["a  b\tc", "d"]


def test_make_ntp_empty_document():
    assert make_ntp(Document(doc_id="d", text="   \n"), chunk_size=4) == []


def build_corpus():
    doc = Document(doc_id="a", text="Alice builds rockets. Run .")
    sents = attach_sentences(
        doc, [["Alice", "builds", "rockets", "."], ["Run", "."]]
    )
    graphs = {
        ("a", 0): parse_conllu(
            conllu_block(
                "a",
                0,
                [
                    ("Alice", "Alice", "PROPN", 2, "nsubj"),
                    ("builds", "build", "VERB", 0, "root"),
                    ("rockets", "rocket", "NOUN", 2, "obj"),
                    (".", ".", "PUNCT", 2, "punct"),
                ],
            ),
            sents[0],
        ),
        ("a", 1): parse_conllu(
            conllu_block(
                "a",
                1,
                [("Run", "run", "VERB", 0, "root"), (".", ".", "PUNCT", 1, "punct")],
            ),
            sents[1],
        ),
    }
    trees = {
        ("a", 0): parse_bracketed(
            "(S (NP (NNP Alice)) (VP (VBZ builds) (NP (NNS rockets))) (. .))",
            sents[0],
        ),
        ("a", 1): parse_bracketed("(S (VP (VB Run)) (. .))", sents[1]),
    }
    return AnnotatedCorpus(
        documents=[doc], sentences={"a": sents}, graphs=graphs, trees=trees
    )


def test_forge_dataset_one_example_per_sentence():
    corpus = build_corpus()
    examples, counts = forge_dataset(corpus, {TaskKind.MTP}, master_seed=1)
    assert [e.sent_index for e in examples] == [0, 1]
    assert counts[TaskKind.MTP].emitted == 2
    assert counts[TaskKind.MTP].skipped == 0


def test_forge_dataset_is_deterministic():
    corpus = build_corpus()
    tasks = set(CANONICAL_TASK_ORDER)
    first = forge_dataset(corpus, tasks, master_seed=42)
    second = forge_dataset(corpus, tasks, master_seed=42)
    assert first == second


def test_forge_dataset_counts_skips():
    corpus = build_corpus()
    examples, counts = forge_dataset(corpus, {TaskKind.NL2KG}, master_seed=1)
    # "Run ." has no complete tuple, so only the first sentence emits.
    assert len(examples) == 1
    assert counts[TaskKind.NL2KG].emitted == 1
    assert counts[TaskKind.NL2KG].skipped == 1


def test_forge_dataset_task_major_order():
    corpus = build_corpus()
    examples, _ = forge_dataset(
        corpus, {TaskKind.NTP, TaskKind.MTP, TaskKind.KG2NL}, master_seed=5
    )
    tasks_in_output = [e.task for e in examples]
    assert tasks_in_output == sorted(
        tasks_in_output, key=CANONICAL_TASK_ORDER.index
    )
    assert tasks_in_output[0] is TaskKind.NTP


def test_forge_dataset_per_sentence_draws():
    corpus = build_corpus()
    examples, counts = forge_dataset(
        corpus, {TaskKind.MTP}, master_seed=9, per_sentence=3
    )
    assert counts[TaskKind.MTP].emitted == 6
    seeds = [e.selection_seed for e in examples[:3]]
    assert len(set(seeds)) == 3


def test_forge_dataset_requires_annotations_for_sentence_tasks():
    bare = AnnotatedCorpus(documents=[Document(doc_id="a", text="Some text.")])
    with pytest.raises(DataError, match="MTP"):
        forge_dataset(bare, {TaskKind.MTP}, master_seed=0)
    examples, _ = forge_dataset(bare, {TaskKind.NTP}, master_seed=0)
    assert len(examples) == 1


def test_forge_dataset_skips_sentences_containing_the_mask_literal():
    doc = Document(doc_id="a", text="keep <mask> safe")
    sents = attach_sentences(doc, [["keep", "<mask>", "safe"]])
    corpus = AnnotatedCorpus(documents=[doc], sentences={"a": sents})
    examples, counts = forge_dataset(corpus, {TaskKind.MTP}, master_seed=0)
    assert examples == []
    assert counts[TaskKind.MTP].skipped == 1
