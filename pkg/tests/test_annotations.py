from __future__ import annotations

import pytest

from helpers import conllu_block
from parseforge.annotations import load_annotations, require_clean
from parseforge.corpus import Document
from parseforge.errors import DataError

DOC_A = Document(doc_id="a", text="Alice builds rockets. Bob flies planes.")
DOC_B = Document(doc_id="b", text="Stop.")

BLOCK_A0 = conllu_block(
    "a",
    0,
    [
        ("Alice", "Alice", "PROPN", 2, "nsubj"),
        ("builds", "build", "VERB", 0, "root"),
        ("rockets", "rocket", "NOUN", 2, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ],
)
BLOCK_A1 = conllu_block(
    "a",
    1,
    [
        ("Bob", "Bob", "PROPN", 2, "nsubj"),
        ("flies", "fly", "VERB", 0, "root"),
        ("planes", "plane", "NOUN", 2, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ],
)
BLOCK_B0 = conllu_block(
    "b",
    0,
    [("Stop", "stop", "VERB", 0, "root"), (".", ".", "PUNCT", 1, "punct")],
)

TREE_A0 = "(S (NP (NNP Alice)) (VP (VBZ builds) (NP (NNS rockets))) (. .))"
TREE_A1 = "(S (NP (NNP Bob)) (VP (VBZ flies) (NP (NNS planes))) (. .))"
TREE_B0 = "(S (VP (VB Stop)) (. .))"


def write_conllu(tmp_path, blocks, name="corpus.conllu"):
    path = tmp_path / name
    path.write_text("\n".join(blocks), encoding="utf-8")
    return str(path)


def write_trees(tmp_path, lines, name="corpus.trees"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_conllu_defines_sentences_and_graphs(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_A0, BLOCK_A1, BLOCK_B0])
    corpus, violations = load_annotations([DOC_A, DOC_B], conllu_path=conllu)
    assert violations == []
    assert [s.text for s in corpus.sentences["a"]] == [
        "Alice builds rockets.",
        "Bob flies planes.",
    ]
    assert corpus.sentences["b"][0].text == "Stop."
    assert set(corpus.graphs) == {("a", 0), ("a", 1), ("b", 0)}
    assert corpus.trees == {}


def test_conllu_and_trees_align_one_to_one(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_A0, BLOCK_A1, BLOCK_B0])
    trees = write_trees(tmp_path, [TREE_A0, TREE_A1, TREE_B0])
    corpus, violations = load_annotations(
        [DOC_A, DOC_B], conllu_path=conllu, trees_path=trees
    )
    assert violations == []
    assert set(corpus.trees) == {("a", 0), ("a", 1), ("b", 0)}
    assert corpus.trees[("a", 0)].span == (0, 4)


def test_extra_tree_line_is_reported_with_location(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_A0, BLOCK_A1, BLOCK_B0])
    trees = write_trees(tmp_path, [TREE_A0, TREE_A1, TREE_B0, TREE_B0])
    _, violations = load_annotations([DOC_A, DOC_B], conllu_path=conllu, trees_path=trees)
    assert len(violations) == 1
    assert "4 tree lines" in violations[0].message
    assert violations[0].where.endswith(":4")


def test_bad_tree_line_reports_line_number_and_keeps_going(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_A0, BLOCK_A1, BLOCK_B0])
    broken = "(S (NP (NNP Bob)) (VP (VBZ flies) (NP (NNS planes))) (. .)"
    trees = write_trees(tmp_path, [TREE_A0, broken, TREE_B0])
    corpus, violations = load_annotations(
        [DOC_A, DOC_B], conllu_path=conllu, trees_path=trees
    )
    assert len(violations) == 1
    assert violations[0].where.endswith(":2")
    assert set(corpus.trees) == {("a", 0), ("b", 0)}


def test_missing_sent_id_is_a_violation(tmp_path):
    headless = "1\tStop\tstop\tVERB\t_\t_\t0\troot\t_\t_\n"
    conllu = write_conllu(tmp_path, [headless])
    _, violations = load_annotations([DOC_B], conllu_path=conllu)
    assert violations and "sent_id" in violations[0].message


def test_unknown_document_is_a_violation(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_B0])
    _, violations = load_annotations([DOC_A], conllu_path=conllu)
    assert violations and "unknown document" in violations[0].message


def test_document_order_must_match_corpus(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_B0, BLOCK_A0, BLOCK_A1])
    _, violations = load_annotations([DOC_A, DOC_B], conllu_path=conllu)
    assert violations and "order" in violations[0].message


def test_sentence_indices_must_be_consecutive(tmp_path):
    conllu = write_conllu(tmp_path, [BLOCK_A0, BLOCK_B0.replace("b:0", "a:5")])
    _, violations = load_annotations([DOC_A, DOC_B], conllu_path=conllu)
    assert violations and "out of order" in violations[0].message


def test_misaligned_tokens_are_a_violation(tmp_path):
    wrong = BLOCK_B0.replace("Stop", "Halt")
    conllu = write_conllu(tmp_path, [wrong])
    _, violations = load_annotations([DOC_B], conllu_path=conllu)
    assert violations
    assert "Halt" in violations[0].message


def test_trees_alone_segment_documents_greedily(tmp_path):
    trees = write_trees(tmp_path, [TREE_A0, TREE_A1, TREE_B0])
    corpus, violations = load_annotations([DOC_A, DOC_B], trees_path=trees)
    assert violations == []
    assert [s.text for s in corpus.sentences["a"]] == [
        "Alice builds rockets.",
        "Bob flies planes.",
    ]
    assert corpus.sentences["b"][0].text == "Stop."
    assert set(corpus.trees) == {("a", 0), ("a", 1), ("b", 0)}
    assert corpus.graphs == {}


def test_trees_alone_leftover_lines_are_a_violation(tmp_path):
    trees = write_trees(tmp_path, [TREE_A0, TREE_A1, TREE_B0, TREE_B0])
    _, violations = load_annotations([DOC_A, DOC_B], trees_path=trees)
    assert violations and "left over" in violations[0].message


def test_trees_alone_running_out_is_a_violation(tmp_path):
    trees = write_trees(tmp_path, [TREE_A0])
    _, violations = load_annotations([DOC_A, DOC_B], trees_path=trees)
    assert violations and "ran out" in violations[0].message


def test_require_clean_raises_on_violations(tmp_path):
    trees = write_trees(tmp_path, [TREE_A0])
    _, violations = load_annotations([DOC_A, DOC_B], trees_path=trees)
    with pytest.raises(DataError, match="violation"):
        require_clean(violations)
    require_clean([])
