from __future__ import annotations

import pytest

from helpers import make_sentence
from parseforge.errors import TreeError
from parseforge.treebank import (
    extract_phrases,
    leaf_forms,
    normalize_label,
    parse_bracketed,
    serialize_tree,
)

CAT_LINE = "(S (NP (DT The) (NN cat)) (VP (VBD sat)))"


def cat_sentence():
    return make_sentence("The cat sat")


def test_parse_bracketed_spans_bottom_up():
    tree = parse_bracketed(CAT_LINE, cat_sentence())
    assert tree.label == "S"
    assert tree.span == (0, 3)
    np, vp = tree.children
    assert (np.label, np.span) == ("NP", (0, 2))
    assert (vp.label, vp.span) == ("VP", (2, 3))
    dt = np.children[0]
    assert dt.label == "DT" and dt.children == (0,) and dt.span == (0, 1)


def test_parse_bracketed_single_leaf():
    tree = parse_bracketed("(X (T a))", make_sentence("a"))
    assert tree.span == (0, 1)


def test_parse_bracketed_unbalanced_open():
    with pytest.raises(TreeError, match="unbalanced '\\(' at position 0"):
        parse_bracketed("(S (NP (DT The))", make_sentence("The"))


def test_parse_bracketed_unbalanced_close():
    with pytest.raises(TreeError, match="unbalanced '\\)'"):
        parse_bracketed("(S (T a)))", make_sentence("a"))


def test_parse_bracketed_leaf_count_mismatch():
    with pytest.raises(TreeError, match="2 leaves"):
        parse_bracketed("(S (T a) (T b))", make_sentence("a b c", ["a", "b", "c"]))


def test_parse_bracketed_leaf_form_mismatch_reports_index():
    with pytest.raises(TreeError, match="leaf 1"):
        parse_bracketed("(S (T The) (T dog))", cat_sentence())


def test_parse_bracketed_unescapes_ptb_brackets():
    sent = make_sentence("sat ( here )", ["sat", "(", "here", ")"])
    tree = parse_bracketed("(S (V sat) (P -LRB-) (A here) (P -RRB-))", sent)
    assert tree.span == (0, 4)
    assert serialize_tree(tree, sent) == "(S (V sat) (P -LRB-) (A here) (P -RRB-))"


def test_serialize_is_canonical_and_idempotent():
    sloppy = "(S  (NP (DT The)\n     (NN cat))  (VP (VBD sat)) )"
    sent = cat_sentence()
    tree = parse_bracketed(sloppy, sent)
    text = serialize_tree(tree, sent)
    assert text == CAT_LINE
    assert serialize_tree(parse_bracketed(text, sent), sent) == text


def test_leaf_forms_reads_tokens_in_order():
    assert leaf_forms(CAT_LINE) == ["The", "cat", "sat"]
    assert leaf_forms("(S (P -LRB-) (P -RRB-))") == ["(", ")"]
    with pytest.raises(TreeError):
        leaf_forms("(S (NP (DT The)")


def test_normalize_label_strips_functional_suffixes():
    assert normalize_label("NP-SBJ") == "NP"
    assert normalize_label("NP-SBJ-1") == "NP"
    assert normalize_label("NP=2") == "NP"
    assert normalize_label("VP") == "VP"
    assert normalize_label("-NONE-") == "-NONE-"


def test_extract_phrases_default_allow_list():
    sent = cat_sentence()
    tree = parse_bracketed(CAT_LINE, sent)
    phrases = extract_phrases(tree, sent)
    assert [(p.label, p.token_start, p.token_end, p.text) for p in phrases] == [
        ("NP", 0, 2, "The cat"),
        ("VP", 2, 3, "sat"),
    ]


def test_extract_phrases_empty_when_no_label_matches():
    sent = cat_sentence()
    tree = parse_bracketed(CAT_LINE, sent)
    assert extract_phrases(tree, sent, {"PP"}) == []


def test_extract_phrases_never_returns_the_whole_sentence():
    sent = make_sentence("The cat")
    tree = parse_bracketed("(NP (DT The) (NN cat))", sent)
    assert extract_phrases(tree, sent, {"NP"}) == []


def test_extract_phrases_keeps_nested_but_dedupes_same_span():
    sent = make_sentence("The big cat sat on mats")
    line = (
        "(S (NP-SBJ (NP (DT The) (JJ big) (NN cat))) "
        "(VP (VBD sat) (PP (IN on) (NP (NNS mats)))))"
    )
    tree = parse_bracketed(line, sent)
    phrases = extract_phrases(tree, sent)
    listing = [(p.label, p.token_start, p.token_end) for p in phrases]
    # NP-SBJ normalizes to NP and shares (0,3) with the inner NP: kept once.
    assert listing == [
        ("NP", 0, 3),
        ("VP", 3, 6),
        ("PP", 4, 6),
        ("NP", 5, 6),
    ]
    assert phrases[0].text == "The big cat"


def test_phrase_text_matches_sentence_offsets():
    sent = make_sentence("Zoé aime le café .", ["Zoé", "aime", "le", "café", "."])
    line = "(S (NP (N Zoé)) (VP (V aime) (NP (D le) (N café))) (. .))"
    tree = parse_bracketed(line, sent)
    for phrase in extract_phrases(tree, sent):
        assert phrase.text == sent.token_bytes(phrase.token_start, phrase.token_end)
