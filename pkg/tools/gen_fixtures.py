"""Regenerate the checked-in test fixtures under tests/data/.

Deterministic: a fixed seed drives all vocabulary choices, so reruns are
byte-identical. Each sentence template yields token forms, CoNLL-U rows,
and a bracketed tree that agree token-by-token.
"""

from __future__ import annotations

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data"

NAMES = [
    "Alice", "Bob", "Carol", "Dave", "Erin", "Frank", "Grace", "Heidi",
    "Omar", "Priya", "Wei", "Noor", "Zoé", "Iván",
]
NOUNS = [
    "rocket", "plane", "engine", "bridge", "robot", "garden", "tunnel",
    "archive", "mosaic", "lantern", "compass", "ledger",
]
V3SG = ["builds", "designs", "tests", "paints", "launches", "repairs", "inspects", "restores"]
VPL = ["build", "design", "test", "paint", "launch", "repair", "inspect", "restore"]
VPART = ["built", "designed", "tested", "painted", "launched", "repaired", "inspected", "restored"]
ADJS = ["old", "new", "bright", "quiet", "rusty", "narrow", "formal", "eager"]
INTRANS = ["sleeps", "waits", "hums", "shines", "drifts"]
PREPS = ["under", "near", "behind", "inside"]

NO_SPACE_BEFORE = {".", ",", "!", "?", ")", ":", ";"}


def detok(forms: list[str]) -> str:
    out = forms[0]
    for form in forms[1:]:
        if form in NO_SPACE_BEFORE or out.endswith("("):
            out += form
        else:
            out += " " + form
    return out


def plural(noun: str) -> str:
    return noun + ("es" if noun.endswith(("s", "sh", "ch", "x")) else "s")


def t_transitive(rng):
    s, v, o = rng.choice(NAMES), rng.choice(V3SG), plural(rng.choice(NOUNS))
    forms = [s, v, o, "."]
    rows = [
        (s, s.lower(), "PROPN", 2, "nsubj"),
        (v, v[:-1], "VERB", 0, "root"),
        (o, o[:-1], "NOUN", 2, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = f"(S (NP (NNP {s})) (VP (VBZ {v}) (NP (NNS {o}))) (. .))"
    return forms, rows, tree


def t_det_transitive(rng):
    a, n1, v, n2 = rng.choice(ADJS), rng.choice(NOUNS), rng.choice(V3SG), rng.choice(NOUNS)
    forms = ["The", a, n1, v, "the", n2, "."]
    rows = [
        ("The", "the", "DET", 3, "det"),
        (a, a, "ADJ", 3, "amod"),
        (n1, n1, "NOUN", 4, "nsubj"),
        (v, v[:-1], "VERB", 0, "root"),
        ("the", "the", "DET", 6, "det"),
        (n2, n2, "NOUN", 4, "obj"),
        (".", ".", "PUNCT", 4, "punct"),
    ]
    tree = (
        f"(S (NP (DT The) (JJ {a}) (NN {n1})) "
        f"(VP (VBZ {v}) (NP (DT the) (NN {n2}))) (. .))"
    )
    return forms, rows, tree


def t_obl_pp(rng):
    n1, v, p, n2 = rng.choice(NOUNS), rng.choice(INTRANS), rng.choice(PREPS), rng.choice(NOUNS)
    forms = ["The", n1, v, p, "the", n2, "."]
    rows = [
        ("The", "the", "DET", 2, "det"),
        (n1, n1, "NOUN", 3, "nsubj"),
        (v, v[:-1], "VERB", 0, "root"),
        (p, p, "ADP", 6, "case"),
        ("the", "the", "DET", 6, "det"),
        (n2, n2, "NOUN", 3, "obl"),
        (".", ".", "PUNCT", 3, "punct"),
    ]
    tree = (
        f"(S (NP (DT The) (NN {n1})) "
        f"(VP (VBZ {v}) (PP (IN {p}) (NP (DT the) (NN {n2})))) (. .))"
    )
    return forms, rows, tree


def t_passive(rng):
    n1, part, s = rng.choice(NOUNS), rng.choice(VPART), rng.choice(NAMES)
    forms = ["The", n1, "was", part, "by", s, "."]
    rows = [
        ("The", "the", "DET", 2, "det"),
        (n1, n1, "NOUN", 4, "nsubj:pass"),
        ("was", "be", "AUX", 4, "aux:pass"),
        (part, part.rstrip("d"), "VERB", 0, "root"),
        ("by", "by", "ADP", 6, "case"),
        (s, s.lower(), "PROPN", 4, "obl"),
        (".", ".", "PUNCT", 4, "punct"),
    ]
    tree = (
        f"(S (NP (DT The) (NN {n1})) "
        f"(VP (VBD was) (VP (VBN {part}) (PP (IN by) (NP (NNP {s}))))) (. .))"
    )
    return forms, rows, tree


def t_copular_attr(rng):
    s, n = rng.choice(NAMES), rng.choice(NOUNS)
    forms = [s, "is", "a", n, "."]
    rows = [
        (s, s.lower(), "PROPN", 2, "nsubj"),
        ("is", "be", "AUX", 0, "root"),
        ("a", "a", "DET", 4, "det"),
        (n, n, "NOUN", 2, "attr"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = f"(S (NP (NNP {s})) (VP (VBZ is) (NP (DT a) (NN {n}))) (. .))"
    return forms, rows, tree


def t_copular_ud(rng):
    s, a = rng.choice(NAMES), rng.choice(ADJS)
    forms = [s, "is", a, "."]
    rows = [
        (s, s.lower(), "PROPN", 3, "nsubj"),
        ("is", "be", "AUX", 3, "cop"),
        (a, a, "ADJ", 0, "root"),
        (".", ".", "PUNCT", 3, "punct"),
    ]
    tree = f"(S (NP (NNP {s})) (VP (VBZ is) (ADJP (JJ {a}))) (. .))"
    return forms, rows, tree


def t_conj_subjects(rng):
    s1, s2 = rng.sample(NAMES, 2)
    v, o = rng.choice(VPL), plural(rng.choice(NOUNS))
    forms = [s1, "and", s2, v, o, "."]
    rows = [
        (s1, s1.lower(), "PROPN", 4, "nsubj"),
        ("and", "and", "CCONJ", 3, "cc"),
        (s2, s2.lower(), "PROPN", 1, "conj"),
        (v, v, "VERB", 0, "root"),
        (o, o[:-1], "NOUN", 4, "obj"),
        (".", ".", "PUNCT", 4, "punct"),
    ]
    tree = (
        f"(S (NP (NP (NNP {s1})) (CC and) (NP (NNP {s2}))) "
        f"(VP (VBP {v}) (NP (NNS {o}))) (. .))"
    )
    return forms, rows, tree


def t_conj_clauses(rng):
    s1, s2 = rng.sample(NAMES, 2)
    v1, v2 = rng.sample(V3SG, 2)
    o1, o2 = plural(rng.choice(NOUNS)), plural(rng.choice(NOUNS))
    forms = [s1, v1, o1, "and", s2, v2, o2, "."]
    rows = [
        (s1, s1.lower(), "PROPN", 2, "nsubj"),
        (v1, v1[:-1], "VERB", 0, "root"),
        (o1, o1[:-1], "NOUN", 2, "obj"),
        ("and", "and", "CCONJ", 6, "cc"),
        (s2, s2.lower(), "PROPN", 6, "nsubj"),
        (v2, v2[:-1], "VERB", 2, "conj"),
        (o2, o2[:-1], "NOUN", 6, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = (
        f"(S (S (NP (NNP {s1})) (VP (VBZ {v1}) (NP (NNS {o1})))) (CC and) "
        f"(S (NP (NNP {s2})) (VP (VBZ {v2}) (NP (NNS {o2})))) (. .))"
    )
    return forms, rows, tree


def t_ccomp(rng):
    s1, s2 = rng.sample(NAMES, 2)
    v, o = rng.choice(V3SG), plural(rng.choice(NOUNS))
    forms = [s1, "says", s2, v, o, "."]
    rows = [
        (s1, s1.lower(), "PROPN", 2, "nsubj"),
        ("says", "say", "VERB", 0, "root"),
        (s2, s2.lower(), "PROPN", 4, "nsubj"),
        (v, v[:-1], "VERB", 2, "ccomp"),
        (o, o[:-1], "NOUN", 4, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = (
        f"(S (NP (NNP {s1})) (VP (VBZ says) (SBAR (S (NP (NNP {s2})) "
        f"(VP (VBZ {v}) (NP (NNS {o})))))) (. .))"
    )
    return forms, rows, tree


def t_interjection(rng):
    word = rng.choice(["Wow", "Ouch", "Alas", "Hooray"])
    forms = [word, "!"]
    rows = [
        (word, word.lower(), "INTJ", 0, "root"),
        ("!", "!", "PUNCT", 1, "punct"),
    ]
    tree = f"(S (INTJ (UH {word})) (. !))"
    return forms, rows, tree


def t_single_token(rng):
    word = rng.choice(["Stop", "Wait", "Listen", "Go"])
    forms = [word]
    rows = [(word, word.lower(), "VERB", 0, "root")]
    tree = f"(S (VP (VB {word})))"
    return forms, rows, tree


def t_parenthetical(rng):
    s, role = rng.choice(NAMES), rng.choice(["chief", "owner", "founder", "editor"])
    v, o = rng.choice(V3SG), plural(rng.choice(NOUNS))
    forms = [s, "(", "the", role, ")", v, o, "."]
    rows = [
        (s, s.lower(), "PROPN", 6, "nsubj"),
        ("(", "(", "PUNCT", 4, "punct"),
        ("the", "the", "DET", 4, "det"),
        (role, role, "NOUN", 1, "appos"),
        (")", ")", "PUNCT", 4, "punct"),
        (v, v[:-1], "VERB", 0, "root"),
        (o, o[:-1], "NOUN", 6, "obj"),
        (".", ".", "PUNCT", 6, "punct"),
    ]
    tree = (
        f"(S (NP (NP (NNP {s})) (PRN (-LRB- -LRB-) (NP (DT the) (NN {role})) "
        f"(-RRB- -RRB-))) (VP (VBZ {v}) (NP (NNS {o}))) (. .))"
    )
    return forms, rows, tree


def t_accented(rng):
    s = rng.choice(["Zoé", "Iván", "Renée", "Müller"])
    n = rng.choice(["café", "château", "résumé", "piñata"])
    forms = [s, "visits", "the", n, "."]
    rows = [
        (s, s.lower(), "PROPN", 2, "nsubj"),
        ("visits", "visit", "VERB", 0, "root"),
        ("the", "the", "DET", 4, "det"),
        (n, n, "NOUN", 2, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = f"(S (NP (NNP {s})) (VP (VBZ visits) (NP (DT the) (NN {n}))) (. .))"
    return forms, rows, tree


def t_suffixed_labels(rng):
    n1, v, n2 = rng.choice(NOUNS), rng.choice(V3SG), rng.choice(NOUNS)
    forms = ["The", n1, v, "the", n2, "."]
    rows = [
        ("The", "the", "DET", 2, "det"),
        (n1, n1, "NOUN", 3, "nsubj"),
        (v, v[:-1], "VERB", 0, "root"),
        ("the", "the", "DET", 5, "det"),
        (n2, n2, "NOUN", 3, "obj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]
    tree = (
        f"(S (NP-SBJ (DT The) (NN {n1})) "
        f"(VP (VBZ {v}) (NP-OBJ (DT the) (NN {n2}))) (. .))"
    )
    return forms, rows, tree


def t_iobj(rng):
    s1, s2 = rng.sample(NAMES, 2)
    o = plural(rng.choice(NOUNS))
    forms = [s1, "gave", s2, o, "."]
    rows = [
        (s1, s1.lower(), "PROPN", 2, "nsubj"),
        ("gave", "give", "VERB", 0, "root"),
        (s2, s2.lower(), "PROPN", 2, "iobj"),
        (o, o[:-1], "NOUN", 2, "obj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]
    tree = (
        f"(S (NP (NNP {s1})) (VP (VBD gave) (NP (NNP {s2})) (NP (NNS {o}))) (. .))"
    )
    return forms, rows, tree


def t_advcl(rng):
    n1, v1 = rng.choice(NOUNS), rng.choice(INTRANS)
    n2, v2 = plural(rng.choice(NOUNS)), rng.choice(VPL)
    forms = ["When", "the", n1, v1, "the", n2, v2, "."]
    rows = [
        ("When", "when", "SCONJ", 4, "mark"),
        ("the", "the", "DET", 3, "det"),
        (n1, n1, "NOUN", 4, "nsubj"),
        (v1, v1[:-1], "VERB", 7, "advcl"),
        ("the", "the", "DET", 6, "det"),
        (n2, n2[:-1], "NOUN", 7, "nsubj"),
        (v2, v2, "VERB", 0, "root"),
        (".", ".", "PUNCT", 7, "punct"),
    ]
    tree = (
        f"(S (SBAR (WHADVP (WRB When)) (S (NP (DT the) (NN {n1})) (VP (VBZ {v1})))) "
        f"(NP (DT the) (NNS {n2})) (VP (VBP {v2})) (. .))"
    )
    return forms, rows, tree


TEMPLATES = [
    t_transitive,
    t_det_transitive,
    t_obl_pp,
    t_passive,
    t_copular_attr,
    t_copular_ud,
    t_conj_subjects,
    t_conj_clauses,
    t_ccomp,
    t_interjection,
    t_single_token,
    t_parenthetical,
    t_accented,
    t_suffixed_labels,
    t_iobj,
    t_advcl,
]

SENTENCES_PER_DOC = 20
DOC_COUNT = 26


def conllu_lines(doc_id: str, sent_index: int, forms, rows) -> str:
    lines = [f"# sent_id = {doc_id}:{sent_index}", f"# text = {detok(forms)}"]
    for i, (form, lemma, upos, head, deprel) in enumerate(rows, start=1):
        lines.append(
            "\t".join((str(i), form, lemma, upos, "_", "_", str(head), deprel, "_", "_"))
        )
    return "\n".join(lines)


def build_main_fixture():
    rng = random.Random(26031)
    corpus_records = []
    conllu_blocks = []
    tree_lines = []
    counter = 0
    for d in range(DOC_COUNT):
        doc_id = f"doc{d:03d}"
        texts = []
        for s in range(SENTENCES_PER_DOC):
            forms, rows, tree = TEMPLATES[counter % len(TEMPLATES)](rng)
            counter += 1
            texts.append(detok(forms))
            conllu_blocks.append(conllu_lines(doc_id, s, forms, rows))
            tree_lines.append(tree)
        joiner = "\n\n" if d % 5 == 0 else " "
        corpus_records.append(
            {"id": doc_id, "text": joiner.join(texts), "meta": {"origin": "synthetic"}}
        )
    (OUT / "corpus.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in corpus_records) + "\n",
        encoding="utf-8",
    )
    (OUT / "corpus.conllu").write_text("\n\n".join(conllu_blocks) + "\n", encoding="utf-8")
    (OUT / "corpus.trees").write_text("\n".join(tree_lines) + "\n", encoding="utf-8")
    return counter


def build_mini_fixture():
    records = [
        {
            "id": "m1",
            "text": "Alice builds rockets. Run. Wow!",
            "meta": {"origin": "mini"},
        }
    ]
    (OUT / "mini_corpus.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n",
        encoding="utf-8",
    )
    blocks = [
        conllu_lines(
            "m1",
            0,
            ["Alice", "builds", "rockets", "."],
            [
                ("Alice", "alice", "PROPN", 2, "nsubj"),
                ("builds", "build", "VERB", 0, "root"),
                ("rockets", "rocket", "NOUN", 2, "obj"),
                (".", ".", "PUNCT", 2, "punct"),
            ],
        ),
        conllu_lines(
            "m1",
            1,
            ["Run", "."],
            [("Run", "run", "VERB", 0, "root"), (".", ".", "PUNCT", 1, "punct")],
        ),
        conllu_lines(
            "m1",
            2,
            ["Wow", "!"],
            [("Wow", "wow", "INTJ", 0, "root"), ("!", "!", "PUNCT", 1, "punct")],
        ),
    ]
    (OUT / "mini.conllu").write_text("\n\n".join(blocks) + "\n", encoding="utf-8")
    trees = [
        "(S (NP (NNP Alice)) (VP (VBZ builds) (NP (NNS rockets))) (. .))",
        "(S (VP (VB Run)) (. .))",
        "(S (INTJ (UH Wow)) (. !))",
    ]
    (OUT / "mini.trees").write_text("\n".join(trees) + "\n", encoding="utf-8")


def build_predictions():
    records = [
        {"doc_id": "doc000", "question": "What does Alice build?", "prediction": "the cat", "reference": "the cat"},
        {"doc_id": "doc000", "question": "Where is the garden?", "prediction": "a c", "reference": "a b c"},
    ]
    (OUT / "predictions.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n",
        encoding="utf-8",
    )


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    count = build_main_fixture()
    build_mini_fixture()
    build_predictions()
    print(f"wrote fixtures for {count} sentences to {OUT}")


if __name__ == "__main__":
    main()
