"""Dependency-free heuristic English parser.

This backend exists so every exporter contract (file shapes, alignment,
manifest invariants) can be exercised without the transformer toolchain
installed.  It is a deterministic approximation: closed-class lexicons plus
suffix heuristics for tagging, positional rules for dependencies, and a
chunker for the constituency tree.  Output is structurally valid (single
root, acyclic, leaves tiling the text) even where the analysis is naive.
"""

from __future__ import annotations

import re

from .base import ParsedSentence, escape_leaf

_PARAGRAPH = re.compile(r"\n\s*\n")
_SENT_END = re.compile(r"[.!?]+[\"'”’)\]]*")
_TOKEN = re.compile(r"\w+(?:['’]\w+)*|[^\w\s]")

_DET = {"the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "no"}
_ADP = {
    "of", "in", "on", "at", "by", "with", "from", "to", "for", "about",
    "into", "over", "under", "between", "through", "during", "after",
    "before", "against", "without", "near", "across",
}
_AUX = {
    "is", "am", "are", "was", "were", "be", "been", "being", "has", "have",
    "had", "do", "does", "did", "will", "would", "can", "could", "may",
    "might", "shall", "should", "must",
}
_BE = {"is", "am", "are", "was", "were", "be", "been", "being"}
_MODAL = {"will", "would", "can", "could", "may", "might", "shall", "should", "must"}
_PRON = {
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
    "them", "mine", "yours", "hers", "ours", "theirs", "who", "whom",
    "what", "everyone", "everything", "someone", "something", "nothing",
}
_CCONJ = {"and", "or", "but", "nor", "yet"}
_SCONJ = {"if", "because", "while", "although", "since", "when", "unless", "whether"}
_INTJ = {"wow", "oh", "hey", "ouch", "alas", "hurray", "yes", "no"}
_ADJ_SUFFIX = ("ful", "ous", "ive", "ish", "able", "ible", "ant", "ent")

_NOMINAL = {"NOUN", "PROPN", "PRON", "NUM"}
_NP_TAGS = _NOMINAL | {"DET", "ADJ"}


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Terminal-punctuation sentence spans; paragraph breaks are hard splits."""
    spans: list[tuple[int, int]] = []
    paragraph_starts = [0]
    for gap in _PARAGRAPH.finditer(text):
        paragraph_starts.append(gap.end())
    paragraph_starts.append(len(text))
    for start, stop in zip(paragraph_starts, paragraph_starts[1:]):
        pos = start
        for match in _SENT_END.finditer(text, start, stop):
            spans.append((pos, match.end()))
            pos = match.end()
        if pos < stop:
            spans.append((pos, stop))
    trimmed = []
    for lo, hi in spans:
        chunk = text[lo:hi]
        left = len(chunk) - len(chunk.lstrip())
        right = len(chunk) - len(chunk.rstrip())
        if lo + left < hi - right:
            trimmed.append((lo + left, hi - right))
    return trimmed


def tokenize(text: str) -> list[tuple[int, int]]:
    return [m.span() for m in _TOKEN.finditer(text)]


def _tag(forms: list[str]) -> list[str]:
    tags: list[str | None] = [None] * len(forms)
    for i, form in enumerate(forms):
        lower = form.lower()
        if not re.search(r"\w", form):
            tags[i] = "PUNCT"
        elif form[0].isdigit():
            tags[i] = "NUM"
        elif lower in _DET:
            tags[i] = "DET"
        elif lower in _ADP:
            tags[i] = "ADP"
        elif lower in _AUX:
            tags[i] = "AUX"
        elif lower in _CCONJ:
            tags[i] = "CCONJ"
        elif lower in _SCONJ:
            tags[i] = "SCONJ"
        elif lower in _INTJ:
            tags[i] = "INTJ"
        elif lower in _PRON:
            tags[i] = "PRON"
        elif lower.endswith("ly") and len(lower) > 3:
            tags[i] = "ADV"
        elif lower.endswith(("ed", "ing")) and len(lower) > 4:
            tags[i] = "VERB"
        elif lower.endswith(_ADJ_SUFFIX) and len(lower) > 4:
            tags[i] = "ADJ"
    seen_verb = any(t == "VERB" for t in tags)
    previous: str | None = None
    for i, form in enumerate(forms):
        if tags[i] is None:
            lower = form.lower()
            if (
                not seen_verb
                and lower.endswith("s")
                and not lower.endswith("ss")
                and len(lower) > 2
                and previous in {"NOUN", "PROPN", "PRON"}
            ):
                tags[i] = "VERB"
                seen_verb = True
            elif form[0].isupper():
                tags[i] = "PROPN"
            else:
                tags[i] = "NOUN"
        if tags[i] != "PUNCT":
            previous = tags[i]
    return [t or "NOUN" for t in tags]


def _lemma(form: str, tag: str) -> str:
    lower = form.lower()
    if tag == "VERB":
        if lower.endswith("ing") and len(lower) > 5:
            return lower[:-3]
        if lower.endswith("ed") and len(lower) > 4:
            return lower[:-2]
        if lower.endswith("s") and not lower.endswith("ss") and len(lower) > 3:
            return lower[:-1]
    if tag == "NOUN" and lower.endswith("s") and not lower.endswith("ss") and len(lower) > 3:
        return lower[:-1]
    if tag in {"PROPN", "NUM", "PUNCT"}:
        return form
    return lower


def _noun_runs(tags: list[str]) -> list[tuple[int, int, int]]:
    """Maximal (start, stop, head) runs of NP-internal tags around a nominal."""
    runs = []
    i = 0
    while i < len(tags):
        if tags[i] in _NP_TAGS:
            j = i
            while j < len(tags) and tags[j] in _NP_TAGS:
                j += 1
            nominals = [k for k in range(i, j) if tags[k] in _NOMINAL]
            if nominals:
                runs.append((i, j, nominals[-1]))
            i = j
        else:
            i += 1
    return runs


def _dependencies(forms: list[str], tags: list[str]) -> tuple[list[int], list[str]]:
    """Positional arc assignment; heads are 0-based with -1 marking the root."""
    n = len(forms)
    heads = [None] * n
    rels = [None] * n
    runs = _noun_runs(tags)
    run_of_head = {head: (start, stop) for start, stop, head in runs}

    predicates = [i for i in range(n) if tags[i] == "VERB"]
    copular = False
    if not predicates:
        predicates = [i for i in range(n) if tags[i] == "AUX"]
        copular = bool(predicates)
    if predicates:
        root = predicates[0]
    elif runs:
        root = runs[0][2]
    else:
        root = 0
    heads[root], rels[root] = -1, "root"

    def clause_gap(lo: int, hi: int) -> list[str]:
        return [tags[k] for k in range(lo + 1, hi)]

    # Link non-main predicates to the root.
    for v in predicates[1:]:
        prev = max(p for p in predicates if p < v)
        between = set(clause_gap(prev, v))
        if ";" in {forms[k] for k in range(prev + 1, v)}:
            rels[v] = "parataxis"
        elif "SCONJ" in between:
            rels[v] = "advcl"
        elif "CCONJ" in between:
            rels[v] = "conj"
        else:
            rels[v] = "ccomp"
        heads[v] = root
    if predicates and any(tags[k] == "SCONJ" for k in range(0, predicates[0])):
        # A fronted subordinate clause: the first predicate is the dependent
        # one, the last becomes the root.
        first, last = predicates[0], predicates[-1]
        if first != last:
            heads[last], rels[last] = -1, "root"
            heads[first], rels[first] = last, "advcl"
            for v in predicates[1:-1]:
                heads[v] = last
            root = last

    passive = set()
    for v in predicates:
        if forms[v].lower().endswith(("ed", "en")) and any(
            tags[a] == "AUX" and forms[a].lower() in _BE and a < v and all(
                tags[k] in {"AUX", "ADV"} for k in range(a + 1, v)
            )
            for a in range(max(0, v - 3), v)
        ):
            passive.add(v)

    # Subjects: the noun run ending immediately before each predicate.
    subject_heads = set()
    for v in predicates:
        for start, stop, head in reversed(runs):
            if stop <= v and all(t in {"AUX", "ADV", "SCONJ"} for t in tags[stop:v]):
                if heads[head] is None:
                    rel = "nsubj:pass" if v in passive else "nsubj"
                    heads[head], rels[head] = v, rel
                    subject_heads.add(head)
                break

    # Objects: remaining runs, grouped by the nearest preceding predicate.
    by_pred: dict[int, list[tuple[int, int, int]]] = {}
    for start, stop, head in runs:
        if heads[head] is not None or head == root:
            continue
        before = [p for p in predicates if p < start]
        if before:
            by_pred.setdefault(before[-1], []).append((start, stop, head))
    for v, grouped in by_pred.items():
        plain = []
        for start, stop, head in grouped:
            prev = start - 1
            if prev >= 0 and tags[prev] == "ADP":
                heads[prev], rels[prev] = head, "case"
                heads[head], rels[head] = v, "obl"
            elif prev >= 0 and tags[prev] == "CCONJ" and plain:
                heads[head], rels[head] = plain[-1], "conj"
                heads[prev], rels[prev] = head, "cc"
            else:
                plain.append(head)
        if len(plain) >= 2:
            labels = ["iobj", "obj"] + ["obl"] * (len(plain) - 2)
        else:
            labels = ["attr" if copular else "obj"] * len(plain)
        for head, rel in zip(plain, labels):
            heads[head], rels[head] = v, rel

    # Run-internal attachments.
    for start, stop, head in runs:
        for k in range(start, stop):
            if k == head or heads[k] is not None:
                continue
            if tags[k] == "DET":
                heads[k], rels[k] = head, "det"
            elif tags[k] == "ADJ":
                heads[k], rels[k] = head, "amod"
            elif tags[k] == "NUM":
                heads[k], rels[k] = head, "nummod"
            else:
                heads[k], rels[k] = head, "compound"
        if heads[head] is None and head != root:
            heads[head], rels[head] = root, "dep"

    # Everything else.
    for i in range(n):
        if heads[i] is not None:
            continue
        tag = tags[i]
        if tag == "PUNCT":
            heads[i], rels[i] = root, "punct"
        elif tag == "AUX":
            target = next((v for v in predicates if v > i), root)
            rel = "aux:pass" if target in passive and forms[i].lower() in _BE else "aux"
            heads[i], rels[i] = target, (rel if target != i else "aux")
        elif tag == "ADV":
            target = next((v for v in reversed(predicates) if v < i), None)
            if target is None:
                target = next((v for v in predicates if v > i), root)
            heads[i], rels[i] = target, "advmod"
        elif tag == "SCONJ":
            target = next((v for v in predicates if v > i), root)
            heads[i], rels[i] = target, "mark"
        elif tag == "CCONJ":
            target = next((v for v in predicates if v > i), root)
            heads[i], rels[i] = target, "cc"
        elif tag == "ADP":
            heads[i], rels[i] = root, "case"
        elif tag == "INTJ":
            heads[i], rels[i] = root, "discourse"
        else:
            heads[i], rels[i] = root, "dep"

    # Defensive: break any accidental cycle by re-rooting the offender.
    for i in range(n):
        seen = set()
        k = i
        while k != -1 and heads[k] != -1:
            if k in seen:
                heads[i] = root if i != root else -1
                break
            seen.add(k)
            k = heads[k]
    return heads, rels


def _xpos(tag: str, form: str) -> str:
    lower = form.lower()
    if tag == "PUNCT":
        if form in {"(", "["}:
            return "-LRB-"
        if form in {")", "]"}:
            return "-RRB-"
        if form == ",":
            return ","
        if form in {";", ":", "--", "-"}:
            return ":"
        if form in {'"', "'", "“", "”", "‘", "’", "`"}:
            return "''"
        return "."
    if tag == "NOUN":
        return "NNS" if lower.endswith("s") and not lower.endswith("ss") else "NN"
    if tag == "PROPN":
        return "NNP"
    if tag == "PRON":
        return "PRP"
    if tag == "VERB":
        if lower.endswith("ing"):
            return "VBG"
        if lower.endswith("ed"):
            return "VBD"
        if lower.endswith("s"):
            return "VBZ"
        return "VB"
    if tag == "AUX":
        if lower in _MODAL:
            return "MD"
        if lower in {"was", "were", "had", "did"}:
            return "VBD"
        return "VBZ" if lower.endswith("s") else "VBP"
    return {
        "ADJ": "JJ", "ADV": "RB", "ADP": "IN", "DET": "DT", "CCONJ": "CC",
        "SCONJ": "IN", "NUM": "CD", "INTJ": "UH", "PART": "RP",
    }.get(tag, "NN")


def _tree(forms: list[str], tags: list[str]) -> str:
    """Chunk-based bracketed parse over the same noun runs as the deps."""
    n = len(forms)
    runs = {start: (stop, head) for start, stop, head in _noun_runs(tags)}
    predicates = [i for i in range(n) if tags[i] == "VERB"]
    if not predicates:
        predicates = [i for i in range(n) if tags[i] == "AUX"]

    def leaf(i: int) -> str:
        return f"({_xpos(tags[i], forms[i])} {escape_leaf(forms[i])})"

    def emit_np(start: int) -> tuple[str, int]:
        stop, _ = runs[start]
        return "(NP " + " ".join(leaf(k) for k in range(start, stop)) + ")", stop

    def emit_chunks(start: int, stop: int) -> list[str]:
        parts = []
        i = start
        while i < stop:
            if tags[i] == "ADP" and i + 1 in runs and runs[i + 1][0] <= stop:
                np, nxt = emit_np(i + 1)
                parts.append(f"(PP {leaf(i)} {np})")
                i = nxt
            elif i in runs and runs[i][0] <= stop:
                np, nxt = emit_np(i)
                parts.append(np)
                i = nxt
            else:
                parts.append(leaf(i))
                i += 1
        return parts

    if predicates:
        vp_start = predicates[0]
        while vp_start > 0 and tags[vp_start - 1] in {"AUX", "ADV"}:
            vp_start -= 1
        vp_end = n
        while vp_end > vp_start and tags[vp_end - 1] == "PUNCT":
            vp_end -= 1
        if vp_end > vp_start:
            parts = emit_chunks(0, vp_start)
            parts.append("(VP " + " ".join(emit_chunks(vp_start, vp_end)) + ")")
            parts.extend(leaf(k) for k in range(vp_end, n))
        else:
            parts = emit_chunks(0, n)
    else:
        parts = emit_chunks(0, n)
    return "(S " + " ".join(parts) + ")"


class RuleBackend:
    """Parses text deterministically with no external dependencies."""

    name = "rule"

    def __init__(self, dep_model: str = "rule", const_model: str = "rule") -> None:
        self.dep_model = dep_model
        self.const_model = const_model

    def parse(self, text: str) -> list[ParsedSentence]:
        sentences = []
        for lo, hi in split_sentences(text):
            surface = text[lo:hi]
            spans = tokenize(surface)
            if not spans:
                continue
            forms = [surface[a:b] for a, b in spans]
            tags = _tag(forms)
            heads, rels = _dependencies(forms, tags)
            sentences.append(
                ParsedSentence(
                    text=surface,
                    forms=tuple(forms),
                    lemmas=tuple(_lemma(f, t) for f, t in zip(forms, tags)),
                    upos=tuple(tags),
                    heads=tuple(0 if h == -1 else h + 1 for h in heads),
                    deprels=tuple(rels),
                    tree=_tree(forms, tags),
                )
            )
        return sentences
