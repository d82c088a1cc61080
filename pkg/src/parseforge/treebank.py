"""Bracketed constituency trees: parsing, serialization, phrase extraction."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Sentence
from .errors import TreeError

# Penn-Treebank escapes for tokens that would collide with the bracket syntax.
PTB_ESCAPES = {
    "(": "-LRB-",
    ")": "-RRB-",
    "[": "-LSB-",
    "]": "-RSB-",
    "{": "-LCB-",
    "}": "-RCB-",
}
PTB_UNESCAPES = {v: k for k, v in PTB_ESCAPES.items()}

DEFAULT_PHRASE_LABELS = frozenset({"NP", "VP", "PP"})


@dataclass(frozen=True)
class ConstituencyTree:
    """A nonterminal node; children are sub-trees or leaf token indices.

    `span` is the half-open token-index range covered by the node, so the
    root of a tree over an n-token sentence always spans (0, n).
    """

    label: str
    children: tuple["ConstituencyTree | int", ...]
    span: tuple[int, int]


@dataclass(frozen=True)
class Phrase:
    label: str
    token_start: int
    token_end: int
    text: str


def escape_form(form: str) -> str:
    return PTB_ESCAPES.get(form, form)


def unescape_form(atom: str) -> str:
    return PTB_UNESCAPES.get(atom, atom)


def normalize_label(label: str) -> str:
    """Strip functional suffixes: "NP-SBJ" -> "NP", "NP=2" -> "NP".

    Labels that themselves start with "-" (e.g. "-NONE-") are kept whole.
    """
    if label.startswith("-"):
        return label
    cut = len(label)
    for sep in "-=":
        pos = label.find(sep)
        if pos != -1:
            cut = min(cut, pos)
    return label[:cut]


def _lex(line: str):
    """Yield (position, text) pairs where text is "(", ")", or an atom."""
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield i, ch
            i += 1
        else:
            start = i
            while i < n and not line[i].isspace() and line[i] not in "()":
                i += 1
            yield start, line[start:i]


def parse_bracketed(line: str, sentence: Sentence) -> ConstituencyTree:
    """Parse one bracketed tree line against the sentence it annotates.

    Leaves are matched positionally against the sentence's token forms
    (after PTB unescaping); mismatches report the offending token index,
    and unbalanced parentheses report a character position in the line.
    """
    # Each stack frame: (open_position, label, children accumulated so far).
    stack: list[tuple[int, str | None, list[ConstituencyTree | int]]] = []
    root: ConstituencyTree | None = None
    next_leaf = 0
    n_tokens = len(sentence.tokens)

    for pos, text in _lex(line):
        if root is not None:
            if text == ")":
                raise TreeError(f"unbalanced ')' at position {pos}")
            raise TreeError(f"unexpected content after tree at position {pos}")
        if text == "(":
            stack.append((pos, None, []))
        elif text == ")":
            if not stack:
                raise TreeError(f"unbalanced ')' at position {pos}")
            open_pos, label, children = stack.pop()
            if label is None:
                raise TreeError(f"node opened at position {open_pos} has no label")
            if not children:
                raise TreeError(f"node {label!r} at position {open_pos} has no children")
            node = ConstituencyTree(
                label=label,
                children=tuple(children),
                span=(_span_of(children[0])[0], _span_of(children[-1])[1]),
            )
            for left, right in zip(children, children[1:]):
                if _span_of(left)[1] != _span_of(right)[0]:
                    raise TreeError(f"non-contiguous children under {label!r}")
            if stack:
                stack[-1][2].append(node)
            else:
                root = node
        else:
            if not stack:
                raise TreeError(f"token {text!r} outside any node at position {pos}")
            open_pos, label, children = stack[-1]
            if label is None:
                stack[-1] = (open_pos, text, children)
                continue
            # A bare atom inside a labeled node is a leaf token.
            if next_leaf >= n_tokens:
                raise TreeError(
                    f"tree has more leaves than the {n_tokens} sentence tokens"
                )
            form = unescape_form(text)
            expected = sentence.tokens[next_leaf].form
            if form != expected:
                raise TreeError(
                    f"leaf {next_leaf} reads {form!r} but sentence token is {expected!r}"
                )
            children.append(next_leaf)
            next_leaf += 1

    if stack:
        raise TreeError(f"unbalanced '(' at position {stack[0][0]}")
    if root is None:
        raise TreeError("no tree found on line")
    if next_leaf != n_tokens:
        raise TreeError(f"tree has {next_leaf} leaves but sentence has {n_tokens} tokens")
    return root


def leaf_forms(line: str) -> list[str]:
    """Token forms read off a bracketed line's leaves, in order.

    Structural-only pass (no sentence to check against); used to discover
    a document's segmentation when only a tree file is available.
    """
    forms: list[str] = []
    depth = 0
    expect_label = False
    for pos, text in _lex(line):
        if text == "(":
            depth += 1
            expect_label = True
        elif text == ")":
            depth -= 1
            if depth < 0:
                raise TreeError(f"unbalanced ')' at position {pos}")
            expect_label = False
        elif expect_label:
            expect_label = False
        elif depth > 0:
            forms.append(unescape_form(text))
        else:
            raise TreeError(f"token {text!r} outside any node at position {pos}")
    if depth != 0:
        raise TreeError("unbalanced '(' on line")
    if not forms:
        raise TreeError("no leaves found on line")
    return forms


def _span_of(child: ConstituencyTree | int) -> tuple[int, int]:
    if isinstance(child, int):
        return (child, child + 1)
    return child.span


def serialize_tree(tree: ConstituencyTree, sentence: Sentence) -> str:
    """Canonical single-space serialization with PTB-escaped leaf forms."""
    parts = [tree.label]
    for child in tree.children:
        if isinstance(child, int):
            parts.append(escape_form(sentence.tokens[child].form))
        else:
            parts.append(serialize_tree(child, sentence))
    return "(" + " ".join(parts) + ")"


def extract_phrases(
    tree: ConstituencyTree,
    sentence: Sentence,
    labels: frozenset[str] | set[str] = DEFAULT_PHRASE_LABELS,
) -> list[Phrase]:
    """Collect allow-listed phrases in pre-order (left-to-right, outer first).

    The root span is never a phrase (masking the whole sentence would leave
    nothing to condition on) and (label, span) duplicates keep only their
    first, outermost occurrence.
    """
    phrases: list[Phrase] = []
    seen: set[tuple[str, tuple[int, int]]] = set()

    def visit(node: ConstituencyTree) -> None:
        label = normalize_label(node.label)
        if label in labels and node.span != tree.span and (label, node.span) not in seen:
            seen.add((label, node.span))
            start, end = node.span
            phrases.append(
                Phrase(
                    label=label,
                    token_start=start,
                    token_end=end,
                    text=sentence.token_bytes(start, end),
                )
            )
        for child in node.children:
            if not isinstance(child, int):
                visit(child)

    visit(tree)
    return phrases
