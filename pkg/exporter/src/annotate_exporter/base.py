"""Shared backend contract: what a parser must produce per sentence."""

from __future__ import annotations

from dataclasses import dataclass

# Penn-Treebank escapes applied to bracket characters in tree leaf position.
PTB_ESCAPES = {
    "(": "-LRB-",
    ")": "-RRB-",
    "[": "-LSB-",
    "]": "-RSB-",
    "{": "-LCB-",
    "}": "-RCB-",
}


def escape_leaf(form: str) -> str:
    return PTB_ESCAPES.get(form, form)


@dataclass(frozen=True)
class ParsedSentence:
    """One parsed sentence, ready to serialize.

    `heads` uses CoNLL-U numbering: 0 for the root, otherwise the 1-based id
    of the head token.  `tree` is a single-line bracketed constituency parse
    whose leaves are the PTB-escaped token forms, in order.
    """

    text: str
    forms: tuple[str, ...]
    lemmas: tuple[str, ...]
    upos: tuple[str, ...]
    heads: tuple[int, ...]
    deprels: tuple[str, ...]
    tree: str

    def __post_init__(self) -> None:
        n = len(self.forms)
        if not n:
            raise ValueError("sentence with no tokens")
        lengths = {len(self.lemmas), len(self.upos), len(self.heads), len(self.deprels)}
        if lengths != {n}:
            raise ValueError(f"ragged annotation rows for {self.text!r}")
        if sum(1 for h in self.heads if h == 0) != 1:
            raise ValueError(f"expected exactly one root in {self.text!r}")
        if any(h < 0 or h > n for h in self.heads):
            raise ValueError(f"head id out of range in {self.text!r}")
