"""Transformer toolchain backend: spaCy dependencies + benepar constituency."""

from __future__ import annotations

import re

from .base import ParsedSentence


class BackendUnavailable(RuntimeError):
    """Raised when the spaCy/benepar stack or its models cannot be loaded."""


_WS = re.compile(r"\s+")


class SpacyBackend:
    """Parses with a spaCy pipeline and a benepar constituency component.

    Models are loaded once per process; `parse` accepts one text chunk and
    returns its sentences in order.  Tree strings come from benepar and are
    re-flattened to single-line form with PTB-escaped leaves.
    """

    name = "spacy"

    def __init__(
        self, dep_model: str = "en_core_web_trf", const_model: str = "benepar_en3"
    ) -> None:
        self.dep_model = dep_model
        self.const_model = const_model
        try:
            import benepar  # noqa: F401
            import spacy
        except ImportError as exc:
            raise BackendUnavailable(f"spaCy/benepar not installed: {exc}") from exc
        try:
            self._nlp = spacy.load(dep_model)
            self._nlp.add_pipe("benepar", config={"model": const_model})
        except Exception as exc:  # model downloads are environment-specific
            raise BackendUnavailable(f"cannot load {dep_model}/{const_model}: {exc}") from exc

    def parse(self, text: str) -> list[ParsedSentence]:
        sentences = []
        for sent in self._nlp(text).sents:
            tokens = [t for t in sent if not _WS.fullmatch(t.text)]
            if not tokens:
                continue
            offset = tokens[0].i
            heads = []
            for tok in tokens:
                if tok.head is tok or tok.dep_ == "ROOT":
                    heads.append(0)
                else:
                    heads.append(tok.head.i - offset + 1)
            deprels = ["root" if h == 0 else t.dep_ for h, t in zip(heads, tokens)]
            tree = _WS.sub(" ", sent._.parse_string).strip()
            sentences.append(
                ParsedSentence(
                    text=sent.text.strip(),
                    forms=tuple(t.text for t in tokens),
                    lemmas=tuple(t.lemma_ or t.text for t in tokens),
                    upos=tuple(t.pos_ for t in tokens),
                    heads=tuple(heads),
                    deprels=tuple(deprels),
                    tree=tree,
                )
            )
        return sentences
