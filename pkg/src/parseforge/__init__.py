"""Forge instruction-format continual-pretraining data from parsed corpora."""

from __future__ import annotations

__version__ = "0.1.0"

from .corpus import Document, QARecord, Sentence, Token, attach_sentences, load_corpus, load_qa
from .errors import (
    AlignmentError,
    ConfigError,
    ConlluError,
    CorpusError,
    DataError,
    TreeError,
)

__all__ = [
    "__version__",
    "AlignmentError",
    "ConfigError",
    "ConlluError",
    "CorpusError",
    "DataError",
    "Document",
    "QARecord",
    "Sentence",
    "Token",
    "TreeError",
    "attach_sentences",
    "load_corpus",
    "load_qa",
]
