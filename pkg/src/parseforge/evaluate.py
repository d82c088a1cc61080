"""ROUGE-L F1 scoring for QA predictions."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from . import porter
from .errors import DataError

_ASCII_TOKEN = re.compile(r"[a-zA-Z0-9]+")
# Unicode alphanumerics minus underscore; superset of the ASCII rule.
_UNICODE_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class PredictionRecord:
    doc_id: str
    question: str
    prediction: str
    reference: str


@dataclass(frozen=True)
class AggregateReport:
    """Percentages rounded to two decimals, plus optional per-record scores."""

    count: int
    mean_p: float
    mean_r: float
    mean_f1: float
    records: tuple[RougeScore, ...] = ()


def tokenize(text: str, unicode_tokens: bool = True, stemmer: str | None = None) -> list[str]:
    """Lowercase and split into alphanumeric runs; optional Porter stemming."""
    pattern = _UNICODE_TOKEN if unicode_tokens else _ASCII_TOKEN
    tokens = pattern.findall(text.lower())
    if stemmer == "porter":
        tokens = [porter.stem(tok) for tok in tokens]
    elif stemmer is not None:
        raise DataError(f"unknown stemmer {stemmer!r}")
    return tokens


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest-common-subsequence length via the bit-parallel row recurrence.

    O(len(b) * len(a)/wordsize); handles the 10k-token range comfortably.
    """
    if not a or not b:
        return 0
    if len(a) > len(b):
        a, b = b, a
    n = len(a)
    full = (1 << n) - 1
    match_masks: dict[str, int] = {}
    for i, tok in enumerate(a):
        match_masks[tok] = match_masks.get(tok, 0) | (1 << i)
    row = 0
    for tok in b:
        x = row | match_masks.get(tok, 0)
        row = x & ~((x - ((row << 1) | 1)) & full)
    return bin(row).count("1")


def rouge_l(
    prediction: str,
    reference: str,
    unicode_tokens: bool = True,
    stemmer: str | None = None,
) -> RougeScore:
    """ROUGE-L precision/recall/F1 over whole-string token sequences."""
    pred = tokenize(prediction, unicode_tokens, stemmer)
    ref = tokenize(reference, unicode_tokens, stemmer)
    if not pred or not ref:
        return RougeScore(0.0, 0.0, 0.0)
    lcs = lcs_length(pred, ref)
    precision = lcs / len(pred)
    recall = lcs / len(ref)
    if precision + recall == 0:
        return RougeScore(precision, recall, 0.0)
    f1 = 2 * precision * recall / (precision + recall)
    return RougeScore(precision, recall, f1)


def load_predictions(path: str) -> list[PredictionRecord]:
    records: list[PredictionRecord] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: not valid JSON: {exc}") from None
            if not isinstance(payload, dict):
                raise DataError(f"{path}:{lineno}: record is not an object")
            try:
                record = PredictionRecord(
                    doc_id=payload["doc_id"],
                    question=payload["question"],
                    prediction=payload["prediction"],
                    reference=payload["reference"],
                )
            except KeyError as exc:
                raise DataError(f"{path}:{lineno}: missing field {exc}") from None
            for name in ("doc_id", "question", "prediction", "reference"):
                if not isinstance(payload[name], str):
                    raise DataError(f"{path}:{lineno}: field {name!r} is not a string")
            if not record.reference:
                raise DataError(f"{path}:{lineno}: empty reference")
            records.append(record)
    if not records:
        raise DataError(f"{path}: no prediction records")
    return records


def score_file(
    path: str,
    unicode_tokens: bool = True,
    stemmer: str | None = None,
    keep_records: bool = False,
) -> AggregateReport:
    """Mean P/R/F1 (as percentages, 2 decimals) over a predictions file."""
    records = load_predictions(path)
    scores = [
        rouge_l(r.prediction, r.reference, unicode_tokens, stemmer) for r in records
    ]
    n = len(scores)
    mean_p = sum(s.precision for s in scores) / n
    mean_r = sum(s.recall for s in scores) / n
    mean_f1 = sum(s.f1 for s in scores) / n
    return AggregateReport(
        count=n,
        mean_p=round(100.0 * mean_p, 2),
        mean_r=round(100.0 * mean_r, 2),
        mean_f1=round(100.0 * mean_f1, 2),
        records=tuple(scores) if keep_records else (),
    )
