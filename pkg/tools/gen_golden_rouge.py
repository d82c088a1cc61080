"""Regenerate tests/data/golden_rouge.jsonl.

Oracle for the ROUGE-L scorer, written from the metric's definition with
deliberately different machinery than the package implementation: a
character-scan tokenizer (no regex) and a full-matrix LCS dynamic program
(no bit-parallel row). Vector strings stay within characters where Python's
`str.isalnum` and the regex word class agree.
"""

from __future__ import annotations

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "golden_rouge.jsonl"

WORDS = [
    "the", "cat", "sat", "on", "a", "mat", "rocket", "engine", "data",
    "model", "paris", "Paris", "CAFÉ", "café", "naïve", "42", "3rd",
    "alpha", "beta", "GAMMA", "Zoé", "über", "test", "set", "答案", "問題",
]
SEPARATORS = [" ", "  ", ", ", ". ", " - ", "; ", "! ", " ... ", "\t", "\n"]


def scan_tokens(text: str) -> list[str]:
    """Lowercased maximal runs of alphanumerics (underscore excluded)."""
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum() and ch != "_":
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def matrix_lcs(a: list[str], b: list[str]) -> int:
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(1, rows):
        for j in range(1, cols):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]


def reference_rouge_l(prediction: str, reference: str) -> tuple[float, float, float]:
    pred = scan_tokens(prediction)
    ref = scan_tokens(reference)
    if not pred or not ref:
        return 0.0, 0.0, 0.0
    lcs = matrix_lcs(pred, ref)
    precision = lcs / len(pred)
    recall = lcs / len(ref)
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def random_text(rng: random.Random, max_words: int) -> str:
    count = rng.randrange(0, max_words + 1)
    parts = []
    for i in range(count):
        if i:
            parts.append(rng.choice(SEPARATORS))
        parts.append(rng.choice(WORDS))
    return "".join(parts)


def build_pairs(rng: random.Random) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = [
        ("the cat", "the cat"),
        ("a c", "a b c"),
        ("", "a b"),
        ("a b", ""),
        (",,,", "a"),
        ("The CAT.", "the cat"),
        ("café über 42", "42 café"),
        ("a a a a", "a a"),
    ]
    while len(pairs) < 100:
        prediction = random_text(rng, 30)
        reference = random_text(rng, 30)
        if rng.random() < 0.1:
            reference = prediction  # identical pair
        pairs.append((prediction, reference))
    return pairs


def main() -> None:
    rng = random.Random(91247)
    lines = []
    for prediction, reference in build_pairs(rng):
        precision, recall, f1 = reference_rouge_l(prediction, reference)
        lines.append(
            json.dumps(
                {
                    "prediction": prediction,
                    "reference": reference,
                    "precision": precision,
                    "recall": recall,
                    "f1": f1,
                },
                ensure_ascii=False,
            )
        )
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} golden vectors to {OUT}")


if __name__ == "__main__":
    main()
