"""Command-line interface: validate, stats, forge, score.

Exit codes: 0 success, 1 validation/data failure, 2 usage/IO failure.
Options come from flags plus an optional JSON config file; flags win.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import __version__
from .annotations import AnnotatedCorpus, load_annotations
from .corpus import Document, load_corpus
from .depgraph import extract_tuples
from .errors import ConfigError, DataError
from .generate import (
    CANONICAL_TASK_ORDER,
    TaskCounts,
    TaskKind,
    forge_dataset,
)
from .render import ChatTemplate, prompt_completion_record, raw_record, rendered_record
from .treebank import DEFAULT_PHRASE_LABELS, extract_phrases
from .evaluate import score_file

MAX_REPORTED_VIOLATIONS = 20

# Config-file keys shared by validate/stats/forge; flags override these.
_CONFIG_DEFAULTS = {
    "conllu": None,
    "trees": None,
    "tasks": None,
    "master_seed": 0,
    "phrase_labels": "NP,VP,PP",
    "span_mode": "head-token",
    "per_sentence": 1,
    "chunk_size": 512,
    "user_open": "|user| ",
    "assistant_open": " |assistant| ",
    "closer": "",
    "format": "raw",
    "workers": None,
    "clausal_predicates": True,
    "expand_conjuncts": False,
    "output": None,
}

# The behavioral subset that goes into the reproducibility digest
# (paths are covered separately by input-content digests).
_DIGEST_KEYS = (
    "tasks",
    "master_seed",
    "phrase_labels",
    "span_mode",
    "per_sentence",
    "chunk_size",
    "user_open",
    "assistant_open",
    "closer",
    "format",
    "clausal_predicates",
    "expand_conjuncts",
)


@dataclass
class ForgeConfig:
    corpus_path: str
    conllu_path: str | None
    trees_path: str | None
    tasks: list[TaskKind]
    master_seed: int
    phrase_labels: frozenset[str]
    span_mode: str
    per_sentence: int
    chunk_size: int
    template: ChatTemplate
    output_path: str | None
    format: str
    workers: int
    clausal_predicates: bool = True
    expand_conjuncts: bool = False
    raw_values: dict = field(default_factory=dict)

    def digest(self) -> str:
        payload = {k: self.raw_values[k] for k in _DIGEST_KEYS}
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = set(payload) - set(_CONFIG_DEFAULTS)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {sorted(unknown)}")
    return payload


def _parse_tasks(value) -> list[TaskKind]:
    if value is None:
        return list(CANONICAL_TASK_ORDER)
    names = value if isinstance(value, list) else [v for v in value.split(",") if v]
    tasks = []
    for name in names:
        try:
            tasks.append(TaskKind(name.strip()))
        except ValueError:
            known = ",".join(t.value for t in CANONICAL_TASK_ORDER)
            raise ConfigError(f"unknown task {name!r} (choose from {known})") from None
    return [t for t in CANONICAL_TASK_ORDER if t in set(tasks)]


def _parse_labels(value) -> frozenset[str]:
    if isinstance(value, list):
        labels = frozenset(v.strip() for v in value if v.strip())
    else:
        labels = frozenset(v.strip() for v in value.split(",") if v.strip())
    if not labels:
        raise ConfigError("phrase label allow-list is empty")
    return labels


def build_forge_config(args: argparse.Namespace, require_tasks: bool) -> ForgeConfig:
    """Merge flags over config-file values over defaults, then validate."""
    file_cfg = _load_config_file(getattr(args, "config", None))

    def resolve(name: str):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return _CONFIG_DEFAULTS[name]

    values = {name: resolve(name) for name in _CONFIG_DEFAULTS}
    tasks = _parse_tasks(values["tasks"]) if (values["tasks"] is not None or require_tasks) else []
    master_seed = int(values["master_seed"])
    if not 0 <= master_seed < 2**64:
        raise ConfigError(f"master_seed must fit in 64 bits, got {master_seed}")
    per_sentence = int(values["per_sentence"])
    if per_sentence < 1:
        raise ConfigError(f"per_sentence must be >= 1, got {per_sentence}")
    chunk_size = int(values["chunk_size"])
    if chunk_size < 1:
        raise ConfigError(f"chunk_size must be >= 1, got {chunk_size}")
    span_mode = values["span_mode"]
    if span_mode not in ("head-token", "subtree"):
        raise ConfigError(f"span_mode must be head-token or subtree, got {span_mode!r}")
    out_format = values["format"]
    if out_format not in ("raw", "rendered", "prompt-completion"):
        raise ConfigError(f"unknown output format {out_format!r}")
    workers = values["workers"]
    workers = os.cpu_count() or 1 if workers is None else int(workers)
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")

    config = ForgeConfig(
        corpus_path=args.corpus,
        conllu_path=values["conllu"],
        trees_path=values["trees"],
        tasks=tasks,
        master_seed=master_seed,
        phrase_labels=_parse_labels(values["phrase_labels"]),
        span_mode=span_mode,
        per_sentence=per_sentence,
        chunk_size=chunk_size,
        template=ChatTemplate(
            user_open=values["user_open"],
            assistant_open=values["assistant_open"],
            closer=values["closer"],
        ),
        output_path=values["output"],
        format=out_format,
        workers=workers,
        clausal_predicates=bool(values["clausal_predicates"]),
        expand_conjuncts=bool(values["expand_conjuncts"]),
        raw_values={
            **values,
            "tasks": [t.value for t in tasks],
            "master_seed": master_seed,
            "phrase_labels": sorted(_parse_labels(values["phrase_labels"])),
            "per_sentence": per_sentence,
            "chunk_size": chunk_size,
        },
    )
    _check_task_requirements(config)
    return config


def _check_task_requirements(config: ForgeConfig) -> None:
    requested = set(config.tasks)
    if TaskKind.MPP in requested and config.trees_path is None:
        raise ConfigError("task MPP needs a constituency tree file (--trees)")
    if {TaskKind.NL2KG, TaskKind.KG2NL} & requested and config.conllu_path is None:
        raise ConfigError("tasks NL2KG/KG2NL need a dependency file (--conllu)")
    if TaskKind.MTP in requested and config.conllu_path is None and config.trees_path is None:
        raise ConfigError("task MTP needs a segmentation source (--conllu or --trees)")


def _print_violations(violations) -> None:
    for violation in violations[:MAX_REPORTED_VIOLATIONS]:
        print(str(violation), file=sys.stderr)
    if len(violations) > MAX_REPORTED_VIOLATIONS:
        remaining = len(violations) - MAX_REPORTED_VIOLATIONS
        print(f"... and {remaining} more violation(s)", file=sys.stderr)
    print(f"FAIL: {len(violations)} violation(s)", file=sys.stderr)


def cmd_validate(args: argparse.Namespace) -> int:
    config = build_forge_config(args, require_tasks=False)
    documents = load_corpus(config.corpus_path)
    corpus, violations = load_annotations(
        documents, conllu_path=config.conllu_path, trees_path=config.trees_path
    )
    if violations:
        _print_violations(violations)
        return 1
    sentence_count = len(corpus.sentence_order())
    print(f"OK: {len(documents)} document(s), {sentence_count} aligned sentence(s)")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    config = build_forge_config(args, require_tasks=False)
    documents = load_corpus(config.corpus_path, allow_empty=True)
    corpus, violations = load_annotations(
        documents, conllu_path=config.conllu_path, trees_path=config.trees_path
    )
    if violations:
        _print_violations(violations)
        return 1
    order = corpus.sentence_order()
    if order:
        token_count = sum(len(s.tokens) for s in order)
    else:
        token_count = sum(len(doc.text.split()) for doc in documents)
    print(f"documents: {len(documents)}")
    print(f"sentences: {len(order)}")
    print(f"tokens: {token_count}")
    if corpus.trees and order:
        bearing = sum(
            1
            for s in order
            if extract_phrases(
                corpus.trees[(s.doc_id, s.sent_index)], s, config.phrase_labels
            )
        )
        print(
            f"phrase-bearing sentences: {bearing / len(order):.4f} ({bearing}/{len(order)})"
        )
    if corpus.graphs and order:
        histogram: dict[int, int] = {}
        bearing = 0
        for s in order:
            tuples = extract_tuples(
                corpus.graphs[(s.doc_id, s.sent_index)],
                s,
                span_mode=config.span_mode,
                clausal_predicates=config.clausal_predicates,
                expand_conjuncts=config.expand_conjuncts,
            )
            histogram[len(tuples)] = histogram.get(len(tuples), 0) + 1
            if tuples:
                bearing += 1
        print(
            f"tuple-bearing sentences: {bearing / len(order):.4f} ({bearing}/{len(order)})"
        )
        parts = " ".join(f"{k}:{histogram[k]}" for k in sorted(histogram))
        print(f"tuples per sentence: {parts}")
    return 0


def _forge_one_document(payload) -> tuple[list, dict]:
    doc, sentences, graphs, trees, tasks, master_seed, options = payload
    sub = AnnotatedCorpus(
        documents=[doc],
        sentences={doc.doc_id: sentences} if sentences else {},
        graphs=graphs,
        trees=trees,
    )
    return forge_dataset(sub, set(tasks), master_seed, **options)


def _run_forge(config: ForgeConfig, corpus: AnnotatedCorpus):
    options = {
        "per_sentence": config.per_sentence,
        "chunk_size": config.chunk_size,
        "phrase_labels": config.phrase_labels,
        "span_mode": config.span_mode,
        "clausal_predicates": config.clausal_predicates,
        "expand_conjuncts": config.expand_conjuncts,
    }
    payloads = []
    for doc in corpus.documents:
        sentences = corpus.sentences.get(doc.doc_id, [])
        keys = {(doc.doc_id, s.sent_index) for s in sentences}
        payloads.append(
            (
                doc,
                sentences,
                {k: v for k, v in corpus.graphs.items() if k in keys},
                {k: v for k, v in corpus.trees.items() if k in keys},
                config.tasks,
                config.master_seed,
                options,
            )
        )
    if config.workers > 1 and len(payloads) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_forge_one_document, payloads))
    else:
        results = [_forge_one_document(p) for p in payloads]

    # Reassemble in canonical task-major order across documents.
    examples = []
    counts = {task: TaskCounts() for task in config.tasks}
    for task in config.tasks:
        for per_doc_examples, per_doc_counts in results:
            examples.extend(e for e in per_doc_examples if e.task is task)
            if task in per_doc_counts:
                counts[task].emitted += per_doc_counts[task].emitted
                counts[task].skipped += per_doc_counts[task].skipped
    return examples, counts


def _sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _atomic_write_lines(path: str, lines) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=directory, delete=False, suffix=".tmp"
    )
    try:
        with handle:
            for line in lines:
                handle.write(line)
                handle.write("\n")
        os.replace(handle.name, path)
    except BaseException:
        try:
            os.unlink(handle.name)
        except OSError:
            pass
        raise


def cmd_forge(args: argparse.Namespace) -> int:
    config = build_forge_config(args, require_tasks=True)
    if not config.tasks:
        raise ConfigError("no tasks requested")
    if config.output_path is None:
        raise ConfigError("forge needs an output path (--output)")
    documents = load_corpus(config.corpus_path)
    corpus, violations = load_annotations(
        documents, conllu_path=config.conllu_path, trees_path=config.trees_path
    )
    if violations:
        _print_violations(violations)
        return 1
    examples, counts = _run_forge(config, corpus)

    inputs = {"corpus": _sha256_file(config.corpus_path)}
    if config.conllu_path:
        inputs["conllu"] = _sha256_file(config.conllu_path)
    if config.trees_path:
        inputs["trees"] = _sha256_file(config.trees_path)
    header = {
        "header": {
            "tool": "parseforge",
            "version": __version__,
            "config_digest": config.digest(),
            "master_seed": config.master_seed,
            "inputs": inputs,
        }
    }

    if config.format == "raw":
        to_record = raw_record
    elif config.format == "rendered":
        to_record = lambda e: rendered_record(e, config.template)  # noqa: E731
    else:
        to_record = lambda e: prompt_completion_record(e, config.template)  # noqa: E731

    lines = [json.dumps(header, ensure_ascii=False)]
    lines.extend(json.dumps(to_record(e), ensure_ascii=False) for e in examples)
    _atomic_write_lines(config.output_path, lines)

    for task in config.tasks:
        print(
            f"{task.value}: emitted {counts[task].emitted}, skipped {counts[task].skipped}"
        )
    print(f"wrote {len(examples)} example(s) to {config.output_path}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    file_cfg = _load_score_config(getattr(args, "config", None))
    unicode_tokens = args.unicode_tokens
    if unicode_tokens is None:
        unicode_tokens = file_cfg.get("unicode_tokens", True)
    stemmer = args.stemmer
    if stemmer is None:
        stemmer = file_cfg.get("stemmer")
    report = score_file(
        args.predictions,
        unicode_tokens=bool(unicode_tokens),
        stemmer=stemmer,
        keep_records=args.per_record,
    )
    if args.per_record:
        for index, score in enumerate(report.records):
            line = {
                "index": index,
                "p": round(100.0 * score.precision, 2),
                "r": round(100.0 * score.recall, 2),
                "f1": round(100.0 * score.f1, 2),
            }
            print(json.dumps(line))
    if args.json:
        machine = {
            "count": report.count,
            "mean_p": report.mean_p,
            "mean_r": report.mean_r,
            "mean_f1": report.mean_f1,
        }
        print(json.dumps(machine))
    else:
        print(f"count:   {report.count}")
        print(f"mean P:  {report.mean_p:.2f}")
        print(f"mean R:  {report.mean_r:.2f}")
        print(f"mean F1: {report.mean_f1:.2f}")
    return 0


def _load_score_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = set(payload) - {"unicode_tokens", "stemmer"}
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {sorted(unknown)}")
    return payload


def _add_annotation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("corpus", help="corpus file (JSON lines with id/text)")
    parser.add_argument("--conllu", help="dependency annotation file (CoNLL-U)")
    parser.add_argument("--trees", help="constituency annotation file (one tree per line)")
    parser.add_argument("--tasks", help="comma-separated task subset (NTP,MTP,MPP,NL2KG,KG2NL)")
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--phrase-labels", dest="phrase_labels", help="phrase allow-list (default NP,VP,PP)")
    parser.add_argument("--span-mode", dest="span_mode", choices=["head-token", "subtree"], help="tuple subject/object span mode")
    parser.add_argument(
        "--no-clausal-predicates",
        dest="clausal_predicates",
        action="store_const",
        const=False,
        help="restrict tuple predicates to the root token",
    )
    parser.add_argument(
        "--expand-conjuncts",
        dest="expand_conjuncts",
        action="store_const",
        const=True,
        help="also pair conjuncts of subjects/objects",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parseforge",
        description="Forge instruction-format pretraining data from parsed corpora.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check corpus/annotation alignment")
    _add_annotation_flags(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_stats = sub.add_parser("stats", help="report corpus and annotation statistics")
    _add_annotation_flags(p_stats)
    p_stats.set_defaults(func=cmd_stats)

    p_forge = sub.add_parser("forge", help="write a training dataset")
    _add_annotation_flags(p_forge)
    p_forge.add_argument("--output", "-o", help="output dataset path (JSON lines)")
    p_forge.add_argument("--master-seed", dest="master_seed", type=int, help="64-bit seed for all selections")
    p_forge.add_argument("--per-sentence", dest="per_sentence", type=int, help="independent draws per sentence for MTP/MPP")
    p_forge.add_argument("--chunk-size", dest="chunk_size", type=int, help="NTP chunk size in whitespace tokens")
    p_forge.add_argument("--format", choices=["raw", "rendered", "prompt-completion"], help="output record layout")
    p_forge.add_argument("--user-open", dest="user_open", help="user role marker")
    p_forge.add_argument("--assistant-open", dest="assistant_open", help="assistant role marker")
    p_forge.add_argument("--closer", help="suffix after the response")
    p_forge.add_argument("--workers", type=int, help="worker processes (default: cpu count)")
    p_forge.set_defaults(func=cmd_forge)

    p_score = sub.add_parser("score", help="score predictions with ROUGE-L F1")
    p_score.add_argument("predictions", help="JSON lines with doc_id/question/prediction/reference")
    p_score.add_argument("--config", help="JSON config file; flags override its values")
    p_score.add_argument(
        "--ascii-tokens",
        dest="unicode_tokens",
        action="store_const",
        const=False,
        help="restrict tokens to ASCII alphanumerics",
    )
    p_score.add_argument(
        "--unicode-tokens",
        dest="unicode_tokens",
        action="store_const",
        const=True,
        help="treat all Unicode alphanumerics as token characters (default)",
    )
    p_score.add_argument("--stemmer", choices=["porter"], help="stem tokens before matching")
    p_score.add_argument("--per-record", dest="per_record", action="store_true", help="emit one score line per record")
    p_score.add_argument("--json", action="store_true", help="emit the aggregate as a JSON record")
    p_score.set_defaults(func=cmd_score)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
