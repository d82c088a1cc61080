"""Command line entry point: corpus in, annotation directory out."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .export import export_annotations, ExportError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annotate-export",
        description="Parse a corpus and emit CoNLL-U, bracketed trees, and a manifest.",
    )
    parser.add_argument("--version", action="version", version=f"annotate-export {__version__}")
    parser.add_argument("corpus", help="corpus file (JSON lines with id/text)")
    parser.add_argument("out_dir", help="directory for the annotation files")
    parser.add_argument(
        "--backend",
        choices=("spacy", "rule"),
        default="spacy",
        help="parser toolchain (default: spacy)",
    )
    parser.add_argument("--dep-model", help="dependency model name (default: en_core_web_trf)")
    parser.add_argument("--const-model", help="constituency model name (default: benepar_en3)")
    parser.add_argument(
        "--max-chars",
        type=int,
        default=20000,
        help="paragraph-boundary chunk limit fed to the parser (default: 20000)",
    )
    parser.add_argument("--workers", type=int, help="worker processes (default: cpu count)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = export_annotations(
            args.corpus,
            args.out_dir,
            backend=args.backend,
            dep_model=args.dep_model,
            const_model=args.const_model,
            max_chars=args.max_chars,
            workers=args.workers,
        )
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    total = sum(r.get("sentences", 0) for r in manifest[1:])
    print(f"exported {total} sentence(s) from {len(manifest) - 1} document(s) to {args.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
