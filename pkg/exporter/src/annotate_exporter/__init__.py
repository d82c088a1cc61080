"""Corpus annotation exporter: CoNLL-U + bracketed trees from raw text."""

__version__ = "0.1.0"

from .export import ExportError, export_annotations

__all__ = ["ExportError", "export_annotations", "__version__"]
