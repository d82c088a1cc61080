"""Exception hierarchy shared across the package."""


class DataError(Exception):
    """Malformed or inconsistent input data. CLI maps this to exit code 1."""


class CorpusError(DataError):
    """Bad corpus record file."""


class AlignmentError(DataError):
    """Annotation tokens could not be aligned to the raw document text."""


class TreeError(DataError):
    """Malformed bracketed constituency tree."""


class ConlluError(DataError):
    """Malformed CoNLL-U block."""


class ConfigError(Exception):
    """Invalid configuration. CLI maps this to exit code 2."""
