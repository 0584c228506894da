"""Errors raised while ingesting or deriving corpora."""


class CorpusError(Exception):
    """Base class for data-level failures."""


class EmptyCorpusError(CorpusError):
    pass


class DuplicateIdError(CorpusError):
    pass


class DanglingReferenceError(CorpusError):
    pass


class MalformedRowError(CorpusError):
    def __init__(self, file: str, line: int, column: str, reason: str):
        self.file = file
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"{file}:{line}: column {column!r}: {reason}")


class InsufficientDataError(CorpusError):
    """A computation needs corpus data that was withheld or never loaded."""
