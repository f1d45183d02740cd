"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all densistream errors."""


class EmptyDocumentError(EngineError):
    """Raised when a document carries no descriptors."""


class CorpusFormatError(EngineError):
    """Malformed corpus line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateDocumentError(EngineError):
    """A doc_id was ingested twice."""


class UnknownNodeError(EngineError):
    """A node id that is not present in the graph."""


class CurationError(EngineError):
    """Invalid curation action (cross-component merge, empty label, ...)."""


class NonTerminationError(EngineError):
    """Defensive guard: label propagation exceeded its iteration bound."""
