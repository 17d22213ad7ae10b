"""Exception hierarchy shared across the toolkit."""


class SieveError(Exception):
    """Base class for all errors raised by this package."""


class DatasetParseError(SieveError):
    """A dataset line could not be parsed at all (bad JSON, bad structure)."""


class SchemaError(SieveError):
    """A parsed record violates a type invariant; message names the field."""


class EmbeddingFormatError(SieveError):
    """An embedding file line does not match the `word v1 ... vd` format."""


class SelectorError(SieveError):
    """A selector failed while scoring; carries (doc_id, sentence_index) context."""


class TrainingError(SieveError):
    """Training could not proceed (no positives, divergence, ...)."""


class AlignmentError(SieveError):
    """Selection results and bundles could not be aligned by question_id."""


class AdapterError(SieveError):
    """Base class for external-process adapter failures."""


class AdapterTimeout(AdapterError):
    """The child process did not answer within the configured timeout."""


class AdapterProtocolError(AdapterError):
    """The child process sent a malformed or mismatched response."""


class AdapterCrash(AdapterError):
    """The child process exited or could not be started."""
