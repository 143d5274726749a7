"""Exception hierarchy shared by all kgtext modules.

Everything raised on bad input derives from :class:`KgTextError`; I/O
failures derive from :class:`IoError` so callers (and the CLI) can map
validation errors and I/O errors to different exit codes.
"""


class KgTextError(Exception):
    """Base class for all kgtext validation errors."""


class IoError(KgTextError):
    """A file could not be read or written."""


# graph construction

class EmptyGraph(KgTextError):
    pass


class MalformedTriple(KgTextError):
    pass


class DuplicateTriple(KgTextError):
    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


# linearised-text parsing

class UnbalancedBrackets(KgTextError):
    pass


class BadSegmentCount(KgTextError):
    pass


class BadRolePrefix(KgTextError):
    pass


# masking

class GraphTooSmall(KgTextError):
    pass


class SentinelMismatch(KgTextError):
    pass


class AllEntriesSkipped(KgTextError):
    pass


# dataset ingestion

class XmlMalformed(KgTextError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class TripleFieldCount(KgTextError):
    pass


class EmptyEntry(KgTextError):
    pass


class ParseError(KgTextError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class DuplicateId(KgTextError):
    pass


class MissingReferences(KgTextError):
    pass


# experiment protocol

class EmptySelection(KgTextError):
    pass


# metrics

class EmptyCorpus(KgTextError):
    pass


class EmptyReference(KgTextError):
    pass
