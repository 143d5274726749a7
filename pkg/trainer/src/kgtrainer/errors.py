class KgTrainerError(Exception):
    """Base class for trainer-bridge errors."""


class SentinelRemapError(KgTrainerError):
    pass


class CorpusFormatError(KgTrainerError):
    pass


class MissingReferences(KgTrainerError):
    pass


class DecodeError(KgTrainerError):
    pass
