"""Exception taxonomy shared by all ratbase modules."""


class RatbaseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidBaseError(RatbaseError):
    """p/q violates p > q >= 1 or gcd(p, q) = 1."""


class InvalidWordError(RatbaseError):
    """A digit string is not a valid word (digit out of range, leading zero, ...)."""


class InvalidLetterError(RatbaseError):
    """A letter falls outside the expected subalphabet."""


class InvalidSeedError(RatbaseError):
    """A seed word is not usable for the requested stream (e.g. empty seed for a minimal word)."""


class ResourceLimitError(RatbaseError):
    """A configured memory or enumeration cap would be exceeded.

    The message names the cap so callers can report it.
    """


class StreamExhaustedError(RatbaseError):
    """A bounded stream backend ran out of its letter budget."""


class UnsupportedError(RatbaseError):
    """A requested construction does not exist (e.g. infinite de Bruijn word with q < 3)."""


class SnapshotError(RatbaseError):
    """A stream snapshot is malformed or incompatible."""


class AlignmentError(RatbaseError):
    """Ensemble inputs do not share a common sample grid."""


class SchemaError(RatbaseError):
    """A CSV file does not match its declared schema."""
