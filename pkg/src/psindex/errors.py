"""Exception hierarchy for the psindex package."""


class PsindexError(Exception):
    """Base class for all errors raised by this package."""


class EmptyText(PsindexError):
    """The input text is empty."""


class BlockTooLarge(PsindexError):
    """Block size exceeds the configured word capacity."""


class AlphabetOverflow(PsindexError):
    """Alphabet codes do not fit the configured word capacity."""


class OutOfRange(PsindexError):
    """A position or length lies outside its permitted range."""


class BadLength(PsindexError):
    """A code sequence has the wrong length or holds an invalid code."""


class EmptyPattern(PsindexError):
    """The query pattern is empty."""


class PatternTooShort(PsindexError):
    """The pattern is shorter than one block; use the short-pattern path."""


class InvalidCode(PsindexError):
    """A pattern character code lies outside the input alphabet."""


class NoSuchChild(PsindexError):
    """A trie node has no child starting with the requested letter."""


class InternalInvariantViolation(PsindexError):
    """A structural invariant that must hold by construction was violated."""


class BadMagic(PsindexError):
    """The stream does not start with the index file magic."""


class VersionMismatch(PsindexError):
    """The index file was written by an incompatible format version."""


class CorruptSection(PsindexError):
    """An index file section failed its checksum or structural validation."""

    def __init__(self, section, message=""):
        self.section = section
        detail = f"section {section!r}"
        if message:
            detail += f": {message}"
        super().__init__(detail)
