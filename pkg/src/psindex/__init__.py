"""psindex: a succinct pattern-matching index for packed strings.

The text is split into fixed-size blocks; only block-boundary suffixes
are indexed in a sparse suffix tree, and a compacted trie of reversed
blocks resolves the characters preceding each boundary.  Both structures
together answer find-all queries in time linear in the pattern length.
"""

from .blocktrie import DEFAULT_TABLE_BUDGET
from .errors import (
    AlphabetOverflow,
    BadLength,
    BadMagic,
    BlockTooLarge,
    CorruptSection,
    EmptyPattern,
    EmptyText,
    InternalInvariantViolation,
    InvalidCode,
    NoSuchChild,
    OutOfRange,
    PatternTooShort,
    PsindexError,
    VersionMismatch,
)
from .index import FORMAT_VERSION, Index, Occurrence, build_index, find_all
from .kernels import BACKEND as KERNEL_BACKEND
from .storage import deserialize, load_index, save_index, serialize

__version__ = "0.1.0"

__all__ = [
    "AlphabetOverflow",
    "BadLength",
    "BadMagic",
    "BlockTooLarge",
    "CorruptSection",
    "DEFAULT_TABLE_BUDGET",
    "EmptyPattern",
    "EmptyText",
    "FORMAT_VERSION",
    "Index",
    "InternalInvariantViolation",
    "InvalidCode",
    "KERNEL_BACKEND",
    "NoSuchChild",
    "Occurrence",
    "OutOfRange",
    "PatternTooShort",
    "PsindexError",
    "VersionMismatch",
    "build_index",
    "deserialize",
    "find_all",
    "load_index",
    "save_index",
    "serialize",
]
