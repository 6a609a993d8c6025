"""Alphabet encoding and packed text storage.

The text is stored with several character codes per 64-bit word.  Code 0
is the terminator ``$`` (sorts lowest, unique at the last position); code
size+1 is the pad code ``#`` (sorts highest, never equal to any pattern
character).  The padded length is a multiple of the block size, with the
layout raw + pads + terminator, so the terminator stays the unique last
character for every raw length.
"""

from __future__ import annotations

from . import kernels
from .errors import (
    AlphabetOverflow,
    BadLength,
    BlockTooLarge,
    EmptyText,
    InvalidCode,
    OutOfRange,
)

STORAGE_BITS = 64

SENTINEL = 0


class Alphabet:
    """Bijection between input symbols and codes 1..size.

    Symbols are either all single characters or all integers (the latter
    is what iterating bytes yields).
    """

    __slots__ = ("size", "symbols", "byte_mode", "int_symbols", "_codes")

    def __init__(self, symbols, byte_mode=False):
        self.symbols = tuple(symbols)
        self.size = len(self.symbols)
        self.byte_mode = byte_mode
        self.int_symbols = bool(self.symbols) and isinstance(self.symbols[0], int)
        self._codes = {sym: i + 1 for i, sym in enumerate(self.symbols)}

    @classmethod
    def from_text(cls, raw):
        return cls(sorted(set(raw)))

    @classmethod
    def full_byte_range(cls):
        return cls(range(256), byte_mode=True)

    @property
    def filler(self):
        return self.size + 1

    def code_of(self, sym):
        try:
            return self._codes[sym]
        except KeyError:
            raise InvalidCode(f"symbol {sym!r} is not in the alphabet") from None

    def char_of(self, code):
        if not 1 <= code <= self.size:
            raise InvalidCode(f"code {code} outside [1, {self.size}]")
        return self.symbols[code - 1]

    def codes_or_none(self, seq):
        """Encode a symbol sequence, or None if any symbol is unknown."""
        codes = self._codes
        try:
            return [codes[sym] for sym in seq]
        except KeyError:
            return None


class PackedText:
    """Immutable packed text: raw symbols, pads, and a final terminator."""

    __slots__ = (
        "alphabet",
        "n_raw",
        "n",
        "r",
        "word_capacity",
        "bits_per_char",
        "half",
        "words",
    )

    def __init__(self, alphabet, n_raw, n, r, word_capacity, bits_per_char, words):
        self.alphabet = alphabet
        self.n_raw = n_raw
        self.n = n
        self.r = r
        self.word_capacity = word_capacity
        self.bits_per_char = bits_per_char
        self.half = max(1, r // 2)
        self.words = words

    def char_at(self, pos):
        """Code stored at 1-based position `pos`."""
        if not 1 <= pos <= self.n:
            raise OutOfRange(f"position {pos} outside [1, {self.n}]")
        return kernels.extract_span(
            self.words, self.word_capacity, self.bits_per_char, pos, 1
        )

    def extract(self, pos, length):
        """Packed value of `length` codes starting at `pos` (length <= W)."""
        if length == 0:
            return 0
        if length < 0 or length > self.word_capacity:
            raise OutOfRange(f"span length {length} outside [0, {self.word_capacity}]")
        if pos < 1 or pos + length - 1 > self.n:
            raise OutOfRange(f"span [{pos}, {pos + length - 1}] outside [1, {self.n}]")
        return kernels.extract_span(
            self.words, self.word_capacity, self.bits_per_char, pos, length
        )

    def decode_raw(self):
        """Reconstruct the original input sequence."""
        syms = [self.alphabet.char_of(self.char_at(p)) for p in range(1, self.n_raw + 1)]
        if self.alphabet.int_symbols:
            if all(0 <= s <= 255 for s in syms):
                return bytes(syms)
            return syms
        return "".join(syms)


class PackedPattern:
    """Pattern codes packed with the same layout as the text."""

    __slots__ = ("m", "codes", "words", "word_capacity", "bits_per_char")

    def __init__(self, codes, word_capacity, bits_per_char):
        self.m = len(codes)
        self.codes = tuple(codes)
        self.word_capacity = word_capacity
        self.bits_per_char = bits_per_char
        self.words = kernels.pack_codes(self.codes, word_capacity, bits_per_char)


def bits_needed(sigma):
    """Bits per character for an alphabet of `sigma` symbols plus the two
    reserved codes."""
    return max(1, (sigma + 1).bit_length())


def encode_text(raw, r, alphabet_mode="auto", word_capacity=None):
    """Encode raw input into a PackedText with block size `r`.

    The padded length n is the smallest multiple of r that fits the raw
    text plus the terminator; pads (if any) come before the terminator so
    the last character is unique.
    """
    n_raw = len(raw)
    if n_raw == 0:
        raise EmptyText("cannot index an empty text")
    if r < 1:
        raise ValueError(f"block size must be >= 1, got {r}")
    if alphabet_mode == "auto":
        alphabet = Alphabet.from_text(raw)
    elif alphabet_mode == "byte":
        if not isinstance(raw, (bytes, bytearray)):
            raise InvalidCode("byte alphabet mode requires bytes input")
        alphabet = Alphabet.full_byte_range()
    else:
        raise ValueError(f"unknown alphabet mode {alphabet_mode!r}")

    bits = bits_needed(alphabet.size)
    if word_capacity is None:
        word_capacity = STORAGE_BITS // bits
    if word_capacity < 1 or word_capacity * bits > STORAGE_BITS:
        raise AlphabetOverflow(
            f"{word_capacity} codes of {bits} bits do not fit a "
            f"{STORAGE_BITS}-bit word"
        )
    if r > word_capacity:
        raise BlockTooLarge(f"block size {r} exceeds word capacity {word_capacity}")

    n = ((n_raw + 1 + r - 1) // r) * r
    codes = [alphabet.code_of(sym) for sym in raw]
    codes.extend([alphabet.filler] * (n - n_raw - 1))
    codes.append(SENTINEL)
    words = kernels.pack_codes(codes, word_capacity, bits)
    return PackedText(alphabet, n_raw, n, r, word_capacity, bits, words)


def encode_pattern(text, pattern):
    """Encode a pattern against the text's alphabet.

    Raises InvalidCode when the pattern contains a symbol the alphabet
    does not know.
    """
    codes = [text.alphabet.code_of(sym) for sym in pattern]
    return PackedPattern(codes, text.word_capacity, text.bits_per_char)


def compare_span(text, text_pos, pattern, pat_pos, length):
    """Length of the longest common prefix of text[text_pos..] and
    pattern[pat_pos..], limited to `length` codes (length <= W).

    One word comparison plus constant-time mismatch localization.
    """
    if length == 0:
        return 0
    if length < 0 or length > text.word_capacity:
        raise OutOfRange(f"span length {length} outside [0, {text.word_capacity}]")
    if text_pos < 1 or text_pos + length - 1 > text.n:
        raise OutOfRange(f"text span [{text_pos}, +{length}] out of bounds")
    if pat_pos < 1 or pat_pos + length - 1 > pattern.m:
        raise OutOfRange(f"pattern span [{pat_pos}, +{length}] out of bounds")
    return kernels.span_lcp(
        text.words,
        text.word_capacity,
        text_pos,
        pattern.words,
        pattern.word_capacity,
        pat_pos,
        text.bits_per_char,
        length,
    )


def pack_halfblock(text, letters):
    """Positional base-(size+2) value of exactly `half` letter codes."""
    half = text.half
    if len(letters) != half:
        raise BadLength(f"expected {half} codes, got {len(letters)}")
    base = text.alphabet.size + 2
    value = 0
    for code in letters:
        if not 0 <= code < base:
            raise BadLength(f"code {code} outside [0, {base - 1}]")
        value = value * base + code
    return value
