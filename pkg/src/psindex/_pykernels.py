"""Pure-Python packed-word kernels.

Words are 64-bit integers holding `width` character codes of `bits` bits
each, first character in the most significant used position.  Because the
layout is most-significant-first and all spans compared are equally long,
integer order on extracted spans equals lexicographic order on the code
sequences.  The compiled backend (``psindex._ckernels``) implements the
same functions with identical semantics.
"""

from array import array

NAME = "python"


def pack_codes(codes, width, bits):
    """Pack a code sequence into 64-bit words, `width` codes per word."""
    words = array("Q")
    word = 0
    fill = 0
    for c in codes:
        word = (word << bits) | c
        fill += 1
        if fill == width:
            words.append(word)
            word = 0
            fill = 0
    if fill:
        words.append(word << (bits * (width - fill)))
    return words


def extract_span(words, width, bits, pos, length):
    """Value of the `length` codes starting at 1-based position `pos`.

    Touches at most two words; `length` must not exceed `width` and the
    span must lie inside the packed sequence.
    """
    idx = pos - 1
    wi, off = divmod(idx, width)
    avail = width - off
    if length <= avail:
        shift = (avail - length) * bits
        return (words[wi] >> shift) & ((1 << (length * bits)) - 1)
    rest = length - avail
    hi = words[wi] & ((1 << (avail * bits)) - 1)
    lo = words[wi + 1] >> ((width - rest) * bits)
    return (hi << (rest * bits)) | lo


def span_lcp(wa, width_a, pa, wb, width_b, pb, bits, length):
    """Longest common prefix (in codes) of two spans, single word compare."""
    va = extract_span(wa, width_a, bits, pa, length)
    vb = extract_span(wb, width_b, bits, pb, length)
    if va == vb:
        return length
    diff = va ^ vb
    return (length * bits - diff.bit_length()) // bits


def long_lcp(wa, width_a, pa, limit_a, wb, width_b, pb, limit_b, bits):
    """Longest common prefix of two spans of arbitrary length.

    Compares chunks of min(width_a, width_b) codes at a time.
    """
    chunk = width_a if width_a < width_b else width_b
    total = 0
    limit = limit_a if limit_a < limit_b else limit_b
    while total < limit:
        step = chunk if chunk < limit - total else limit - total
        got = span_lcp(wa, width_a, pa + total, wb, width_b, pb + total, bits, step)
        total += got
        if got < step:
            break
    return total


def count_entry_prefix(entry, base, half, code, prefix):
    """Occurrences of `code` among the first `prefix` letters of a packed entry.

    Entries use positional base-`base` encoding, first letter most
    significant (the same encoding as pack_halfblock).
    """
    count = 0
    power = base ** (half - 1)
    for _ in range(prefix):
        if entry // power == code:
            count += 1
        entry %= power
        power //= base
    return count


def scan_matches(words, width, bits, value, length, lo, hi):
    """All 1-based positions p in [lo, hi] where the span of `length` codes
    starting at p equals `value`."""
    out = []
    for p in range(lo, hi + 1):
        if extract_span(words, width, bits, p, length) == value:
            out.append(p)
    return out
