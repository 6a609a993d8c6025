# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled packed-word kernels.

Mirror of psindex._pykernels with identical semantics; see that module
for the layout contract.  All layouts keep width*bits <= 64 so a span of
up to `width` codes always fits one unsigned 64-bit value.
"""

from array import array

from libc.stdint cimport uint64_t

NAME = "c"


cdef extern from *:
    """
    static inline int psindex_bitlen(unsigned long long x) {
        return x ? 64 - __builtin_clzll(x) : 0;
    }
    """
    int psindex_bitlen(unsigned long long x) nogil


cdef inline uint64_t _mask(int nbits) nogil:
    if nbits >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFFULL
    return ((<uint64_t>1) << nbits) - 1


cdef inline uint64_t _extract(const uint64_t[:] words, int width, int bits,
                              Py_ssize_t pos, int length) nogil:
    cdef Py_ssize_t idx = pos - 1
    cdef Py_ssize_t wi = idx // width
    cdef int off = <int>(idx % width)
    cdef int avail = width - off
    cdef int rest
    cdef uint64_t hi, lo
    if length <= avail:
        return (words[wi] >> ((avail - length) * bits)) & _mask(length * bits)
    rest = length - avail
    hi = words[wi] & _mask(avail * bits)
    lo = words[wi + 1] >> ((width - rest) * bits)
    return (hi << (rest * bits)) | lo


def pack_codes(codes, width, bits):
    """Pack a code sequence into 64-bit words, `width` codes per word."""
    cdef int w = width
    cdef int b = bits
    cdef uint64_t word = 0
    cdef int fill = 0
    cdef uint64_t c
    words = array("Q")
    for item in codes:
        c = <uint64_t>item
        word = (word << b) | c
        fill += 1
        if fill == w:
            words.append(word)
            word = 0
            fill = 0
    if fill:
        words.append(word << (b * (w - fill)))
    return words


def extract_span(const uint64_t[:] words, int width, int bits,
                 Py_ssize_t pos, int length):
    """Value of the `length` codes starting at 1-based position `pos`."""
    return _extract(words, width, bits, pos, length)


cdef inline int _span_lcp(const uint64_t[:] wa, int width_a, Py_ssize_t pa,
                          const uint64_t[:] wb, int width_b, Py_ssize_t pb,
                          int bits, int length) nogil:
    cdef uint64_t va = _extract(wa, width_a, bits, pa, length)
    cdef uint64_t vb = _extract(wb, width_b, bits, pb, length)
    if va == vb:
        return length
    return (length * bits - psindex_bitlen(va ^ vb)) // bits


def span_lcp(const uint64_t[:] wa, int width_a, Py_ssize_t pa,
             const uint64_t[:] wb, int width_b, Py_ssize_t pb,
             int bits, int length):
    """Longest common prefix (in codes) of two spans, single word compare."""
    return _span_lcp(wa, width_a, pa, wb, width_b, pb, bits, length)


def long_lcp(const uint64_t[:] wa, int width_a, Py_ssize_t pa, Py_ssize_t limit_a,
             const uint64_t[:] wb, int width_b, Py_ssize_t pb, Py_ssize_t limit_b,
             int bits):
    """Longest common prefix of two spans of arbitrary length."""
    cdef int chunk = width_a if width_a < width_b else width_b
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t limit = limit_a if limit_a < limit_b else limit_b
    cdef int step, got
    while total < limit:
        step = chunk if chunk < limit - total else <int>(limit - total)
        got = _span_lcp(wa, width_a, pa + total, wb, width_b, pb + total, bits, step)
        total += got
        if got < step:
            break
    return total


def count_entry_prefix(entry, int base, int half, int code, int prefix):
    """Occurrences of `code` among the first `prefix` letters of a packed entry."""
    cdef uint64_t e = <uint64_t>entry
    cdef uint64_t power = 1
    cdef int i, count = 0
    for i in range(half - 1):
        power *= base
    for i in range(prefix):
        if e // power == <uint64_t>code:
            count += 1
        e %= power
        power //= base
    return count


def scan_matches(const uint64_t[:] words, int width, int bits,
                 value, int length, Py_ssize_t lo, Py_ssize_t hi):
    """All 1-based positions p in [lo, hi] whose span equals `value`."""
    cdef uint64_t v = <uint64_t>value
    cdef Py_ssize_t p
    out = []
    for p in range(lo, hi + 1):
        if _extract(words, width, bits, p, length) == v:
            out.append(p)
    return out
