"""Brute-force reference implementations for differential testing.

Everything here works on plain symbol sequences with its own tiny code
mapping and deliberately shares no machinery with the index modules: the
terminator is modelled as code 0, pads as code size+1, suffixes are
compared with native sequence comparison, and searching is a quadratic
scan.
"""

from __future__ import annotations


import bisect


def naive_find_all(raw, pattern):
    """All 1-based start positions of `pattern` in `raw` (overlaps allowed)."""
    m = len(pattern)
    n = len(raw)
    if m == 0 or m > n:
        return []
    pat = tuple(pattern)
    return [i + 1 for i in range(n - m + 1) if tuple(raw[i : i + m]) == pat]


def padded_codes(raw, r):
    """Code sequence of the padded text: raw codes, pads, terminator.

    Codes are 1..size in sorted symbol order, pads are size+1, the
    terminator is 0.  Mirrors the documented padding layout without using
    the index encoder.
    """
    symbols = sorted(set(raw))
    code = {sym: i + 1 for i, sym in enumerate(symbols)}
    n = ((len(raw) + 1 + r - 1) // r) * r
    pad = len(symbols) + 1
    out = [code[sym] for sym in raw]
    out.extend([pad] * (n - len(raw) - 1))
    out.append(0)
    return out, len(symbols)


def boundary_suffixes(codes, r):
    """(ordinal, suffix codes) for every block boundary of the padded text."""
    n = len(codes)
    return [(j, tuple(codes[r * j :])) for j in range(n // r)]


def naive_suffix_array(raw, r):
    """Ordinals of the boundary suffixes in lexicographic order."""
    codes, _ = padded_codes(raw, r)
    suffixes = boundary_suffixes(codes, r)
    suffixes.sort(key=lambda item: item[1])
    return [j for j, _ in suffixes]


def text_code_map(raw):
    """The oracle's own symbol -> code mapping for a text."""
    return {sym: i + 1 for i, sym in enumerate(sorted(set(raw)))}


def pattern_codes(raw, pattern):
    """Map pattern symbols to oracle codes; unknown symbols become -1,
    which never equals any text code."""
    code = text_code_map(raw)
    return [code.get(sym, -1) for sym in pattern]


def naive_rank_interval(raw, r, prefix):
    """1-based rank range [lo, hi] of boundary suffixes starting with
    `prefix` (oracle codes); (1, 0) when none do."""
    codes, _ = padded_codes(raw, r)
    suffixes = sorted(suf for _, suf in boundary_suffixes(codes, r))
    prefix = tuple(prefix)
    lo = hi = None
    for rank, suf in enumerate(suffixes, start=1):
        if suf[: len(prefix)] == prefix:
            if lo is None:
                lo = rank
            hi = rank
    if lo is None:
        return (1, 0)
    return (lo, hi)


def is_represented(raw, r, s):
    """True when code string `s` is a prefix of some boundary suffix."""
    codes, _ = padded_codes(raw, r)
    s = tuple(s)
    return any(suf[: len(s)] == s for _, suf in boundary_suffixes(codes, r))


def naive_suffix_link(raw, r, label):
    """(longest represented proper suffix, type) of a represented string.

    Tries stripping 1, 2, ... characters; the empty string (always
    represented by the root) is the final fallback.
    """
    label = tuple(label)
    for i in range(1, len(label)):
        tail = label[i:]
        if is_represented(raw, r, tail):
            return (tail, i)
    return ((), len(label))


def reversed_blocks(raw, r):
    """(ordinal, reversed block codes) pairs: ordinal 0 is the virtual
    all-pad block, ordinal j >= 1 reverses the block ending at boundary j."""
    codes, size = padded_codes(raw, r)
    pad = size + 1
    out = [(0, (pad,) * r)]
    for j in range(1, len(codes) // r):
        block = codes[r * (j - 1) : r * j]
        out.append((j, tuple(reversed(block))))
    return out


def naive_ord(raw, r, label):
    """Ordinals whose reversed block starts with `label`, ordered by the
    rank of the suffix that follows the boundary."""
    sa = naive_suffix_array(raw, r)
    rank_of = {j: i for i, j in enumerate(sa)}
    label = tuple(label)
    hits = [j for j, tau in reversed_blocks(raw, r) if tau[: len(label)] == label]
    hits.sort(key=rank_of.__getitem__)
    return hits


def naive_boundary_hits(raw, r, pattern):
    """For each offset k in [0, r-1]: the rank interval of pattern[k:]
    among boundary suffixes, keeping only non-empty intervals.

    `pattern` is a symbol sequence; mirrors what the tree search must
    report for a pattern of length >= r.
    """
    out = {}
    codes = tuple(pattern_codes(raw, pattern))
    for k in range(min(r, len(codes))):
        lo, hi = naive_rank_interval(raw, r, codes[k:])
        if lo <= hi:
            out[k] = (lo, hi)
    return out


class BoundaryOracle:
    """Per-text reference answering many queries without re-sorting.

    Precomputes the padded codes, the sorted boundary suffixes, and the
    reversed blocks once; membership and interval queries then bisect the
    sorted list.  Code sequences are kept as bytes whenever the codes fit,
    so comparisons run at memcmp speed.  Answers are identical to the
    one-shot naive functions.
    """

    def __init__(self, raw, r):
        self.raw = raw
        self.r = r
        codes, self.size = padded_codes(raw, r)
        if self.size + 2 < 255:
            self.codes = bytes(codes)
            self._top = b"\xff"
            self._miss = self.size + 2  # matches no text code
        else:
            self.codes = tuple(codes)
            self._top = (float("inf"),)
            self._miss = -1
        n = len(codes)
        pairs = [(j, self.codes[r * j :]) for j in range(n // r)]
        pairs.sort(key=lambda item: item[1])
        self.sorted_ordinals = [j for j, _ in pairs]
        self.sorted_suffixes = [suf for _, suf in pairs]
        self.rank_of = {j: i + 1 for i, (j, _) in enumerate(pairs)}
        pad_block = [self.size + 1] * r
        self.blocks = [self._pack(pad_block)] + [
            self._pack(list(reversed(codes[r * (j - 1) : r * j])))
            for j in range(1, n // r)
        ]

    def _pack(self, values):
        return bytes(values) if isinstance(self.codes, bytes) else tuple(values)

    def label(self, ordinal, depth):
        """Prefix of the boundary suffix at `ordinal`, length `depth`."""
        return self.codes[self.r * ordinal : self.r * ordinal + depth]

    def block_label(self, ordinal, depth):
        """Prefix of the reversed block paired with `ordinal`."""
        return self.blocks[ordinal][:depth]

    def encode_pattern(self, pattern):
        """Pattern symbols as oracle codes; unknown symbols become a code
        that matches nothing in the text."""
        mapping = text_code_map(self.raw)
        return self._pack([mapping.get(sym, self._miss) for sym in pattern])

    def suffix_array(self):
        return list(self.sorted_ordinals)

    def rank_interval(self, prefix):
        """1-based [lo, hi] of suffixes starting with `prefix` (codes)."""
        lo = bisect.bisect_left(self.sorted_suffixes, prefix)
        hi = bisect.bisect_left(self.sorted_suffixes, prefix + self._top)
        if lo == hi:
            return (1, 0)
        return (lo + 1, hi)

    def is_represented(self, s):
        lo, hi = self.rank_interval(s)
        return lo <= hi

    def suffix_link(self, label):
        """(longest represented proper suffix, type) of a represented label."""
        for i in range(1, len(label)):
            if self.is_represented(label[i:]):
                return (label[i:], i)
        return (label[:0], len(label))

    def boundary_hits(self, pattern):
        out = {}
        codes = self.encode_pattern(pattern)
        for k in range(min(self.r, len(codes))):
            lo, hi = self.rank_interval(codes[k:])
            if lo <= hi:
                out[k] = (lo, hi)
        return out

    def ordinal_set(self, label):
        """Ordinals whose reversed block starts with `label`, rank order."""
        depth = len(label)
        hits = [j for j, tau in enumerate(self.blocks) if tau[:depth] == label]
        hits.sort(key=self.rank_of.__getitem__)
        return hits
