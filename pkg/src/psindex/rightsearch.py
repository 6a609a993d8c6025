"""Single-traversal search for pattern suffixes at block boundaries.

For each offset k in [0, r-1] the traversal either finds the rank
interval of pattern[k+1..m] among boundary suffixes or proves it absent.
Descent compares chunks of up to r characters with one word operation
each; on a mismatch or when the suffix is exhausted, the traversal
follows the suffix link of the explicit anchor, which advances k by the
link type without missing any representable suffix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCode, PatternTooShort
from .suffixtree import RankInterval
from .text import compare_span


@dataclass(frozen=True, slots=True)
class SuffixHit:
    """Non-empty rank interval of pattern[k+1..] among boundary suffixes."""

    k: int
    interval: RankInterval


@dataclass(slots=True)
class SearchCounters:
    word_comparisons: int = 0
    char_comparisons: int = 0
    link_follows: int = 0

    @property
    def total(self):
        return self.word_comparisons + self.char_comparisons + self.link_follows


def closest_explicit_descendant(locus):
    """The explicit node at or directly below a locus."""
    return locus.child if locus.offset else locus.anchor


def right_search(tree, pattern):
    """All (k, rank interval) pairs for suffixes of `pattern` that occur
    at block boundaries, plus comparison counters.

    Requires m >= r so that every offset k < r leaves a non-empty suffix.
    """
    text = tree.text
    r = text.r
    m = pattern.m
    if m < r:
        raise PatternTooShort(f"pattern length {m} below block size {r}")
    sigma = text.alphabet.size
    for code in pattern.codes:
        if not 1 <= code <= sigma:
            raise InvalidCode(f"pattern code {code} outside [1, {sigma}]")

    root = tree.root
    counters = SearchCounters()
    hits = []

    k = 0
    anchor, child, offset = root, None, 0
    p = 1  # next pattern position to compare
    while k < r:
        assert p == k + 1 + anchor.depth + offset
        stalled = False
        while p <= m:
            if offset == 0:
                child = anchor.children.get(pattern.codes[p - 1])
                if child is None:
                    stalled = True
                    break
            avail = child.edge_len - offset
            chunk = min(r, avail, m - p + 1)
            matched = compare_span(text, child.edge_start + offset, pattern, p, chunk)
            if chunk == r:
                counters.word_comparisons += 1
            else:
                counters.char_comparisons += chunk
            offset += matched
            p += matched
            if matched < chunk:
                stalled = True
                break
            if offset == child.edge_len:
                anchor, child, offset = child, None, 0

        if not stalled:
            # suffix exhausted: the current locus represents pattern[k+1..m]
            node = child if offset else anchor
            hits.append(SuffixHit(k, RankInterval(node.min_rank, node.max_rank)))

        if anchor is root:
            k += 1
            p = k + 1
            child, offset = None, 0
        else:
            target = anchor.link
            p -= offset
            k += anchor.link_type
            anchor, child, offset = target.anchor, target.child, target.offset
            counters.link_follows += 1
    return hits, counters
