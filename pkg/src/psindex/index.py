"""Public index facade: build, query, and report sizes.

A built index is immutable; any number of queries may run concurrently.
Patterns of at least one block length go through the two-phase search
(tree traversal for each offset, then the reversed-block trie for the
preceding characters); shorter patterns use a packed scan of the whole
text, which is complete on its own for that length range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .blocktrie import DEFAULT_TABLE_BUDGET, annotate, build_block_trie, build_count_table
from .errors import EmptyPattern
from .leftsearch import LeftQuery, TrieCounters, left_search
from .rightsearch import right_search
from .suffixtree import build_sparse_suffix_array, build_suffix_tree, set_suffix_links
from .text import PackedPattern, encode_text

FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Occurrence:
    """1-based start position of the pattern, with the offset k of its
    first block boundary at or after the start."""

    pos: int
    k: int


@dataclass(slots=True)
class QueryStats:
    path: str = "tree"  # "tree" or "short"
    m: int = 0
    occurrences: int = 0
    word_comparisons: int = 0
    char_comparisons: int = 0
    link_follows: int = 0
    descent_steps: int = 0
    nodes_visited: int = 0
    per_offset_visits: dict = field(default_factory=dict)

    @property
    def work_total(self):
        return (
            self.word_comparisons
            + self.char_comparisons
            + self.link_follows
            + self.descent_steps
            + self.nodes_visited
        )


class Index:
    """Packed text plus the two search structures built from it."""

    __slots__ = ("text", "sa", "tree", "trie", "table_budget", "version")

    def __init__(self, text, sa, tree, trie, table_budget):
        self.text = text
        self.sa = sa
        self.tree = tree
        self.trie = trie
        self.table_budget = table_budget
        self.version = FORMAT_VERSION

    @property
    def r(self):
        return self.text.r

    def find_all(self, pattern):
        """Sorted occurrences of `pattern` in the raw text."""
        return self.find_all_detailed(pattern)[0]

    def find_all_detailed(self, pattern):
        """Occurrences plus per-query work counters."""
        m = len(pattern)
        if m == 0:
            raise EmptyPattern("cannot search for an empty pattern")
        stats = QueryStats(m=m)
        codes = self.text.alphabet.codes_or_none(pattern)
        if codes is None:
            # a symbol the text does not contain cannot occur
            return [], stats

        if m < self.r:
            stats.path = "short"
            occs = self._find_short(codes)
        else:
            occs = self._find_tree(codes, stats)
        occs.sort(key=lambda o: o.pos)
        stats.occurrences = len(occs)
        if __debug__:
            r = self.r
            last = 0
            for occ in occs:
                assert occ.pos > last, "duplicate or unsorted occurrence"
                assert occ.pos + m - 1 <= self.text.n_raw, "occurrence in padding"
                assert occ.k == (r - ((occ.pos - 1) % r)) % r
                last = occ.pos
        return occs, stats

    def _find_tree(self, codes, stats):
        pat = PackedPattern(codes, self.text.word_capacity, self.text.bits_per_char)
        hits, counters = right_search(self.tree, pat)
        stats.word_comparisons = counters.word_comparisons
        stats.char_comparisons = counters.char_comparisons
        stats.link_follows = counters.link_follows
        r = self.r
        occs = []
        for hit in hits:
            if hit.k == 0:
                # the whole pattern starts at these boundaries
                for rank in range(hit.interval.lo, hit.interval.hi + 1):
                    occs.append(Occurrence(r * self.sa.ordinal_at(rank) + 1, 0))
            else:
                counters = TrieCounters()
                ordinals = left_search(
                    self.trie, pat, LeftQuery(hit.k, hit.interval), counters
                )
                stats.descent_steps += counters.descent_steps
                stats.nodes_visited += counters.nodes_visited
                stats.per_offset_visits[hit.k] = (
                    counters.nodes_visited,
                    len(ordinals),
                )
                occs.extend(Occurrence(r * j + 1 - hit.k, hit.k) for j in ordinals)
        return occs

    def _find_short(self, codes):
        text = self.text
        m = len(codes)
        last = text.n_raw - m + 1
        if last < 1:
            return []
        value = 0
        for code in codes:
            value = (value << text.bits_per_char) | code
        positions = kernels.scan_matches(
            text.words, text.word_capacity, text.bits_per_char, value, m, 1, last
        )
        r = self.r
        return [Occurrence(pos, (r - ((pos - 1) % r)) % r) for pos in positions]

    def stats(self):
        """Measured component sizes against the n/r yardstick."""
        text = self.text
        boundaries = text.n // text.r
        rho_entries = 0
        rho_letters = 0
        counting_cells = 0
        ord_entries = 0
        for node in self.trie.iter_preorder():
            if node.is_leaf:
                ord_entries += len(node.ordinals)
            else:
                rho_entries += len(node.entries)
                rho_letters += node.count
                counting_cells += self.trie.base * (len(node.entries) + 1)
        return {
            "n_raw": text.n_raw,
            "n": text.n,
            "r": text.r,
            "sigma": text.alphabet.size,
            "word_capacity": text.word_capacity,
            "half": text.half,
            "bits_per_char": text.bits_per_char,
            "text_words": len(text.words),
            "sa_words": 2 * boundaries,
            "tree_nodes": self.tree.node_count,
            "trie_nodes": self.trie.node_count,
            "trie_leaves": self.trie.leaf_count,
            "rho_entries": rho_entries,
            "rho_letters": rho_letters,
            "counting_cells": counting_cells,
            "ord_entries": ord_entries,
            "table_entries": self.trie.table.entry_count,
            "table_enabled": self.trie.table.enabled,
            "boundaries": boundaries,
        }


def build_index(
    raw,
    r,
    alphabet_mode="auto",
    word_capacity=None,
    table_budget=DEFAULT_TABLE_BUDGET,
    keep_ordinals=False,
):
    """Build the full index for `raw` with block size `r`."""
    text = encode_text(raw, r, alphabet_mode, word_capacity)
    sa = build_sparse_suffix_array(text)
    tree = build_suffix_tree(text, sa)
    set_suffix_links(tree)
    trie = build_block_trie(text)
    annotate(trie, text, sa, keep_ordinals=keep_ordinals)
    trie.table = build_count_table(text.alphabet.size, text.half, table_budget)
    return Index(text, sa, tree, trie, table_budget)


def find_all(index, pattern):
    """Module-level convenience wrapper around Index.find_all."""
    return index.find_all(pattern)
