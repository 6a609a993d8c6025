"""Prefix selection through the reversed-block trie."""

import random

from conftest import A, trie_child
from psindex import oracle
from psindex.index import build_index
from psindex.leftsearch import LeftQuery, TrieCounters, left_search, traverse
from psindex.suffixtree import RankInterval
from psindex.text import encode_pattern


def test_desk_descend_a(desk_index):
    # offset-1 hit of "aba": interval [4,4], prefix "a" precedes ordinal 2
    pat = encode_pattern(desk_index.text, "aba")
    got = left_search(desk_index.trie, pat, LeftQuery(1, RankInterval(4, 4)))
    assert got == {2}


def test_desk_descend_b(desk_index):
    # offset-1 hit of "ba": interval [1,3], prefix "b" precedes ordinal 1
    pat = encode_pattern(desk_index.text, "ba")
    got = left_search(desk_index.trie, pat, LeftQuery(1, RankInterval(1, 3)))
    assert got == {1}


def test_desk_no_child_means_no_occurrences(desk_index):
    # "bb": offset-1 interval [4,4]; the preceding block never ends in "b"
    pat = encode_pattern(desk_index.text, "bb")
    got = left_search(desk_index.trie, pat, LeftQuery(1, RankInterval(4, 4)))
    assert got == set()


def test_traverse_leaf(desk_index):
    leaf_aa = trie_child(desk_index.trie, A, A)
    assert traverse(desk_index.trie, leaf_aa, RankInterval(1, 1)) == {2}


def test_traverse_full_root_emits_everything(desk_index):
    got = traverse(desk_index.trie, desk_index.trie.root, RankInterval(1, 4))
    assert got == {0, 1, 2, 3}


def test_matches_brute_force_random():
    rng = random.Random(51)
    for _ in range(60):
        sigma = rng.choice([2, 4, 16])
        alpha = [chr(ord("a") + i) for i in range(sigma)]
        raw = "".join(rng.choice(alpha) for _ in range(rng.randint(4, 400)))
        r = rng.choice([2, 4, 8])
        idx = build_index(raw, r)
        boracle = oracle.BoundaryOracle(raw, r)
        for _ in range(4):
            m = rng.randint(r, 24)
            if rng.random() < 0.7 and len(raw) >= m:
                start = rng.randint(0, len(raw) - m)
                pattern = raw[start : start + m]
            else:
                pattern = "".join(rng.choice(alpha) for _ in range(m))
            hits = boracle.boundary_hits(pattern)
            pat_codes = idx.text.alphabet.codes_or_none(pattern)
            if pat_codes is None:
                continue
            pat = encode_pattern(idx.text, pattern)
            for k, (lo, hi) in hits.items():
                if k == 0:
                    continue
                counters = TrieCounters()
                got = left_search(
                    idx.trie, pat, LeftQuery(k, RankInterval(lo, hi)), counters
                )
                # brute force: boundaries whose suffix starts with pattern[k:]
                # and whose preceding characters end with pattern[:k]
                want = set()
                for pos in oracle.naive_find_all(raw, pattern):
                    if (pos - 1 + k) % r == 0:
                        want.add((pos - 1 + k) // r)
                assert got == want
                # descent is bounded by the prefix length
                assert counters.descent_steps <= k + 1
                # sweep visits are bounded by matched leaves
                allowed = (sigma + 2) * r * (len(got) + 1)
                assert counters.nodes_visited <= allowed
