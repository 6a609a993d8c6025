"""Select boundary ordinals whose preceding characters match the pattern
prefix.

Given an offset k and the rank interval of pattern[k+1..] from the tree
search, descend the reversed-block trie along pattern[k], pattern[k-1],
..., pattern[1].  The interval is re-indexed once per node-to-child
transition (the first edge letter); remaining edge letters are verified
directly, since no branching happens inside an edge.  The subtree below
the deepest matched locus is then swept, pruning children whose interval
comes back empty; surviving leaves emit their stored ordinals.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import blocktrie
from .suffixtree import RankInterval


@dataclass(frozen=True, slots=True)
class LeftQuery:
    k: int
    interval: RankInterval


@dataclass(slots=True)
class TrieCounters:
    descent_steps: int = 0  # interval updates + edge letters verified
    nodes_visited: int = 0  # nodes whose interval was computed in the sweep


def left_search(trie, pattern, query, counters=None):
    """Ordinals j such that pattern[k+1..] starts at boundary j and
    pattern[1..k] ends at boundary j."""
    if counters is None:
        counters = TrieCounters()
    node = trie.root
    interval = query.interval
    i = query.k  # next pattern position, consumed right to left
    while i >= 1:
        code = pattern.codes[i - 1]
        child = node.children.get(code)
        if child is None:
            return set()
        counters.descent_steps += 1
        moved = blocktrie.interval_step(trie, node, code, interval)
        if moved.is_empty:
            return set()
        i -= 1
        label = child.edge
        for off in range(1, len(label)):
            if i == 0:
                break
            counters.descent_steps += 1
            if label[off] != pattern.codes[i - 1]:
                return set()
            i -= 1
        node = child
        interval = moved
    return traverse(trie, node, interval, counters)


def traverse(trie, node, interval, counters=None):
    """Ordinals stored in the subtree of `node` at positions within
    `interval`, re-indexed child by child with empty-interval pruning."""
    if counters is None:
        counters = TrieCounters()
    out = set()
    counters.nodes_visited += 1
    stack = [(node, interval)]
    while stack:
        cur, iv = stack.pop()
        if cur.is_leaf:
            out.update(cur.ordinals[i - 1] for i in range(iv.lo, iv.hi + 1))
            continue
        for code, child in cur.children.items():
            moved = blocktrie.interval_step(trie, cur, code, iv)
            counters.nodes_visited += 1
            if not moved.is_empty:
                stack.append((child, moved))
    return out
