"""Compacted trie of reversed text blocks with per-node counting tables.

Ordinal j >= 1 pairs with the block ending at boundary j, stored in
reverse; ordinal 0 pairs with a virtual all-pad block.  The final text
block (ending at the terminator) pairs with no sampled suffix and is
excluded, so the root's ordinal set is exactly the boundary rank order.

Each internal node stores, for its ordinal set in rank order, the next
reversed-block letter of every member, packed half-a-block per entry,
plus cumulative per-letter counts per entry.  Together with a small
table of in-entry prefix counts this answers "how many ordinals among
the first p carry letter b" in constant time, which is what moves a rank
interval from a node to one of its children.
"""

from __future__ import annotations

from array import array
from functools import lru_cache

from . import kernels
from .errors import InternalInvariantViolation, NoSuchChild, OutOfRange
from .suffixtree import RankInterval

DEFAULT_TABLE_BUDGET = 1 << 20


class TrieNode:
    __slots__ = (
        "parent",
        "edge",
        "depth",
        "children",
        "count",
        "entries",
        "counts",
        "ordinals",
        "_scratch",
    )

    def __init__(self, edge=(), depth=0, parent=None):
        self.parent = parent
        self.edge = edge
        self.depth = depth
        self.children = {}
        self.count = 0  # N(v): size of the node's ordinal set
        self.entries = None  # packed next-letter entries (internal nodes)
        self.counts = None  # counts[b][w]: b's among the first w entries
        self.ordinals = None  # rank-ordered ordinals (leaves; debug elsewhere)
        self._scratch = None

    @property
    def is_leaf(self):
        return not self.children

    def __repr__(self):
        kind = "leaf" if self.is_leaf else "node"
        return f"<trie {kind} d={self.depth} N={self.count}>"


class CountTable:
    """Precomputed per-entry letter counts: count(entry, b, q) is the
    number of b's among the first q letters of a packed entry."""

    __slots__ = ("half", "base", "enabled", "_data")

    def __init__(self, half, base, data=None):
        self.half = half
        self.base = base
        self.enabled = data is not None
        self._data = data

    @property
    def entry_count(self):
        return self.base ** (self.half + 1) * self.half if self.enabled else 0

    def count(self, entry, code, prefix):
        return self._data[(entry * self.base + code) * self.half + prefix - 1]


@lru_cache(maxsize=32)
def _cached_count_table(sigma, half, budget):
    base = sigma + 2
    total = base ** (half + 1) * half
    if total > budget:
        return CountTable(half, base, None)
    data = array("I", bytes(4 * total))
    stride = base * half
    for value in range(base**half):
        letters = []
        rest = value
        for _ in range(half):
            rest, letter = divmod(rest, base)
            letters.append(letter)
        letters.reverse()
        running = [0] * base
        offset = value * stride
        for q, letter in enumerate(letters, start=1):
            running[letter] += 1
            for b in range(base):
                data[offset + b * half + (q - 1)] = running[b]
    return CountTable(half, base, data)


def build_count_table(sigma, half, budget=DEFAULT_TABLE_BUDGET):
    """Table of in-entry prefix counts, or a disabled stub when the entry
    count (sigma+2)^(half+1) * half exceeds the budget."""
    return _cached_count_table(sigma, half, budget)


class BlockTrie:
    __slots__ = ("root", "half", "base", "table", "node_count", "leaf_count")

    def __init__(self, root, half, base, node_count, leaf_count):
        self.root = root
        self.half = half
        self.base = base
        self.table = CountTable(half, base, None)
        self.node_count = node_count
        self.leaf_count = leaf_count

    def iter_preorder(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            for letter in sorted(node.children, reverse=True):
                stack.append(node.children[letter])


def _reversed_block(text, ordinal):
    r = text.r
    if ordinal == 0:
        return (text.alphabet.filler,) * r
    end = r * ordinal
    return tuple(text.char_at(end - i) for i in range(r))


def build_block_trie(text):
    """Compacted trie over the reversed blocks of all ordinals (structure
    only; ordinal sets and counting tables come from annotate)."""
    r = text.r
    count = text.n // r
    root = TrieNode()
    node_count = 1
    leaf_count = 0
    for j in range(count):
        tau = _reversed_block(text, j)
        cur = root
        pos = 0
        while True:
            child = cur.children.get(tau[pos])
            if child is None:
                leaf = TrieNode(tau[pos:], r, cur)
                cur.children[tau[pos]] = leaf
                node_count += 1
                leaf_count += 1
                break
            label = child.edge
            same = 0
            while same < len(label) and tau[pos + same] == label[same]:
                same += 1
            if same == len(label):
                cur = child
                pos += same
                if pos == r:
                    break  # identical block, shares the leaf
                continue
            # split the edge after `same` matched letters
            mid = TrieNode(label[:same], child.depth - len(label) + same, cur)
            cur.children[label[0]] = mid
            child.edge = label[same:]
            child.parent = mid
            mid.children[child.edge[0]] = child
            assert pos + same < r, "equal-length strings cannot nest"
            leaf = TrieNode(tau[pos + same :], r, mid)
            mid.children[tau[pos + same]] = leaf
            node_count += 2
            leaf_count += 1
            break
    return BlockTrie(root, text.half, text.alphabet.size + 2, node_count, leaf_count)


def _next_letter(text, ordinal, depth):
    """Letter depth+1 of the ordinal's reversed block (pad for ordinal 0)."""
    if ordinal == 0:
        return text.alphabet.filler
    return text.char_at(text.r * ordinal - depth)


def _pack_entries(letters, half, base, pad):
    entries = []
    for start in range(0, len(letters), half):
        chunk = letters[start : start + half]
        value = 0
        for i in range(half):
            value = value * base + (chunk[i] if i < len(chunk) else pad)
        entries.append(value)
    return entries


def annotate(trie, text, sa, keep_ordinals=False):
    """Fill ordinal sets, packed letter entries, and cumulative counts.

    Proceeds parents before children: a node's ordinal set is distributed
    to its children by next letter (order preserved), after which the
    internal set is dropped unless `keep_ordinals` asks for it.
    """
    base = trie.base
    half = trie.half
    pad = text.alphabet.filler
    trie.root._scratch = list(sa.sa)

    queue = [trie.root]
    while queue:
        node = queue.pop()
        members = node._scratch
        node._scratch = None
        node.count = len(members)
        if node.is_leaf:
            node.ordinals = tuple(members)
            continue
        letters = [_next_letter(text, j, node.depth) for j in members]
        node.entries = _pack_entries(letters, half, base, pad)
        counts = [[0] * (len(node.entries) + 1) for _ in range(base)]
        for i, letter in enumerate(letters):
            counts[letter][i // half + 1] += 1
        for b in range(base):
            row = counts[b]
            for w in range(1, len(row)):
                row[w] += row[w - 1]
        # pads completing the last entry count like stored letters
        tail = len(node.entries) * half - len(letters)
        if tail:
            counts[pad][len(node.entries)] += tail
        node.counts = counts
        if keep_ordinals:
            node.ordinals = tuple(members)

        buckets = {letter: [] for letter in node.children}
        for j, letter in zip(members, letters):
            try:
                buckets[letter].append(j)
            except KeyError:
                raise InternalInvariantViolation(
                    f"ordinal {j} has no child edge for letter {letter}"
                ) from None
        for letter, child in node.children.items():
            child._scratch = buckets[letter]
            queue.append(child)
    return trie


def count_prefix(trie, node, code, prefix):
    """Occurrences of `code` among the first `prefix` letters of the
    node's packed letter sequence."""
    if node.entries is None:
        raise OutOfRange("counting is only defined for internal nodes")
    if prefix < 0 or prefix > node.count:
        raise OutOfRange(f"prefix {prefix} outside [0, {node.count}]")
    if prefix == 0:
        return 0
    half = trie.half
    w, o = divmod(prefix - 1, half)
    o += 1
    before = node.counts[code][w]
    entry = node.entries[w]
    table = trie.table
    if table.enabled:
        return before + table.count(entry, code, o)
    return before + kernels.count_entry_prefix(entry, trie.base, half, code, o)


def interval_step(trie, node, code, interval):
    """Re-index an interval of the node's ordinal set into the child
    reached by `code`: exactly the members whose next letter is `code`,
    order preserved."""
    if code not in node.children:
        raise NoSuchChild(f"no child via letter {code}")
    lo = count_prefix(trie, node, code, interval.lo - 1) + 1
    hi = count_prefix(trie, node, code, interval.hi)
    return RankInterval(lo, hi)
