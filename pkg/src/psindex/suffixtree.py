"""Sparse suffix tree over block-boundary suffixes, with typed suffix links.

Only suffixes starting at block boundaries (ordinals 0 .. n/r - 1) are
indexed.  The tree is a compacted trie built from the boundary suffix
array plus character-level LCPs; every explicit node carries its string
depth and the rank interval of the leaves below it.  Each non-root
explicit node also carries a suffix link: the locus of the longest proper
suffix of its label that is represented in the tree, together with the
number of characters stripped (the link type, always in [1, r]).
"""

from __future__ import annotations

import bisect
from collections import defaultdict, deque
from dataclasses import dataclass

from . import kernels
from .errors import InternalInvariantViolation


@dataclass(frozen=True, slots=True)
class RankInterval:
    """Closed 1-based rank range; empty iff lo > hi."""

    lo: int
    hi: int

    @property
    def is_empty(self):
        return self.lo > self.hi

    def __len__(self):
        return 0 if self.is_empty else self.hi - self.lo + 1


class SuffixNode:
    """Explicit tree node; the incoming edge is a span of the text."""

    __slots__ = (
        "parent",
        "edge_start",
        "edge_end",
        "depth",
        "children",
        "min_rank",
        "max_rank",
        "ordinal",
        "rank",
        "link",
        "link_type",
    )

    def __init__(self, depth, edge_start=0, edge_end=0, parent=None):
        self.parent = parent
        self.edge_start = edge_start
        self.edge_end = edge_end
        self.depth = depth
        self.children = {}
        self.min_rank = 0
        self.max_rank = 0
        self.ordinal = None
        self.rank = 0
        self.link = None
        self.link_type = 0

    @property
    def edge_len(self):
        return self.edge_end - self.edge_start + 1 if self.edge_start else 0

    @property
    def is_leaf(self):
        return self.ordinal is not None

    def __repr__(self):
        kind = f"leaf j={self.ordinal}" if self.is_leaf else "node"
        return f"<{kind} d={self.depth} ranks=[{self.min_rank},{self.max_rank}]>"


@dataclass(frozen=True, slots=True)
class Locus:
    """Position in the tree: explicit anchor, plus an optional partial edge.

    `child` is None iff `offset` is 0, in which case the locus is the
    anchor itself; otherwise 0 < offset < child.edge_len.
    """

    anchor: SuffixNode
    child: SuffixNode | None
    offset: int

    @property
    def depth(self):
        return self.anchor.depth + self.offset


class SparseSuffixArray:
    """Ranks of the boundary suffixes: sa[rank-1] = ordinal, inv[ordinal] = rank."""

    __slots__ = ("sa", "inv")

    def __init__(self, sa):
        self.sa = list(sa)
        self.inv = [0] * len(sa)
        for i, j in enumerate(self.sa):
            self.inv[j] = i + 1

    def __len__(self):
        return len(self.sa)

    def ordinal_at(self, rank):
        return self.sa[rank - 1]

    def rank_of(self, ordinal):
        return self.inv[ordinal]


def build_sparse_suffix_array(text):
    """Sort the boundary suffixes.

    Blocks are ranked first (a block fits one word, so block values sort
    like their character sequences), then the block-rank string is sorted
    by prefix doubling.  Because the terminator makes the final block
    unique, the block-level order equals the character-level order.
    """
    r = text.r
    count = text.n // r
    values = [text.extract(k * r + 1, r) for k in range(count)]
    by_value = {v: i for i, v in enumerate(sorted(set(values)))}
    rank = [by_value[v] for v in values]
    if count == 1:
        return SparseSuffixArray([0])

    step = 1
    order = list(range(count))
    while True:
        key = [
            (rank[i], rank[i + step] if i + step < count else -1)
            for i in range(count)
        ]
        order.sort(key=key.__getitem__)
        fresh = [0] * count
        top = 0
        prev = key[order[0]]
        for i in order[1:]:
            if key[i] != prev:
                top += 1
                prev = key[i]
            fresh[i] = top
        rank = fresh
        if top == count - 1:
            break
        step <<= 1
    sa = [0] * count
    for i, rk in enumerate(rank):
        sa[rk] = i
    return SparseSuffixArray(sa)


def _adjacent_lcps(text, sa):
    """Character-level LCP between rank-adjacent boundary suffixes.

    Kasai's pass on the block-rank string gives whole-block LCPs; the
    partial last block is refined by one packed comparison.
    """
    r = text.r
    count = len(sa)
    if count < 2:
        return []
    values = [text.extract(k * r + 1, r) for k in range(count)]
    by_value = {v: i for i, v in enumerate(sorted(set(values)))}
    meta = [by_value[v] for v in values]
    inv0 = [0] * count
    for i, j in enumerate(sa.sa):
        inv0[j] = i
    mlcp = [0] * (count - 1)
    h = 0
    for j in range(count):
        i = inv0[j]
        if i == count - 1:
            h = 0
            continue
        j2 = sa.sa[i + 1]
        while j + h < count and j2 + h < count and meta[j + h] == meta[j2 + h]:
            h += 1
        mlcp[i] = h
        if h:
            h -= 1

    words, width, bits, n = text.words, text.word_capacity, text.bits_per_char, text.n
    out = [0] * (count - 1)
    for i in range(count - 1):
        common = r * mlcp[i]
        pa = r * sa.sa[i] + 1 + common
        pb = r * sa.sa[i + 1] + 1 + common
        ext = 0
        limit = min(r, n - pa + 1, n - pb + 1)
        if limit > 0:
            ext = kernels.long_lcp(words, width, pa, limit, words, width, pb, limit, bits)
        out[i] = common + ext
    return out


class SparseSuffixTree:
    """The assembled tree plus lookup tables shared by the search routines."""

    __slots__ = ("text", "sa", "root", "leaf_by_ordinal", "node_count", "build_stats")

    def __init__(self, text, sa, root, leaf_by_ordinal, node_count):
        self.text = text
        self.sa = sa
        self.root = root
        self.leaf_by_ordinal = leaf_by_ordinal
        self.node_count = node_count
        self.build_stats = {}

    def iter_preorder(self):
        """All explicit nodes, parents before children, children in letter order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            for letter in sorted(node.children, reverse=True):
                stack.append(node.children[letter])

    def child_by_letter(self, node, letter):
        """Child of `node` whose edge starts with `letter`, or None."""
        return node.children.get(letter)

    def locus_label_end(self, locus):
        """Ordinal of some boundary occurrence of the locus label's start.

        The label of the locus equals text[r*j+1 .. r*j+depth] for the
        returned ordinal j.
        """
        node = locus.child if locus.offset else locus.anchor
        return self.sa.ordinal_at(node.min_rank)


def build_suffix_tree(text, sa):
    """Compacted trie of the boundary suffixes (no suffix links yet)."""
    r = text.r
    count = len(sa)
    root = SuffixNode(0)
    lcps = _adjacent_lcps(text, sa)
    leaf_by_ordinal = [None] * count
    node_count = 1
    stack = [root]

    def first_letter(node):
        return text.char_at(node.edge_start)

    for pos, ordinal in enumerate(sa.sa):
        start = r * ordinal + 1
        leaf = SuffixNode(text.n - start + 1)
        leaf.ordinal = ordinal
        leaf.rank = pos + 1
        leaf.min_rank = leaf.max_rank = pos + 1
        leaf_by_ordinal[ordinal] = leaf
        node_count += 1
        if pos == 0:
            leaf.parent = root
            leaf.edge_start, leaf.edge_end = start, text.n
            root.children[first_letter(leaf)] = leaf
            stack.append(leaf)
            continue
        common = lcps[pos - 1]
        last = None
        while stack[-1].depth > common:
            last = stack.pop()
        top = stack[-1]
        if top.depth == common:
            parent = top
        else:
            # split last's edge at string depth `common`
            mid = SuffixNode(common)
            node_count += 1
            cut = last.edge_start + (common - top.depth)
            mid.edge_start, mid.edge_end = last.edge_start, cut - 1
            mid.parent = top
            top.children[first_letter(mid)] = mid
            last.edge_start = cut
            last.parent = mid
            mid.children[first_letter(last)] = last
            stack.append(mid)
            parent = mid
        leaf.parent = parent
        leaf.edge_start, leaf.edge_end = start + common, text.n
        parent.children[first_letter(leaf)] = leaf
        stack.append(leaf)

    tree = SparseSuffixTree(text, sa, root, leaf_by_ordinal, node_count)
    _fill_rank_spans(tree)
    return tree


def _fill_rank_spans(tree):
    """Set min_rank/max_rank of internal nodes bottom-up."""
    post = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        post.append(node)
        stack.extend(node.children.values())
    for node in reversed(post):
        if node.is_leaf:
            continue
        ranks_lo = [c.min_rank for c in node.children.values()]
        ranks_hi = [c.max_rank for c in node.children.values()]
        node.min_rank = min(ranks_lo)
        node.max_rank = max(ranks_hi)


def block_links(tree):
    """For every explicit node deeper than one block, the explicit node
    representing its label with the first block removed; the root for
    shallow nodes.

    The target of an explicit node must itself be explicit; anything else
    is a structural violation.
    """
    r = tree.text.r
    sa = tree.sa
    queries = defaultdict(list)  # leaf -> [(node, wanted depth)]
    links = {}
    for node in tree.iter_preorder():
        if node is tree.root:
            continue
        if node.depth <= r:
            links[node] = tree.root
            continue
        j0 = sa.ordinal_at(node.min_rank)
        queries[tree.leaf_by_ordinal[j0 + 1]].append((node, node.depth - r))

    if not queries:
        return links

    path = [tree.root]
    depths = [0]
    iters = [iter(sorted(tree.root.children.items()))]
    while iters:
        try:
            _, child = next(iters[-1])
        except StopIteration:
            iters.pop()
            path.pop()
            depths.pop()
            continue
        path.append(child)
        depths.append(child.depth)
        iters.append(iter(sorted(child.children.items())))
        if child.is_leaf and child in queries:
            for node, wanted in queries[child]:
                i = bisect.bisect_left(depths, wanted)
                if i >= len(depths) or depths[i] != wanted:
                    raise InternalInvariantViolation(
                        f"block-link target of {node!r} at depth {wanted} "
                        "is not an explicit node"
                    )
                links[node] = path[i]
    return links


def nodes_by_fixed_ordinal(tree):
    """Group every non-root explicit node by its leftmost boundary
    occurrence, each group ordered by increasing string depth."""
    min_ord = {}
    post = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        post.append(node)
        stack.extend(node.children.values())
    for node in reversed(post):
        if node.is_leaf:
            min_ord[node] = node.ordinal
        else:
            min_ord[node] = min(min_ord[c] for c in node.children.values())

    groups = [[] for _ in range(len(tree.sa))]
    for node in post:
        if node is not tree.root:
            groups[min_ord[node]].append(node)
    return [deque(sorted(g, key=lambda v: v.depth)) for g in groups]


def longest_match_loci(tree, links, shift):
    """Locus of the longest represented prefix of each shifted boundary
    suffix text[r*j + shift + 1 ..], for j = 0 .. n/r - 1.

    Walks ordinals left to right: each next start locus is derived from
    the previous result via a block link plus a skip/count descent over
    characters already known to match, then extended by packed
    comparisons.  Returns (loci, step counters).
    """
    text = tree.text
    r = text.r
    count = len(tree.sa)
    words, width, bits, n = text.words, text.word_capacity, text.bits_per_char, text.n
    root = tree.root
    loci = []
    stats = {"skip_edges": 0, "extend_calls": 0, "extend_chars": 0}

    prev_anchor = root
    prev_len = 0
    for j in range(count):
        start = r * j + shift + 1
        if start > n:
            loci.append(Locus(root, None, 0))
            prev_anchor, prev_len = root, 0
            continue

        anchor, child, offset, depth = root, None, 0, 0
        if prev_len > r:
            # The previous result minus one block is still represented:
            # reach it without comparisons, then extend.
            target = prev_len - r
            anchor = links[prev_anchor] if prev_anchor.depth > r else root
            depth = anchor.depth
            while depth < target:
                step = text.char_at(start + depth)
                try:
                    nxt = anchor.children[step]
                except KeyError:
                    raise InternalInvariantViolation(
                        "skip/count walk left the represented region"
                    ) from None
                if depth + nxt.edge_len <= target:
                    anchor = nxt
                    depth += nxt.edge_len
                    stats["skip_edges"] += 1
                else:
                    child = nxt
                    offset = target - depth
                    depth = target
                    break

        while True:
            if offset == 0:
                if start + depth > n:
                    break
                nxt = anchor.children.get(text.char_at(start + depth))
                if nxt is None:
                    break
                child = nxt
            avail = child.edge_len - offset
            limit = min(avail, n - (start + depth) + 1)
            if limit <= 0:
                break
            got = kernels.long_lcp(
                words, width, child.edge_start + offset, limit,
                words, width, start + depth, limit, bits,
            )
            stats["extend_calls"] += 1
            stats["extend_chars"] += got
            offset += got
            depth += got
            if got < limit:
                break
            if offset == child.edge_len:
                anchor, child, offset = child, None, 0

        loci.append(Locus(anchor, child if offset else None, offset))
        prev_anchor, prev_len = anchor, depth
    return loci, stats


def _locus_at_depth(path, depths, wanted, frontier):
    """Locus at string depth `wanted` on the root path of the current DFS
    position, whose partial tail (if any) is described by `frontier`."""
    if wanted == 0:
        return Locus(path[0], None, 0)
    tip = path[-1]
    if wanted > tip.depth:
        return Locus(tip, frontier.child, wanted - tip.depth)
    i = bisect.bisect_left(depths, wanted)
    node = path[i]
    if node.depth == wanted:
        return Locus(node, None, 0)
    return Locus(path[i - 1], node, wanted - path[i - 1].depth)


def set_suffix_links(tree):
    """Assign (locus, type) suffix links to every non-root explicit node.

    Round i resolves links of type i: a node whose label occurs at
    boundary j resolves once its label minus i characters is no longer
    deeper than the longest represented prefix of the shifted suffix at
    j, and the target sits on that prefix's root path.
    """
    links = block_links(tree)
    groups = nodes_by_fixed_ordinal(tree)
    pending = sum(len(g) for g in groups)
    r = tree.text.r
    walk_stats = []

    for shift in range(1, r + 1):
        if pending == 0:
            break
        loci, stats = longest_match_loci(tree, links, shift)
        walk_stats.append(stats)
        by_anchor = defaultdict(list)
        for j, locus in enumerate(loci):
            if groups[j]:
                by_anchor[locus.anchor].append(j)

        path = [tree.root]
        depths = [0]
        iters = [iter(sorted(tree.root.children.items()))]

        def resolve(node):
            for j in by_anchor.get(node, ()):
                frontier = loci[j]
                reach = frontier.depth
                group = groups[j]
                while group and group[0].depth - shift <= reach:
                    v = group.popleft()
                    v.link = _locus_at_depth(path, depths, v.depth - shift, frontier)
                    v.link_type = shift
            return None

        resolve(tree.root)
        while iters:
            try:
                _, child = next(iters[-1])
            except StopIteration:
                iters.pop()
                path.pop()
                depths.pop()
                continue
            path.append(child)
            depths.append(child.depth)
            iters.append(iter(sorted(child.children.items())))
            resolve(child)
        pending = sum(len(g) for g in groups)

    if pending:
        raise InternalInvariantViolation(
            f"{pending} nodes left without a suffix link after {r} rounds"
        )
    tree.build_stats["link_walks"] = walk_stats
    return tree
