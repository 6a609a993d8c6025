"""Binary index file format.

Layout: magic "PSI1", a 32-bit format version, then fixed-order sections
HEAD, ALPH, TEXT, SARR, TREE, TRIE.  Each section is a 4-byte tag, a
64-bit payload length, the payload, and a CRC32 of the payload.  All
integers are little-endian; lengths and table fields are unsigned 64-bit.
Tree and trie nodes are written in preorder with children in letter
order, so serialization is deterministic.  The in-entry count table is
not stored: the header records whether it was enabled plus its budget,
and loading rebuilds it.
"""

from __future__ import annotations

import struct
import zlib
from array import array

from .blocktrie import BlockTrie, TrieNode, build_count_table
from .errors import BadMagic, CorruptSection, VersionMismatch
from .index import FORMAT_VERSION, Index
from .suffixtree import (
    Locus,
    SparseSuffixArray,
    SparseSuffixTree,
    SuffixNode,
)
from .text import Alphabet, PackedText

MAGIC = b"PSI1"
SECTION_ORDER = (b"HEAD", b"ALPH", b"TEXT", b"SARR", b"TREE", b"TRIE")
NONE = 0xFFFFFFFFFFFFFFFF

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


def _pack_u64s(values):
    return struct.pack(f"<{len(values)}Q", *values)


class _Reader:
    def __init__(self, payload, section):
        self.data = payload
        self.pos = 0
        self.section = section

    def u64(self):
        if self.pos + 8 > len(self.data):
            raise CorruptSection(self.section.decode(), "payload truncated")
        value = _U64.unpack_from(self.data, self.pos)[0]
        self.pos += 8
        return value

    def u64s(self, count):
        end = self.pos + 8 * count
        if end > len(self.data):
            raise CorruptSection(self.section.decode(), "payload truncated")
        values = struct.unpack_from(f"<{count}Q", self.data, self.pos)
        self.pos = end
        return values

    def done(self):
        if self.pos != len(self.data):
            raise CorruptSection(self.section.decode(), "trailing bytes in payload")


def _write_section(sink, tag, payload):
    sink.write(tag)
    sink.write(_U64.pack(len(payload)))
    sink.write(payload)
    sink.write(_U32.pack(zlib.crc32(payload)))


def _read_exact(source, count, section):
    data = source.read(count)
    if len(data) != count:
        raise CorruptSection(section, "stream truncated")
    return data


def _read_section(source, expected):
    name = expected.decode()
    tag = _read_exact(source, 4, name)
    if tag != expected:
        raise CorruptSection(name, f"unexpected section tag {tag!r}")
    length = _U64.unpack(_read_exact(source, 8, name))[0]
    payload = _read_exact(source, length, name)
    crc = _U32.unpack(_read_exact(source, 4, name))[0]
    if crc != zlib.crc32(payload):
        raise CorruptSection(name, "checksum mismatch")
    return _Reader(payload, expected)


def _tree_nodes_preorder(tree):
    order = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        order.append(node)
        for letter in sorted(node.children, reverse=True):
            stack.append(node.children[letter])
    return order


def serialize(index, sink):
    """Write the index to a binary sink."""
    text = index.text
    flags = 0
    if index.trie.table.enabled:
        flags |= 1
    if text.alphabet.byte_mode:
        flags |= 2
    if text.alphabet.int_symbols:
        flags |= 4

    head = _pack_u64s(
        [
            text.n_raw,
            text.n,
            text.r,
            text.alphabet.size,
            text.word_capacity,
            text.half,
            text.bits_per_char,
            flags,
            index.table_budget,
        ]
    )

    symbols = text.alphabet.symbols
    alph = _U64.pack(len(symbols)) + struct.pack(
        f"<{len(symbols)}I",
        *[sym if isinstance(sym, int) else ord(sym) for sym in symbols],
    )

    words = text.words
    text_payload = _U64.pack(len(words)) + words.tobytes()

    sa = index.sa
    sarr = _U64.pack(len(sa)) + _pack_u64s(sa.sa) + _pack_u64s(sa.inv)

    nodes = _tree_nodes_preorder(index.tree)
    ids = {id(node): i for i, node in enumerate(nodes)}
    rows = [_U64.pack(len(nodes))]
    for node in nodes:
        if node.link is None:
            link_anchor = link_letter = link_offset = NONE
        else:
            link_anchor = ids[id(node.link.anchor)]
            link_offset = node.link.offset
            if node.link.child is None:
                link_letter = NONE
            else:
                link_letter = text.char_at(node.link.child.edge_start)
        rows.append(
            _pack_u64s(
                [
                    ids[id(node.parent)] if node.parent is not None else NONE,
                    node.edge_start,
                    node.edge_end,
                    node.depth,
                    node.min_rank,
                    node.max_rank,
                    node.ordinal if node.ordinal is not None else NONE,
                    link_anchor,
                    link_letter,
                    link_offset,
                    node.link_type,
                ]
            )
        )
    tree_payload = b"".join(rows)

    tnodes = list(index.trie.iter_preorder())
    tids = {id(node): i for i, node in enumerate(tnodes)}
    rows = [_U64.pack(len(tnodes))]
    for node in tnodes:
        head_fields = [
            tids[id(node.parent)] if node.parent is not None else NONE,
            node.depth,
            len(node.edge),
        ]
        head_fields.extend(node.edge)
        head_fields.append(1 if node.is_leaf else 0)
        head_fields.append(node.count)
        rows.append(_pack_u64s(head_fields))
        if node.is_leaf:
            rows.append(_pack_u64s(node.ordinals))
        else:
            rows.append(_U64.pack(len(node.entries)))
            rows.append(_pack_u64s(node.entries))
            for row in node.counts:
                rows.append(_pack_u64s(row))
    trie_payload = b"".join(rows)

    sink.write(MAGIC)
    sink.write(_U32.pack(index.version))
    for tag, payload in zip(
        SECTION_ORDER,
        (head, alph, text_payload, sarr, tree_payload, trie_payload),
    ):
        _write_section(sink, tag, payload)


def deserialize(source):
    """Read an index back; validates magic, version, checksums, and the
    basic structural invariants of every section."""
    magic = source.read(4)
    if magic != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, found {magic!r}")
    raw_version = source.read(4)
    if len(raw_version) != 4:
        raise VersionMismatch("version field truncated")
    version = _U32.unpack(raw_version)[0]
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"format version {version}, expected {FORMAT_VERSION}")

    head = _read_section(source, b"HEAD")
    n_raw, n, r, sigma, width, half, bits, flags, budget = head.u64s(9)
    head.done()
    table_enabled = bool(flags & 1)
    byte_mode = bool(flags & 2)
    int_symbols = bool(flags & 4)

    alph = _read_section(source, b"ALPH")
    count = alph.u64()
    if count != sigma:
        raise CorruptSection("ALPH", "symbol count does not match header")
    if alph.pos + 4 * count > len(alph.data):
        raise CorruptSection("ALPH", "payload truncated")
    points = struct.unpack_from(f"<{count}I", alph.data, alph.pos)
    alph.pos += 4 * count
    alph.done()
    if int_symbols:
        alphabet = Alphabet(points, byte_mode=byte_mode)
    else:
        alphabet = Alphabet([chr(p) for p in points])

    tsec = _read_section(source, b"TEXT")
    word_count = tsec.u64()
    words = array("Q")
    raw_words = tsec.data[tsec.pos :]
    if len(raw_words) != 8 * word_count:
        raise CorruptSection("TEXT", "word count does not match payload")
    words.frombytes(raw_words)
    text = PackedText(alphabet, n_raw, n, r, width, bits, words)
    if r < 1 or n % r or n < n_raw + 1 or len(words) != (n + width - 1) // width:
        raise CorruptSection("TEXT", "inconsistent text geometry")

    ssec = _read_section(source, b"SARR")
    boundary_count = ssec.u64()
    if boundary_count != n // r:
        raise CorruptSection("SARR", "rank count does not match text")
    sa_values = ssec.u64s(boundary_count)
    inv_values = ssec.u64s(boundary_count)
    ssec.done()
    if sorted(sa_values) != list(range(boundary_count)):
        raise CorruptSection("SARR", "ranks are not a permutation")
    sa = SparseSuffixArray(sa_values)
    if list(inv_values) != sa.inv:
        raise CorruptSection("SARR", "stored inverse does not match ranks")

    trsec = _read_section(source, b"TREE")
    node_count = trsec.u64()
    nodes = []
    pending_links = []
    for i in range(node_count):
        (
            parent_id,
            edge_start,
            edge_end,
            depth,
            min_rank,
            max_rank,
            ordinal,
            link_anchor,
            link_letter,
            link_offset,
            link_type,
        ) = trsec.u64s(11)
        node = SuffixNode(depth, edge_start, edge_end)
        node.min_rank = min_rank
        node.max_rank = max_rank
        node.link_type = link_type
        if ordinal != NONE:
            node.ordinal = ordinal
            node.rank = min_rank
        if parent_id == NONE:
            if i != 0:
                raise CorruptSection("TREE", "non-root node without parent")
        else:
            if parent_id >= i:
                raise CorruptSection("TREE", "parent written after child")
            node.parent = nodes[parent_id]
            if edge_start < 1 or edge_end > n or edge_start > edge_end:
                raise CorruptSection("TREE", "edge span out of bounds")
            node.parent.children[text.char_at(edge_start)] = node
        if link_anchor != NONE:
            pending_links.append((node, link_anchor, link_letter, link_offset))
        nodes.append(node)
    trsec.done()
    if not nodes:
        raise CorruptSection("TREE", "empty node table")
    leaf_by_ordinal = [None] * boundary_count
    for node in nodes:
        if node.ordinal is not None:
            if node.ordinal >= boundary_count or leaf_by_ordinal[node.ordinal]:
                raise CorruptSection("TREE", "bad leaf ordinal")
            leaf_by_ordinal[node.ordinal] = node
    if any(leaf is None for leaf in leaf_by_ordinal):
        raise CorruptSection("TREE", "missing leaf ordinal")
    for node, anchor_id, letter, offset in pending_links:
        if anchor_id >= len(nodes):
            raise CorruptSection("TREE", "link anchor out of range")
        anchor = nodes[anchor_id]
        child = None
        if letter != NONE:
            child = anchor.children.get(letter)
            if child is None:
                raise CorruptSection("TREE", "link edge letter has no child")
        node.link = Locus(anchor, child, offset)
    tree = SparseSuffixTree(text, sa, nodes[0], leaf_by_ordinal, node_count)

    tshape = _read_section(source, b"TRIE")
    trie_count = tshape.u64()
    tnodes = []
    leaf_count = 0
    base = sigma + 2
    for i in range(trie_count):
        parent_id = tshape.u64()
        depth = tshape.u64()
        edge_len = tshape.u64()
        edge = tshape.u64s(edge_len)
        is_leaf = tshape.u64()
        member_count = tshape.u64()
        node = TrieNode(tuple(edge), depth)
        node.count = member_count
        if parent_id == NONE:
            if i != 0:
                raise CorruptSection("TRIE", "non-root node without parent")
        else:
            if parent_id >= i:
                raise CorruptSection("TRIE", "parent written after child")
            node.parent = tnodes[parent_id]
            if not edge:
                raise CorruptSection("TRIE", "non-root node with empty edge")
            node.parent.children[edge[0]] = node
        if is_leaf:
            node.ordinals = tshape.u64s(member_count)
            leaf_count += 1
        else:
            entry_count = tshape.u64()
            node.entries = list(tshape.u64s(entry_count))
            node.counts = [list(tshape.u64s(entry_count + 1)) for _ in range(base)]
        tnodes.append(node)
    tshape.done()
    if not tnodes:
        raise CorruptSection("TRIE", "empty node table")
    for node in tnodes:
        if node.ordinals is None and not node.children:
            raise CorruptSection("TRIE", "internal node lost its children")
    trie = BlockTrie(tnodes[0], half, base, trie_count, leaf_count)
    trie.table = build_count_table(sigma, half, budget if table_enabled else 0)

    trailer = source.read(1)
    if trailer:
        raise CorruptSection("END", "unexpected data after last section")
    return Index(text, sa, tree, trie, budget)


def save_index(index, path):
    with open(path, "wb") as sink:
        serialize(index, sink)


def load_index(path):
    with open(path, "rb") as source:
        return deserialize(source)


def section_sizes(index):
    """Serialized payload bytes per section (for build summaries)."""
    import io

    buf = io.BytesIO()
    serialize(index, buf)
    buf.seek(0)
    data = buf.read()
    sizes = {}
    pos = 8  # magic + version
    for tag in SECTION_ORDER:
        assert data[pos : pos + 4] == tag
        length = _U64.unpack_from(data, pos + 4)[0]
        sizes[tag.decode()] = length
        pos += 4 + 8 + length + 4
    return sizes
