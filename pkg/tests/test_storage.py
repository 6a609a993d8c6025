"""Index file round-trips, determinism, and corruption detection."""

import io
import random
import struct

import pytest

from psindex.errors import BadMagic, CorruptSection, VersionMismatch
from psindex.index import build_index
from psindex.storage import MAGIC, SECTION_ORDER, deserialize, serialize


def _to_bytes(index):
    buf = io.BytesIO()
    serialize(index, buf)
    return buf.getvalue()


def _from_bytes(data):
    return deserialize(io.BytesIO(data))


def _section_payload_range(data, tag):
    pos = 8
    for current in SECTION_ORDER:
        length = struct.unpack_from("<Q", data, pos + 4)[0]
        start = pos + 12
        if current == tag:
            return start, start + length
        pos = start + length + 4
    raise AssertionError(f"section {tag} not found")


def test_roundtrip_desk(desk_index):
    data = _to_bytes(desk_index)
    loaded = _from_bytes(data)
    for pattern in ("aba", "ba", "bb", "a", "abaabaa"):
        assert [o.pos for o in loaded.find_all(pattern)] == [
            o.pos for o in desk_index.find_all(pattern)
        ]
    # serialization is canonical: a reloaded index re-serializes identically
    assert _to_bytes(loaded) == data


def test_roundtrip_random_queries():
    rng = random.Random(71)
    for _ in range(25):
        sigma = rng.choice([2, 4, 16])
        alpha = [chr(ord("a") + i) for i in range(sigma)]
        raw = "".join(rng.choice(alpha) for _ in range(rng.randint(1, 400)))
        r = rng.choice([1, 2, 4, 8])
        index = build_index(raw, r)
        loaded = _from_bytes(_to_bytes(index))
        for _ in range(6):
            m = rng.randint(1, 16)
            start = rng.randint(0, max(0, len(raw) - m))
            pattern = raw[start : start + m] or "a"
            assert [o.pos for o in loaded.find_all(pattern)] == [
                o.pos for o in index.find_all(pattern)
            ]


def test_bad_magic(desk_index):
    data = bytearray(_to_bytes(desk_index))
    data[0] ^= 0xFF
    with pytest.raises(BadMagic):
        _from_bytes(bytes(data))
    assert _to_bytes(desk_index)[:4] == MAGIC


def test_version_mismatch(desk_index):
    data = bytearray(_to_bytes(desk_index))
    data[4] = 99
    with pytest.raises(VersionMismatch):
        _from_bytes(bytes(data))


@pytest.mark.parametrize("tag", [t.decode() for t in SECTION_ORDER])
def test_single_byte_corruption_is_detected(desk_index, tag):
    data = bytearray(_to_bytes(desk_index))
    start, end = _section_payload_range(bytes(data), tag.encode())
    assert end > start, f"section {tag} has no payload to corrupt"
    for offset in (start, (start + end) // 2, end - 1):
        corrupted = bytearray(data)
        corrupted[offset] ^= 0x01
        with pytest.raises(CorruptSection):
            _from_bytes(bytes(corrupted))


def test_truncated_stream(desk_index):
    data = _to_bytes(desk_index)
    for cut in (5, 20, len(data) // 2, len(data) - 1):
        with pytest.raises((CorruptSection, VersionMismatch)):
            _from_bytes(data[:cut])


def test_trailing_garbage(desk_index):
    data = _to_bytes(desk_index) + b"x"
    with pytest.raises(CorruptSection):
        _from_bytes(data)


def test_disabled_table_roundtrip():
    index = build_index("abcdabcdabcd", 4, table_budget=0)
    assert not index.trie.table.enabled
    loaded = _from_bytes(_to_bytes(index))
    assert not loaded.trie.table.enabled
    assert [o.pos for o in loaded.find_all("bcd")] == [2, 6, 10]


def test_byte_mode_roundtrip():
    data = bytes([7, 3, 7, 7, 3, 250])
    index = build_index(data, 2, alphabet_mode="byte")
    loaded = _from_bytes(_to_bytes(index))
    assert loaded.text.alphabet.byte_mode
    assert [o.pos for o in loaded.find_all(bytes([7, 3]))] == [1, 4]
