"""Command-line surface: flags, exit codes, output shapes."""

import struct
import zlib

import pytest

from psindex.cli import main
from psindex.index import build_index
from psindex.storage import SECTION_ORDER, save_index


@pytest.fixture()
def desk_paths(tmp_path):
    text_path = tmp_path / "desk.txt"
    text_path.write_bytes(b"abaabaa")
    index_path = tmp_path / "desk.psi"
    rc = main(["build", str(text_path), "-r", "2", "-o", str(index_path)])
    assert rc == 0
    return text_path, index_path


def test_build_summary_line(tmp_path, capsys):
    text_path = tmp_path / "t.txt"
    text_path.write_bytes(b"abaabaa")
    rc = main(["build", str(text_path), "-r", "2", "-o", str(tmp_path / "t.psi")])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.startswith("n=8 n_raw=7 r=2 sigma=2 ")
    for tag in SECTION_ORDER:
        assert f"{tag.decode()}=" in captured.out


def test_build_usage_errors(tmp_path):
    text_path = tmp_path / "t.txt"
    text_path.write_bytes(b"ab")
    with pytest.raises(SystemExit) as info:
        main(["build", str(text_path), "-r", "0", "-o", str(tmp_path / "o")])
    assert info.value.code == 1


def test_build_missing_file(tmp_path):
    rc = main(["build", str(tmp_path / "nope"), "-r", "2", "-o", str(tmp_path / "o")])
    assert rc == 2


def test_build_block_too_large(tmp_path, capsys):
    text_path = tmp_path / "t.txt"
    text_path.write_bytes(b"ab")
    rc = main(["build", str(text_path), "-r", "40", "-o", str(tmp_path / "o")])
    captured = capsys.readouterr()
    assert rc == 2
    assert "BlockTooLarge" in captured.err


def test_query_output(desk_paths, capsys):
    _, index_path = desk_paths
    assert main(["query", str(index_path), "aba"]) == 0
    assert capsys.readouterr().out == "1\n4\n"
    assert main(["query", str(index_path), "aba", "--count"]) == 0
    assert capsys.readouterr().out == "2\n"
    assert main(["query", str(index_path), "zz"]) == 0
    assert capsys.readouterr().out == ""


def test_query_corrupt_index(desk_paths, capsys):
    _, index_path = desk_paths
    data = bytearray(index_path.read_bytes())
    data[-10] ^= 0xFF
    index_path.write_bytes(bytes(data))
    rc = main(["query", str(index_path), "aba"])
    assert rc == 2
    assert "CorruptSection" in capsys.readouterr().err


def test_verify_ok(desk_paths, capsys):
    _, index_path = desk_paths
    rc = main(["verify", str(index_path), "--samples", "25"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "result=PASS" in out


def test_verify_zero_samples(desk_paths, capsys):
    _, index_path = desk_paths
    rc = main(["verify", str(index_path), "--samples", "0"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "failures=0" in out


def test_verify_random(capsys):
    rc = main(["verify", "--random", "--samples", "8", "--seed", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "result=PASS" in out


def _rewrite_section(path, tag, mutate):
    """Apply `mutate` to a section payload and fix its checksum."""
    data = bytearray(path.read_bytes())
    pos = 8
    for current in SECTION_ORDER:
        length = struct.unpack_from("<Q", data, pos + 4)[0]
        start = pos + 12
        if current == tag:
            payload = bytearray(data[start : start + length])
            mutate(payload)
            data[start : start + length] = payload
            data[start + length : start + length + 4] = struct.pack(
                "<I", zlib.crc32(bytes(payload))
            )
            path.write_bytes(bytes(data))
            return
        pos = start + length + 4
    raise AssertionError(f"section {tag} not found")


def test_verify_catches_semantic_mutation(desk_paths, capsys):
    """A mutation that keeps checksums valid must fail verification."""
    _, index_path = desk_paths

    def swap_first_ranks(payload):
        # SARR payload: count, then ranks; swap the first two ranks and
        # patch the inverse to stay a consistent permutation
        count = struct.unpack_from("<Q", payload, 0)[0]
        a = struct.unpack_from("<Q", payload, 8)[0]
        b = struct.unpack_from("<Q", payload, 16)[0]
        struct.pack_into("<Q", payload, 8, b)
        struct.pack_into("<Q", payload, 16, a)
        struct.pack_into("<Q", payload, 8 * (1 + count + b), 1)
        struct.pack_into("<Q", payload, 8 * (1 + count + a), 2)

    _rewrite_section(index_path, b"SARR", swap_first_ranks)
    rc = main(["verify", str(index_path), "--samples", "30"])
    out = capsys.readouterr().out
    assert rc == 3
    assert "result=FAIL" in out


def test_stats_output(desk_paths, capsys):
    _, index_path = desk_paths
    rc = main(["stats", str(index_path)])
    out = capsys.readouterr().out
    assert rc == 0
    values = dict(line.split("=", 1) for line in out.strip().splitlines())
    assert values["n"] == "8"
    assert values["table_entries"] == "16"
    assert values["rho_letters_within_bound"] == "true"
    assert int(values["rho_letters"]) <= int(values["n"]) + int(values["boundaries"])


def test_stats_disabled_table(tmp_path, capsys):
    index = build_index(b"abcabcabc", 4, table_budget=0)
    path = tmp_path / "x.psi"
    save_index(index, path)
    rc = main(["stats", str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "table_entries=disabled" in out


def test_bench_output(desk_paths, tmp_path, capsys):
    _, index_path = desk_paths
    pattern_file = tmp_path / "pats.txt"
    pattern_file.write_bytes(b"aba\nba\nbb\n")
    rc = main(["bench", str(index_path), str(pattern_file), "--repeat", "2"])
    out = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert out[0].startswith("pattern\tm\tocc\t")
    assert len(out) == 4
    aba = out[1].split("\t")
    assert aba[0] == "aba" and aba[1] == "3" and aba[2] == "2"


def test_bench_repeat_zero(desk_paths, tmp_path, capsys):
    _, index_path = desk_paths
    pattern_file = tmp_path / "pats.txt"
    pattern_file.write_bytes(b"aba\n")
    rc = main(["bench", str(index_path), str(pattern_file), "--repeat", "0"])
    out = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert len(out) == 1  # header only


def test_bench_counters_monotone_in_pattern_length(tmp_path):
    """Prefix sweep on a uniform text: total descent work never shrinks.

    (On general texts the offset-jump sequence can change with m, so the
    totals oscillate; the uniform text keeps the descent structure fixed.)
    """
    text_path = tmp_path / "uni.txt"
    text_path.write_bytes(b"a" * 256)
    index_path = tmp_path / "uni.psi"
    assert main(["build", str(text_path), "-r", "4", "-o", str(index_path)]) == 0
    from psindex.storage import load_index

    index = load_index(index_path)
    totals = []
    for m in range(4, 25, 2):
        _, stats = index.find_all_detailed(b"a" * m)
        totals.append(
            stats.word_comparisons + stats.char_comparisons + stats.link_follows
        )
    assert totals == sorted(totals)
