"""The reference implementations themselves, plus the differential runner."""

from conftest import A, B, DESK_RAW, PAD, SENT
from psindex import blocktrie, oracle
from psindex.suffixtree import RankInterval
from psindex.verify import OracleConfig, Report, check_instance, run_differential


def test_naive_find_all():
    assert oracle.naive_find_all("abaabaa", "aba") == [1, 4]
    assert oracle.naive_find_all("abc", "abcd") == []
    assert oracle.naive_find_all("abaabaa", "abaabaa") == [1]
    assert oracle.naive_find_all("aaaa", "aa") == [1, 2, 3]


def test_naive_suffix_array_desk():
    assert oracle.naive_suffix_array(DESK_RAW, 2) == [3, 1, 0, 2]


def test_naive_rank_interval_desk():
    assert oracle.naive_rank_interval(DESK_RAW, 2, (A, B, A)) == (3, 3)
    assert oracle.naive_rank_interval(DESK_RAW, 2, (A,)) == (1, 3)
    assert oracle.naive_rank_interval(DESK_RAW, 2, (9, 9)) == (1, 0)


def test_naive_suffix_link_desk():
    assert oracle.naive_suffix_link(DESK_RAW, 2, (A,)) == ((), 1)
    full = (A, B, A, A, B, A, A, SENT)
    assert oracle.naive_suffix_link(DESK_RAW, 2, full) == (full[2:], 2)
    assert oracle.naive_suffix_link(DESK_RAW, 2, (A, SENT)) == ((), 2)


def test_naive_ord_desk():
    assert oracle.naive_ord(DESK_RAW, 2, ()) == [3, 1, 0, 2]
    assert oracle.naive_ord(DESK_RAW, 2, (A,)) == [3, 2]
    assert oracle.naive_ord(DESK_RAW, 2, (9, 9, 9)) == []


def test_boundary_oracle_agrees_with_one_shot():
    boracle = oracle.BoundaryOracle(DESK_RAW, 2)
    assert boracle.suffix_array() == [3, 1, 0, 2]
    assert boracle.rank_interval(bytes([A, B, A])) == (3, 3)
    assert boracle.rank_interval(bytes([A])) == (1, 3)
    assert boracle.suffix_link(bytes([A, SENT])) == (b"", 2)
    assert boracle.ordinal_set(bytes([A])) == [3, 2]
    assert boracle.ordinal_set(bytes([PAD])) == [0]


def test_differential_zero_failures_small():
    config = OracleConfig(
        instances=40, n_max=256, deep=True, exhaustive=True, exhaustive_n=6
    )
    report = run_differential(config)
    assert report.ok, report.to_text()
    assert report.instances == 40 + (2**7 - 2)
    assert report.checks["find_all"] > 0


def test_differential_deterministic():
    config = OracleConfig(instances=15, n_max=128, exhaustive=False)
    first = run_differential(config)
    second = run_differential(config)
    s1, s2 = first.summary(), second.summary()
    s1.pop("elapsed_s"), s2.pop("elapsed_s")
    assert s1 == s2


def test_empty_instance_count_gives_empty_report():
    report = run_differential(OracleConfig(instances=0, exhaustive=False))
    assert report.ok
    assert report.instances == 0
    assert sum(report.checks.values()) == 0


def test_seeded_mutant_is_caught(monkeypatch):
    """An off-by-one in the interval move must produce failures."""
    true_step = blocktrie.interval_step

    def broken_step(trie, node, code, interval):
        moved = true_step(trie, node, code, interval)
        if moved.is_empty:
            return moved
        return RankInterval(moved.lo, moved.hi - 1)  # drop the last member

    monkeypatch.setattr(blocktrie, "interval_step", broken_step)
    import random

    report = Report()
    config = OracleConfig(deep=False)
    rng = random.Random(5)
    # patterns with guaranteed offset hits: substrings spanning boundaries
    raw = "abaababbaabaabbbabaababb" * 4
    patterns = [raw[i : i + 6] for i in range(0, 18, 3)]
    check_instance(report, raw, 4, patterns, config, rng)
    assert not report.ok
    assert report.failures_for("find_all")


def test_report_text_shape():
    report = run_differential(OracleConfig(instances=3, n_max=64, exhaustive=False))
    text = report.to_text()
    assert "instances=3" in text
    assert text.endswith("result=PASS")
    summary = report.summary()
    assert summary["failures"] == 0
