"""Differential verification of the index against the brute-force oracle.

Runs randomized instances (plus an exhaustive sweep of small binary
texts) and compares every layer of the index with its independent
reference: query results, rank intervals, suffix links, ordinal sets,
interval re-indexing, and the instrumented cost budgets.  Failures carry
a minimized reproducer so they can be replayed directly.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from . import blocktrie, oracle
from .errors import PsindexError
from .index import build_index
from .rightsearch import right_search
from .suffixtree import RankInterval
from .text import encode_pattern

RS_BUDGET_FACTOR = 8  # descent work <= 8 * (m + r^2 + r)
ROLLUP_BUDGET_FACTOR = 16  # whole query <= 16 * (m + r^2 + r * (occ + 1))


@dataclass(frozen=True, slots=True)
class Failure:
    check: str
    context: str
    detail: str


@dataclass
class Report:
    failures: list = field(default_factory=list)
    checks: Counter = field(default_factory=Counter)
    instances: int = 0
    elapsed: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def fail(self, check, context, detail):
        self.failures.append(Failure(check, context, str(detail)))

    def failures_for(self, *checks):
        return [f for f in self.failures if f.check in checks]

    def summary(self):
        out = {
            "instances": self.instances,
            "failures": len(self.failures),
            "elapsed_s": round(self.elapsed, 3),
        }
        for name in sorted(self.checks):
            out[f"checks.{name}"] = self.checks[name]
        return out

    def to_text(self):
        lines = [f"{k}={v}" for k, v in self.summary().items()]
        for f in self.failures[:50]:
            lines.append(f"FAIL {f.check} [{f.context}] {f.detail}")
        if len(self.failures) > 50:
            lines.append(f"... and {len(self.failures) - 50} more failures")
        lines.append("result=PASS" if self.ok else "result=FAIL")
        return "\n".join(lines)


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 20260801
    sigmas: tuple = (2, 4, 16)
    n_min: int = 4
    n_max: int = 4096
    block_sizes: tuple = (1, 2, 4, 8)
    m_max: int = 32
    instances: int = 500
    patterns_per_instance: int = 6
    exhaustive: bool = True
    exhaustive_n: int = 10
    exhaustive_m: int = 4
    deep: bool = False
    interval_probes: int = 24
    link_nodes: int = 0  # 0 = all explicit nodes when deep


def _random_text(rng, sigma, n_raw):
    alpha = [chr(ord("a") + i) for i in range(sigma)]
    style = rng.random()
    if style < 0.70:
        return "".join(rng.choice(alpha) for _ in range(n_raw))
    if style < 0.85:
        period = "".join(rng.choice(alpha) for _ in range(rng.randint(1, 8)))
        return (period * (n_raw // len(period) + 1))[:n_raw]
    # run-heavy: repeat each drawn symbol a few times
    out = []
    while len(out) < n_raw:
        out.extend(rng.choice(alpha) * rng.randint(1, 6))
    return "".join(out[:n_raw])


def _random_pattern(rng, raw, sigma, m_max):
    alpha = [chr(ord("a") + i) for i in range(sigma)]
    m = rng.randint(1, m_max)
    roll = rng.random()
    if roll < 0.55 and len(raw) >= m:
        start = rng.randint(0, len(raw) - m)
        pat = raw[start : start + m]
        if roll < 0.15:  # mutate one character
            pos = rng.randrange(m)
            pat = pat[:pos] + rng.choice(alpha) + pat[pos + 1 :]
        return pat
    if roll < 0.92:
        return "".join(rng.choice(alpha) for _ in range(m))
    # occasionally inject a symbol outside any generated alphabet
    body = [rng.choice(alpha) for _ in range(m)]
    body[rng.randrange(m)] = "z"
    return "".join(body)


def _shrink_find_all(raw, r, pattern):
    """Smallest (raw, pattern) still disagreeing with the oracle."""

    def disagrees(text_, pat_):
        if not text_ or not pat_:
            return False
        try:
            idx = build_index(text_, r)
            got = [o.pos for o in idx.find_all(pat_)]
        except PsindexError:
            return True
        return got != oracle.naive_find_all(text_, pat_)

    changed = True
    while changed:
        changed = False
        for cut in (len(raw) // 2, 1):
            while len(raw) > 1 and disagrees(raw[:-cut], pattern):
                raw = raw[:-cut]
                changed = True
            while len(raw) > 1 and disagrees(raw[cut:], pattern):
                raw = raw[cut:]
                changed = True
        while len(pattern) > 1 and disagrees(pattern, pattern[:-1]):
            pattern = pattern[:-1]
            changed = True
    return raw, pattern


def _check_find_all(report, idx, raw, pattern, context):
    try:
        occs, stats = idx.find_all_detailed(pattern)
    except PsindexError as exc:
        report.fail("find_all", context, f"raised {type(exc).__name__}: {exc}")
        return None
    got = [o.pos for o in occs]
    want = oracle.naive_find_all(raw, pattern)
    kind = "find_all_short" if stats.path == "short" else "find_all"
    report.checks[kind] += 1
    if got != want:
        small_raw, small_pat = _shrink_find_all(raw, idx.r, pattern)
        report.fail(
            kind,
            context,
            f"got {got[:12]} want {want[:12]}; "
            f"minimized raw={small_raw!r} pattern={small_pat!r}",
        )
        return None
    return stats


def _check_rollup(report, idx, stats, context):
    if stats.path != "tree":
        return
    r = idx.r
    budget = ROLLUP_BUDGET_FACTOR * (stats.m + r * r + r * (stats.occurrences + 1))
    report.checks["rollup_budget"] += 1
    if stats.work_total > budget:
        report.fail(
            "rollup_budget", context, f"work {stats.work_total} > budget {budget}"
        )
    sigma = idx.text.alphabet.size
    for k, (visits, emitted) in stats.per_offset_visits.items():
        report.checks["traverse_bound"] += 1
        allowed = (sigma + 2) * r * (emitted + 1)
        if visits > allowed:
            report.fail(
                "traverse_bound",
                context,
                f"k={k}: visited {visits} nodes > {allowed}",
            )


def _check_right_search(report, idx, boracle, pattern, context):
    text = idx.text
    if len(pattern) < idx.r:
        return
    codes = text.alphabet.codes_or_none(pattern)
    if codes is None:
        return
    pat = encode_pattern(text, pattern)
    hits, counters = right_search(idx.tree, pat)
    got = {h.k: (h.interval.lo, h.interval.hi) for h in hits}
    want = boracle.boundary_hits(pattern)
    report.checks["rank_intervals"] += 1
    if got != want:
        report.fail(
            "rank_intervals", context, f"pattern {pattern!r}: got {got} want {want}"
        )
    budget = RS_BUDGET_FACTOR * (pat.m + idx.r * idx.r + idx.r)
    report.checks["rs_budget"] += 1
    if counters.total > budget:
        report.fail(
            "rs_budget",
            context,
            f"pattern {pattern!r}: cost {counters.total} > budget {budget}",
        )


def _check_structure(report, idx, boracle, rng, config, context):
    report.checks["suffix_array"] += 1
    if idx.sa.sa != boracle.suffix_array():
        report.fail("suffix_array", context, "rank order differs from oracle")
        return

    def node_label(node, depth=None):
        ordinal = idx.sa.ordinal_at(node.min_rank)
        return boracle.label(ordinal, node.depth if depth is None else depth)

    nodes = [n for n in idx.tree.iter_preorder() if n is not idx.tree.root]
    picked = nodes
    if config.link_nodes and len(nodes) > config.link_nodes:
        picked = rng.sample(nodes, config.link_nodes)
    for node in picked:
        label = node_label(node)
        want_tail, want_type = boracle.suffix_link(label)
        locus = node.link
        target = locus.child if locus.offset else locus.anchor
        got_tail = node_label(target, locus.anchor.depth + locus.offset)
        report.checks["links"] += 1
        if node.link_type != want_type or got_tail != want_tail:
            report.fail(
                "links",
                context,
                f"label {label!r}: got ({got_tail!r}, {node.link_type}) "
                f"want ({want_tail!r}, {want_type})",
            )
        report.checks["link_monotone"] += 1
        parent = node.parent
        if parent is not idx.tree.root and parent.link_type > node.link_type:
            report.fail(
                "link_monotone",
                context,
                f"type {parent.link_type} above {node.link_type}",
            )

    # rank intervals of sampled nodes index exactly the suffixes they prefix
    for node in rng.sample(nodes, min(6, len(nodes))):
        label = node_label(node)
        lo, hi = boracle.rank_interval(label)
        report.checks["rank_spans"] += 1
        if (node.min_rank, node.max_rank) != (lo, hi):
            report.fail(
                "rank_spans",
                context,
                f"{label!r}: got [{node.min_rank},{node.max_rank}] want [{lo},{hi}]",
            )


def _check_trie(report, idx, boracle, rng, config, context):
    trie = idx.trie
    internal = [n for n in trie.iter_preorder() if not n.is_leaf]
    all_nodes = internal + [n for n in trie.iter_preorder() if n.is_leaf]

    for node in rng.sample(all_nodes, min(6, len(all_nodes))):
        if not node.ordinals:
            continue
        label = boracle.block_label(node.ordinals[0], node.depth)
        want = boracle.ordinal_set(label)
        report.checks["ordinal_sets"] += 1
        if list(node.ordinals) != want:
            report.fail("ordinal_sets", context, f"{label!r}: got {node.ordinals}")

    # letter conservation per internal node
    for node in internal:
        report.checks["letter_conservation"] += 1
        total = sum(
            blocktrie.count_prefix(trie, node, b, node.count)
            for b in range(trie.base)
        )
        if total != node.count:
            report.fail(
                "letter_conservation", context, f"counted {total} of {node.count}"
            )
        stored = sum(node.counts[b][len(node.entries)] for b in range(trie.base))
        if stored != len(node.entries) * trie.half:
            report.fail(
                "letter_conservation", context, f"stored {stored} with padding"
            )

    # interval re-indexing vs brute-force filtering of the materialized sets
    for _ in range(config.interval_probes):
        node = rng.choice(internal)
        if not node.children or node.count == 0:
            continue
        letter = rng.choice(list(node.children))
        lo = rng.randint(1, node.count)
        hi = rng.randint(lo - 1, node.count)
        moved = blocktrie.interval_step(trie, node, letter, RankInterval(lo, hi))
        child = node.children[letter]
        child_members = set(child.ordinals)
        want = [j for j in node.ordinals[lo - 1 : hi] if j in child_members]
        got = (
            list(child.ordinals[moved.lo - 1 : moved.hi])
            if not moved.is_empty
            else []
        )
        report.checks["interval_probe"] += 1
        if got != want:
            report.fail(
                "interval_probe",
                context,
                f"letter {letter} [{lo},{hi}]: got {got} want {want}",
            )


def _check_accounting(report, idx, context):
    stats = idx.stats()
    n, boundaries = stats["n"], stats["boundaries"]
    report.checks["accounting"] += 1
    if stats["rho_letters"] > n + boundaries:
        report.fail(
            "accounting",
            context,
            f"rho letters {stats['rho_letters']} > {n + boundaries}",
        )
    if stats["ord_entries"] != boundaries:
        report.fail(
            "accounting",
            context,
            f"leaf ordinal entries {stats['ord_entries']} != {boundaries}",
        )
    table = idx.trie.table
    if table.enabled:
        base = stats["sigma"] + 2
        want = base ** (stats["half"] + 1) * stats["half"]
        if stats["table_entries"] != want:
            report.fail(
                "accounting",
                context,
                f"table entries {stats['table_entries']} != {want}",
            )


def check_instance(report, raw, r, patterns, config, rng):
    """Build one index and run every comparison for it."""
    context = f"sigma={len(set(raw))} n={len(raw)} r={r}"
    try:
        idx = build_index(raw, r, keep_ordinals=config.deep)
    except PsindexError as exc:
        report.fail("build", context, f"{type(exc).__name__}: {exc}")
        return
    report.instances += 1
    boracle = oracle.BoundaryOracle(raw, r) if config.deep else None
    for pattern in patterns:
        stats = _check_find_all(report, idx, raw, pattern, context)
        if stats is not None and config.deep:
            _check_rollup(report, idx, stats, context)
        if config.deep:
            _check_right_search(report, idx, boracle, pattern, context)
    if config.deep:
        _check_structure(report, idx, boracle, rng, config, context)
        _check_trie(report, idx, boracle, rng, config, context)
        _check_accounting(report, idx, context)


def run_differential(config=OracleConfig()):
    """Run the whole battery; returns a Report with per-check tallies."""
    rng = random.Random(config.seed)
    report = Report()
    started = time.perf_counter()

    for _ in range(config.instances):
        sigma = rng.choice(config.sigmas)
        span = max(1, config.n_max // max(1, config.n_min))
        n_raw = max(1, int(config.n_min * span ** rng.random()))
        raw = _random_text(rng, sigma, n_raw)
        r = rng.choice(config.block_sizes)
        patterns = [
            _random_pattern(rng, raw, sigma, config.m_max)
            for _ in range(config.patterns_per_instance)
        ]
        check_instance(report, raw, r, patterns, config, rng)

    if config.exhaustive:
        patterns = [
            "".join(p)
            for m in range(1, config.exhaustive_m + 1)
            for p in itertools.product("ab", repeat=m)
        ]
        for length in range(1, config.exhaustive_n + 1):
            for tpl in itertools.product("ab", repeat=length):
                raw = "".join(tpl)
                check_instance(report, raw, 2, patterns, config, rng)

    report.elapsed = time.perf_counter() - started
    return report


def check_index(index, samples=100, seed=0):
    """Oracle checks for an already-built index (used by file verification).

    With samples == 0 only returns an empty passing report.
    """
    report = Report()
    started = time.perf_counter()
    if samples <= 0:
        report.elapsed = time.perf_counter() - started
        return report
    rng = random.Random(seed)
    raw = index.text.decode_raw()
    boracle = oracle.BoundaryOracle(raw, index.r)
    report.instances = 1
    context = f"loaded n={len(raw)} r={index.r}"

    report.checks["suffix_array"] += 1
    if index.sa.sa != boracle.suffix_array():
        report.fail("suffix_array", context, "rank order differs from oracle")
        report.elapsed = time.perf_counter() - started
        return report

    def node_label(node, depth=None):
        ordinal = index.sa.ordinal_at(node.min_rank)
        return boracle.label(ordinal, node.depth if depth is None else depth)

    nodes = [n for n in index.tree.iter_preorder() if n is not index.tree.root]
    picked = nodes if len(nodes) <= samples else rng.sample(nodes, samples)
    for node in picked:
        label = node_label(node)
        want_tail, want_type = boracle.suffix_link(label)
        locus = node.link
        target = locus.child if locus.offset else locus.anchor
        got_tail = node_label(target, locus.anchor.depth + locus.offset)
        report.checks["links"] += 1
        if node.link_type != want_type or got_tail != want_tail:
            report.fail("links", context, f"label {label!r}")

    leaves = [n for n in index.trie.iter_preorder() if n.is_leaf]
    for leaf in leaves if len(leaves) <= samples else rng.sample(leaves, samples):
        label = boracle.block_label(leaf.ordinals[0], leaf.depth)
        report.checks["ordinal_sets"] += 1
        if list(leaf.ordinals) != boracle.ordinal_set(label):
            report.fail("ordinal_sets", context, f"leaf {label!r}")

    sigma = index.text.alphabet.size
    alpha = [index.text.alphabet.symbols[rng.randrange(sigma)] for _ in range(64)]
    for _ in range(samples):
        m = rng.randint(1, max(1, min(24, len(raw))))
        if rng.random() < 0.7 and len(raw) >= m:
            start = rng.randint(0, len(raw) - m)
            pattern = raw[start : start + m]
        else:
            picks = [rng.choice(alpha) for _ in range(m)]
            pattern = bytes(picks) if isinstance(raw, bytes) else "".join(picks)
        report.checks["find_all"] += 1
        got = [o.pos for o in index.find_all(pattern)]
        want = oracle.naive_find_all(raw, pattern)
        if got != want:
            report.fail("find_all", context, f"pattern {pattern!r}")

    report.elapsed = time.perf_counter() - started
    return report
