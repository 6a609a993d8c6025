"""Command-line front end: build, query, verify, stats, and bench.

Exit codes: 0 success, 1 usage error, 2 data error (bad inputs or a
corrupt index file), 3 verification failure.  Data output goes to
stdout, diagnostics to stderr; output is byte-identical across runs for
identical inputs (bench timing lives in its clearly marked column).
"""

from __future__ import annotations

import argparse
import sys
import time
from statistics import median

from .errors import PsindexError
from .index import build_index
from .storage import load_index, save_index, section_sizes
from .verify import OracleConfig, check_index, run_differential

USAGE_ERROR = 1
DATA_ERROR = 2
VERIFY_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def _positive_int(value):
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def _nonneg_int(value):
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {number}")
    return number


def build_parser():
    parser = _Parser(prog="psindex", description="packed sparse text index")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an index from a text file")
    p.add_argument("text_path")
    p.add_argument("-r", dest="block_size", type=_positive_int, required=True)
    p.add_argument("--word-capacity", type=_positive_int, default=None)
    p.add_argument("--alphabet", choices=("auto", "byte"), default="auto")
    p.add_argument("-o", dest="index_path", required=True)

    p = sub.add_parser("query", help="report all pattern occurrences")
    p.add_argument("index_path")
    p.add_argument("pattern")
    p.add_argument("--count", action="store_true")

    p = sub.add_parser("verify", help="differential check against the oracle")
    p.add_argument("index_path", nargs="?")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_nonneg_int, default=100)

    p = sub.add_parser("stats", help="report measured component sizes")
    p.add_argument("index_path")

    p = sub.add_parser("bench", help="per-query counters and timings")
    p.add_argument("index_path")
    p.add_argument("pattern_file")
    p.add_argument("--repeat", type=_nonneg_int, default=1)
    return parser


def cmd_build(args):
    try:
        with open(args.text_path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        sys.stderr.write(f"error: cannot read text: {exc}\n")
        return DATA_ERROR
    try:
        index = build_index(
            data,
            args.block_size,
            alphabet_mode=args.alphabet,
            word_capacity=args.word_capacity,
        )
        save_index(index, args.index_path)
    except PsindexError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return DATA_ERROR
    stats = index.stats()
    sections = " ".join(
        f"{name}={size}B" for name, size in sorted(section_sizes(index).items())
    )
    print(
        f"n={stats['n']} n_raw={stats['n_raw']} r={stats['r']} "
        f"sigma={stats['sigma']} {sections}"
    )
    return 0


def cmd_query(args):
    try:
        index = load_index(args.index_path)
        pattern = args.pattern.encode("latin-1")
        if not index.text.alphabet.int_symbols:
            pattern = args.pattern
        occurrences = index.find_all(pattern)
    except PsindexError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return DATA_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR
    if args.count:
        print(len(occurrences))
    else:
        for occ in occurrences:
            print(occ.pos)
    return 0


def cmd_verify(args):
    if args.random or args.index_path is None:
        config = OracleConfig(
            seed=args.seed,
            instances=args.samples,
            n_max=512,
            exhaustive=False,
            deep=True,
        )
        report = run_differential(config)
    else:
        try:
            index = load_index(args.index_path)
        except PsindexError as exc:
            sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
            return DATA_ERROR
        except OSError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return DATA_ERROR
        report = check_index(index, samples=args.samples, seed=args.seed)
    print(report.to_text())
    return 0 if report.ok else VERIFY_ERROR


def cmd_stats(args):
    try:
        index = load_index(args.index_path)
    except PsindexError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return DATA_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR
    stats = index.stats()
    for key in (
        "n_raw",
        "n",
        "r",
        "sigma",
        "word_capacity",
        "half",
        "bits_per_char",
        "boundaries",
        "text_words",
        "sa_words",
        "tree_nodes",
        "trie_nodes",
        "trie_leaves",
        "rho_entries",
        "rho_letters",
        "counting_cells",
        "ord_entries",
    ):
        print(f"{key}={stats[key]}")
    if stats["table_enabled"]:
        print(f"table_entries={stats['table_entries']}")
    else:
        print("table_entries=disabled")
    rho_bound = stats["n"] + stats["boundaries"]
    print(f"rho_letters_within_bound={str(stats['rho_letters'] <= rho_bound).lower()}")
    for name, size in sorted(section_sizes(index).items()):
        print(f"section_{name}={size}")
    return 0


def cmd_bench(args):
    try:
        index = load_index(args.index_path)
        with open(args.pattern_file, "rb") as handle:
            lines = [line for line in handle.read().splitlines() if line]
    except PsindexError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return DATA_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DATA_ERROR
    print("pattern\tm\tocc\twords\tchars\tlinks\tsteps\tvisits\ttime_us")
    if args.repeat == 0:
        return 0
    text_like = not index.text.alphabet.int_symbols
    for line in lines:
        pattern = line.decode("latin-1") if text_like else line
        timings = []
        stats = None
        occs = ()
        for _ in range(args.repeat):
            start = time.perf_counter()
            occs, stats = index.find_all_detailed(pattern)
            timings.append((time.perf_counter() - start) * 1e6)
        shown = line.decode("latin-1", "replace")
        if len(shown) > 24:
            shown = shown[:21] + "..."
        print(
            f"{shown}\t{stats.m}\t{len(occs)}\t{stats.word_comparisons}\t"
            f"{stats.char_comparisons}\t{stats.link_follows}\t"
            f"{stats.descent_steps}\t{stats.nodes_visited}\t"
            f"{median(timings):.1f}"
        )
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "build": cmd_build,
        "query": cmd_query,
        "verify": cmd_verify,
        "stats": cmd_stats,
        "bench": cmd_bench,
    }[args.command]
    return handler(args)


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
