#!/usr/bin/env python3
"""Compare the compiled kernel backend against the pure-Python fallback.

Times the packed-word kernels in isolation and a build + query workload
end to end, once per available backend.

Usage:
    python benchmarks/bench_backends.py [--n 20000] [--queries 400]
"""

from __future__ import annotations

import argparse
import random
import time

from psindex import kernels
from psindex.index import build_index


def _timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(rng, iterations):
    bits, width = 4, 16
    codes = [rng.randrange(1, 12) for _ in range(4096)]
    words = kernels.pack_codes(codes, width, bits)
    positions = [rng.randint(1, len(codes) - width) for _ in range(iterations)]

    def extract():
        for p in positions:
            kernels.extract_span(words, width, bits, p, width)

    def lcp():
        for p in positions:
            kernels.span_lcp(words, width, p, words, width, 1, bits, width)

    def longlcp():
        for p in positions:
            kernels.long_lcp(words, width, p, 256, words, width, 1, 256, bits)

    def count():
        for p in positions:
            kernels.count_entry_prefix(p % 4096, 12, 4, 3, 4)

    def scan():
        kernels.scan_matches(words, width, bits, words[0] >> 32, 8, 1, len(codes) - 8)

    return {
        "extract_span": _timeit(extract),
        "span_lcp": _timeit(lcp),
        "long_lcp": _timeit(longlcp),
        "count_entry_prefix": _timeit(count),
        "scan_matches": _timeit(scan),
    }


def bench_end_to_end(rng, n, queries):
    alpha = "abcd"
    raw = "".join(rng.choice(alpha) for _ in range(n))
    patterns = []
    for _ in range(queries):
        m = rng.randint(1, 24)
        start = rng.randint(0, n - m)
        patterns.append(raw[start : start + m])

    def build():
        return build_index(raw, 8)

    build_time = _timeit(build, repeat=3)
    index = build()

    def query():
        for pattern in patterns:
            index.find_all(pattern)

    return {"build_index": build_time, f"{queries}_queries": _timeit(query)}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=20000)
    parser.add_argument("--queries", type=int, default=400)
    parser.add_argument("--kernel-iters", type=int, default=20000)
    args = parser.parse_args()

    backends = ["python"]
    try:
        kernels.set_backend("c")
        backends.append("c")
    except (ImportError, ValueError):
        print("compiled backend unavailable; timing the fallback only")

    results = {}
    for backend in backends:
        kernels.set_backend(backend)
        rng = random.Random(42)
        rows = bench_kernels(rng, args.kernel_iters)
        rows.update(bench_end_to_end(rng, args.n, args.queries))
        results[backend] = rows

    names = list(next(iter(results.values())))
    width = max(len(name) for name in names)
    header = f"{'benchmark'.ljust(width)}  " + "  ".join(
        f"{b:>12}" for b in backends
    )
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for name in names:
        row = f"{name.ljust(width)}  " + "  ".join(
            f"{results[b][name] * 1e3:>10.2f}ms" for b in backends
        )
        if len(backends) == 2:
            ratio = results["python"][name] / max(results["c"][name], 1e-12)
            row += f"  {ratio:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
