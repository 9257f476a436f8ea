"""Benchmark the family-classification kernel backends.

Times the compiled core against the numpy fallback on the full
2^(2^n) sweep for n = 3 and n = 4, checks that they agree bit for bit,
and prints the speedup.  Run as:

    python benchmarks/bench_kernels.py [repeats]
"""

import sys
import time

import numpy as np

from uflab.kernels import available_backends


def bench(fn, n, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn(n)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    backends = available_backends()
    if len(backends) == 1:
        print("note: compiled core not importable; only the fallback runs")
    for n in (3, 4):
        print("n = %d  (%d families)" % (n, 1 << (1 << n)))
        times = {}
        results = {}
        for name, fn in sorted(backends.items()):
            secs, out = bench(fn, n, repeats)
            times[name] = secs
            results[name] = out
            print("  %-16s %8.2f ms" % (name, secs * 1e3))
        values = list(results.values())
        agree = all(np.array_equal(values[0], v) for v in values[1:])
        print("  backends agree: %s" % agree)
        if len(times) == 2:
            slow, fast = max(times.values()), min(times.values())
            print("  speedup: %.1fx" % (slow / fast))
        if not agree:
            sys.exit(1)


if __name__ == "__main__":
    main()
