#!/usr/bin/env python3
"""Find the first prime where each tuple count overtakes its density estimate.

The discrepancy delta(p) = count(p) - C * Li_{k+1}(2, p) starts negative
for every pattern here; the scan walks the tuple's base primes until the
sign first flips and reports that prime.  The desk-scale patterns finish
in seconds; the commented entries reproduce at the stated (much larger)
bounds if you have the patience.
"""

import time

from ktuples import PATTERNS, find_skewes

DESK = [
    ("P3b", 10**6),
    ("P4a", 2 * 10**6),
    ("P2a", 2 * 10**6),
    ("P2b", 6 * 10**6),
    ("P5a", 22 * 10**6),
    ("P3a", 88 * 10**6),
    # ("P5b", 220 * 10**6),      # -> 216646267
    # ("P4b", 830 * 10**6),      # -> 827929093
    # ("P6", 252 * 10**9),       # -> 251331775687 (long run; use --checkpoint)
]


def main():
    print(f"{'tuple':>6} {'limit':>12} {'crossover':>14} {'count':>8} {'seconds':>8}")
    for label, limit in DESK:
        start = time.perf_counter()
        report = find_skewes(PATTERNS[label], limit)
        elapsed = time.perf_counter() - start
        where = report.skewes if report.skewes is not None else "none"
        print(f"{label:>6} {limit:>12} {where:>14} {report.count:>8} {elapsed:>8.2f}")


if __name__ == "__main__":
    main()
