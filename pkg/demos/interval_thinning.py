#!/usr/bin/env python3
"""Tuple counts thin out: observed vs estimated counts per interval.

Splits [0, count*width) into equal windows and compares the observed
number of twin base primes in each against C * Li_2 over the window,
the desk-size analog of tabulating a sextuplet at width 1e10.  Ratios
hover around 1, drifting as the windows thin.
"""

import sys

from ktuples import PATTERNS, interval_stats


def main():
    width = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10**5
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 10
    rows = interval_stats(PATTERNS["P2a"], width, count)
    print(f"{'interval':>20} {'observed':>9} {'estimate':>10} {'est/obs':>8}")
    for r in rows:
        ratio = f"{r.ratio:.5f}" if r.ratio is not None else "-"
        print(f"[{r.lo:>9},{r.hi:>9}) {r.observed:>9} {r.estimate:>10.2f} {ratio:>8}")
    print(f"{'total':>20} {sum(r.observed for r in rows):>9}")


if __name__ == "__main__":
    main()
