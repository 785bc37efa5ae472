#!/usr/bin/env python3
"""Dump (prime, delta) samples for the quadruplet (0,2,6,8) below 1e8.

Writes p4a_delta.csv with downsampled discrepancy values; the early dip,
the crossover region around 1.17e6, and the run of sign changes that
follows are all visible when plotted.  Pass a different limit (e.g. 1e7)
as the first argument for a quicker look.
"""

import csv
import sys

from ktuples import PATTERNS, count_sign_changes


def main():
    limit = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10**8
    report = count_sign_changes(PATTERNS["P4a"], limit, sample_cap=20000)
    out = "p4a_delta.csv"
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["prime", "delta"])
        writer.writerows(report.samples)
    print(f"{len(report.samples)} samples -> {out}")
    print(f"crossover at {report.skewes}; {len(report.sign_changes)} sign changes below {limit}")
    (mx, mx_at), (mn, mn_at) = report.extrema
    print(f"extrema: max {mx:.3f} at {mx_at}, min {mn:.3f} at {mn_at}")


if __name__ == "__main__":
    main()
