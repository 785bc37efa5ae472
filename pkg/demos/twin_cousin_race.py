#!/usr/bin/env python3
"""Race the twins (p, p+2) against the cousins (p, p+4).

Both patterns have the same conjectured density, so their running
difference behaves like a random walk: +1 at a twin-only base prime,
-1 at a cousin-only one, level where a prime starts both (p = 3 does).
The walk keeps returning to zero; the zero count grows with the bound.
"""

import sys

from ktuples import PATTERNS, race


def main():
    limit = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10**6
    result = race(PATTERNS["P2a"], PATTERNS["P2b"], limit)
    print(f"twins vs cousins to {limit}:")
    print(f"  evaluation points: {result.evaluations}")
    print(f"  zeros of the walk: {result.zeros}")
    print(f"  final lead (twins - cousins): {result.final_y:+d}")
    step = max(1, len(result.walk) // 10)
    print("  walk snapshots (x, y):")
    for x, y in result.walk[::step]:
        print(f"    {x:>10} {y:+4d}")


if __name__ == "__main__":
    main()
