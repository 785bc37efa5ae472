#!/usr/bin/env python3
"""Density constants for the registered patterns.

Patterns whose offset sets hit every odd prime with the same number of
residue classes get identical constants -- compare P2a/P2b, P3a/P3b,
P5a/P5b -- while P4b comes out exactly twice P4a (their residue counts
differ only at q = 5).
"""

from ktuples import PATTERNS, hl_constant


def main():
    print(f"{'tuple':>6} {'offsets':>22} {'constant':>18} {'tail bound':>12}")
    consts = {}
    for label, pattern in PATTERNS.items():
        c = hl_constant(pattern, 10**7)
        consts[label] = c.value
        offsets = ",".join(map(str, pattern.full_offsets))
        print(f"{label:>6} {offsets:>22} {c.value:>18.12f} {c.tail_error_bound:>12.2e}")
    print()
    print("equal pairs:", consts["P2a"] == consts["P2b"],
          consts["P3a"] == consts["P3b"], consts["P5a"] == consts["P5b"],
          consts["P7a"] == consts["P7b"])
    print("P4b / P4a  =", consts["P4b"] / consts["P4a"])


if __name__ == "__main__":
    main()
