"""Named tuple patterns and their published leading density factors.

Each density is conventionally written as a rational prefactor times a
product over primes at or beyond some starting prime, the generic factor
being q^k (q - k - 1) / (q - 1)^(k+1) there.  The prefactor therefore
equals 2^k times the exact factors at the odd primes below the start;
_leading_factor reproduces it from the residue counts, and the registry
is verified against the published rationals at import time (skipped
under -O).
"""

from __future__ import annotations

from fractions import Fraction

from .hlconst import TuplePattern

PATTERNS: dict[str, TuplePattern] = {
    "P2a": TuplePattern((2,), "P2a"),
    "P2b": TuplePattern((4,), "P2b"),
    "P3a": TuplePattern((2, 6), "P3a"),
    "P3b": TuplePattern((4, 6), "P3b"),
    "P4a": TuplePattern((2, 6, 8), "P4a"),
    "P4b": TuplePattern((4, 6, 10), "P4b"),
    "P5a": TuplePattern((2, 6, 8, 12), "P5a"),
    "P5b": TuplePattern((4, 6, 10, 12), "P5b"),
    "P6": TuplePattern((4, 6, 10, 12, 16), "P6"),
    "P7a": TuplePattern((2, 6, 8, 12, 18, 20), "P7a"),
    "P7b": TuplePattern((2, 8, 12, 14, 18, 20), "P7b"),
}

# label -> (rational prefactor, first prime of the tail product)
LEADING_FACTORS: dict[str, tuple[Fraction, int]] = {
    "P2a": (Fraction(2), 3),
    "P2b": (Fraction(2), 3),
    "P3a": (Fraction(9, 2), 5),
    "P3b": (Fraction(9, 2), 5),
    "P4a": (Fraction(27, 2), 5),
    "P4b": (Fraction(27), 5),
    "P5a": (Fraction(15**4, 2**11), 7),
    "P5b": (Fraction(15**4, 2**11), 7),
    "P6": (Fraction(15**5, 2**13), 7),
    "P7a": (Fraction(35**6, 3 * 2**22), 11),
    "P7b": (Fraction(35**6, 3 * 2**22), 11),
}


def get_pattern(label: str) -> TuplePattern:
    try:
        return PATTERNS[label]
    except KeyError:
        known = ", ".join(sorted(PATTERNS))
        raise KeyError(f"unknown tuple label {label!r} (known: {known})") from None


def _leading_factor(pattern: TuplePattern, start: int) -> Fraction:
    """2^k times the exact factors at odd primes below start, corrected for
    primes at or beyond start whose residue count departs from the generic
    k + 1 (the published product uses the generic factor there)."""
    k = pattern.k
    full = pattern.full_offsets
    out = Fraction(2**k)
    for q in (3, 5, 7, 11, 13, 17, 19):
        if q > pattern.max_offset and q >= start:
            break
        w = len({a % q for a in full})
        if q < start:
            out *= Fraction((q - w) * q**k, (q - 1) ** (k + 1))
        elif w != k + 1:
            out *= Fraction(q - w, q - k - 1)
    return out


def _check_registry() -> None:
    for label, pattern in PATTERNS.items():
        pattern.require_admissible()
        expected, start = LEADING_FACTORS[label]
        got = _leading_factor(pattern, start)
        if got != expected:
            raise AssertionError(
                f"{label}: leading factor {got} != published {expected}"
            )


if __debug__:
    _check_registry()
