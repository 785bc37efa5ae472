"""Segmented sieve of Eratosthenes and enumeration of prime k-tuple base primes.

Primality over a window [lo, hi) is computed with an odd-only composite
mask (2 is special-cased), using base primes up to sqrt(hi) that are cached
and regrown geometrically.  Base primes p of a tuple pattern are found by
AND-ing shifted copies of the mask: p is kept iff p + a is prime for every
offset a of the pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

import numpy as np

if TYPE_CHECKING:
    from .hlconst import TuplePattern

# Numbers per segment; bitsets of this size stay cache-friendly.
DEFAULT_SEGMENT_LEN = 1 << 22

_cached_primes = np.zeros(0, dtype=np.int64)
_cached_limit = 1


def _simple_primes(n: int) -> np.ndarray:
    """All primes <= n by a plain odd-only sieve (non-segmented)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    if n == 2:
        return np.array([2], dtype=np.int64)
    count = (n - 1) // 2  # odds 3, 5, ..., up to n
    mask = np.ones(count, dtype=bool)
    p = 3
    while p * p <= n:
        if mask[(p - 3) // 2]:
            mask[(p * p - 3) // 2 :: p] = False
        p += 2
    odd = 3 + 2 * np.flatnonzero(mask)
    return np.concatenate(([2], odd)).astype(np.int64)


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n, served from a geometrically grown cache."""
    global _cached_primes, _cached_limit
    n = int(n)
    if n > _cached_limit:
        new_limit = max(n, 2 * _cached_limit, 1 << 16)
        _cached_primes = _simple_primes(new_limit)
        _cached_limit = new_limit
    cut = np.searchsorted(_cached_primes, n, side="right")
    return _cached_primes[:cut]


def _odd_prime_mask(lo: int, hi: int) -> tuple[int, np.ndarray]:
    """Mask over the odd numbers in [lo, hi); mask[j] is True iff first + 2j is prime."""
    first = lo if lo % 2 else lo + 1
    if first >= hi:
        return first, np.zeros(0, dtype=bool)
    n = (hi - first + 1) // 2
    mask = np.ones(n, dtype=bool)
    for p in primes_upto(math.isqrt(hi - 1))[1:].tolist():  # odd base primes
        start = p * p
        if start >= hi:
            break
        m = ((lo + p - 1) // p) * p
        if m > start:
            start = m
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - first) // 2 :: p] = False
    return first, mask


@dataclass(frozen=True, eq=False)
class Segment:
    """Primality flags over a half-open window: flags[i] iff lo + i is prime."""

    lo: int
    hi: int
    flags: np.ndarray

    def primes(self) -> np.ndarray:
        return (self.lo + np.flatnonzero(self.flags)).astype(np.int64)


def sieve_segment(lo: int, hi: int, *, max_len: int = DEFAULT_SEGMENT_LEN) -> Segment:
    """Sieve one window [lo, hi); lo >= 2 and hi - lo bounded by max_len."""
    lo, hi = int(lo), int(hi)
    if lo < 2:
        raise ValueError(f"segment lower bound must be >= 2, got {lo}")
    if hi <= lo:
        raise ValueError(f"empty segment [{lo}, {hi})")
    if hi - lo > max_len:
        raise ValueError(f"segment length {hi - lo} exceeds maximum {max_len}")
    flags = np.zeros(hi - lo, dtype=bool)
    first, mask = _odd_prime_mask(lo, hi)
    if mask.size:
        flags[first - lo :: 2] = mask
    if lo <= 2 < hi:
        flags[2 - lo] = True
    return Segment(lo, hi, flags)


def _tuple_block(pattern: "TuplePattern", lo: int, hi: int) -> np.ndarray:
    """Base primes p in [lo, hi) with p + a prime for every offset a.

    Sieves up to hi + max_offset so candidates near hi are fully tested.
    Only odd candidates are considered: p = 2 never qualifies since p + a
    is even and > 2 for every (even, positive) offset.
    """
    if lo >= hi:
        return np.zeros(0, dtype=np.int64)
    amax = pattern.max_offset
    first, mask = _odd_prime_mask(lo, hi + amax)
    m = (hi - first + 1) // 2
    if m <= 0:
        return np.zeros(0, dtype=np.int64)
    hits = mask[:m].copy()
    for a in pattern.offsets:
        h = a // 2
        hits &= mask[h : h + m]
    return (first + 2 * np.flatnonzero(hits)).astype(np.int64)


def tuple_stream(
    pattern: "TuplePattern",
    lo: int,
    hi: int,
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> np.ndarray:
    """All base primes of the pattern in [lo, hi), in increasing order."""
    blocks = list(TupleStream(pattern, lo, hi, segment_len=segment_len).blocks())
    if not blocks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(blocks)


class TupleStream:
    """Streaming enumeration of a pattern's base primes over [lo, limit).

    Iteration yields strictly increasing ints; blocks() yields per-segment
    int64 arrays for bulk consumers.
    """

    def __init__(
        self,
        pattern: "TuplePattern",
        lo: int = 2,
        limit: int | None = None,
        *,
        segment_len: int = DEFAULT_SEGMENT_LEN,
    ):
        pattern.require_admissible()
        if limit is None:
            raise ValueError("a scan limit is required")
        lo, limit = int(lo), int(limit)
        if lo < 2:
            raise ValueError(f"lower bound must be >= 2, got {lo}")
        if limit < lo:
            raise ValueError(f"limit {limit} below lower bound {lo}")
        if segment_len < 1:
            raise ValueError("segment length must be positive")
        self.pattern = pattern
        self.cursor = lo
        self.limit = limit
        self.segment_len = int(segment_len)

    def blocks(self) -> Iterator[np.ndarray]:
        while self.cursor < self.limit:
            seg_hi = min(self.cursor + self.segment_len, self.limit)
            block = _tuple_block(self.pattern, self.cursor, seg_hi)
            self.cursor = seg_hi
            yield block

    def __iter__(self) -> Iterator[int]:
        for block in self.blocks():
            yield from block.tolist()
