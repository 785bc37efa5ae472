"""Tuple patterns, admissibility, and Hardy-Littlewood density constants.

For a pattern with nonzero offsets (a1 < ... < ak) the density constant is

    C = 2^k * prod over odd primes q of (1 - w(q)/q) / (1 - 1/q)^(k+1)

where w(q) is the number of distinct residues of the full offset set
{0, a1, ..., ak} modulo q.  Zero is counted: the twin specialization
(1 - 2/q)/(1 - 1/q)^2 = q(q-2)/(q-1)^2 needs w = 2, not 1.  For q beyond
the largest offset all k+1 residues are distinct, so w(q) = k + 1 and the
factor is 1 - k(k+1)/(2q^2) + O(q^-3); the product converges absolutely
for admissible patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sieve import primes_upto

DEFAULT_TRUNCATION = 10**7

# Residue counts are taken exactly (by reduction) for odd primes up to this
# bound or the largest offset, whichever is bigger; beyond it w(q) = k + 1.
# A fixed floor keeps equal-density patterns on identical code paths so
# their constants agree bit-for-bit.
_EXACT_RESIDUE_FLOOR = 31


class InadmissiblePatternError(ValueError):
    """The offsets cover every residue class modulo some prime q."""

    def __init__(self, pattern: "TuplePattern", q: int):
        self.pattern = pattern
        self.covering_prime = q
        super().__init__(
            f"pattern {pattern} is not admissible: offsets cover all residue "
            f"classes mod q = {q}"
        )


def _small_primes_upto(n: int) -> list[int]:
    out = []
    for m in range(2, n + 1):
        if all(m % p for p in out):
            out.append(m)
    return out


def _is_odd_prime(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class TuplePattern:
    """Offsets (a1 < ... < ak) of a prime k-tuple (p, p+a1, ..., p+ak).

    A leading zero in the input is accepted and stripped; the base offset 0
    is always implicit.  Offsets must be positive, even, strictly
    increasing.
    """

    offsets: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        offs = tuple(int(a) for a in self.offsets)
        if offs and offs[0] == 0:
            offs = offs[1:]
        if not offs:
            raise ValueError("pattern needs at least one nonzero offset")
        if any(a <= 0 or a % 2 for a in offs):
            raise ValueError(f"offsets must be positive even integers: {offs}")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"offsets must be strictly increasing: {offs}")
        object.__setattr__(self, "offsets", offs)

    @property
    def k(self) -> int:
        return len(self.offsets)

    @property
    def full_offsets(self) -> tuple[int, ...]:
        return (0,) + self.offsets

    @property
    def max_offset(self) -> int:
        return self.offsets[-1]

    def covering_prime(self) -> int | None:
        """Smallest prime q whose residue classes the offsets fully cover, if any."""
        full = self.full_offsets
        for q in _small_primes_upto(self.k + 1):
            if len({a % q for a in full}) == q:
                return q
        return None

    def is_admissible(self) -> bool:
        return self.covering_prime() is None

    def require_admissible(self) -> None:
        q = self.covering_prime()
        if q is not None:
            raise InadmissiblePatternError(self, q)

    def __str__(self) -> str:
        return self.label or "(" + ",".join(map(str, self.full_offsets)) + ")"


@dataclass(frozen=True)
class HLConstant:
    """Truncated Euler-product value of the density constant for a pattern.

    tail_error_bound is a rigorous bound on the relative change of the
    value if the product were extended beyond truncation_bound.
    """

    value: float
    pattern: TuplePattern
    truncation_bound: int
    tail_error_bound: float


def residue_count(q: int, pattern: TuplePattern) -> int:
    """w(q): distinct residues of {0, a1, ..., ak} modulo an odd prime q."""
    q = int(q)
    if not _is_odd_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    return len({a % q for a in pattern.full_offsets})


def is_admissible(pattern: TuplePattern) -> bool:
    """True iff w(q) < q for every prime q <= k + 1 (larger q never cover)."""
    return pattern.is_admissible()


def _log_factor(q: int, w: int, kp1: int) -> float:
    return math.log1p(-w / q) - kp1 * math.log1p(-1.0 / q)


def _tail_log_bound(pattern: TuplePattern, bound: int) -> float:
    """Bound on |sum of log factors| over omitted primes q > bound.

    For q > max_offset and q >= 2(k+1) the factor's log is bounded by
    (k+1)(k+2)/q^2 (both log1p expansions have |remainder| <= x^2 for
    x <= 1/2), and sum over q > B of 1/q^2 < 1/B.  Primes between the
    truncation bound and that regime, if any, contribute their exact
    factor logs.
    """
    k = pattern.k
    kp1 = k + 1
    q0 = max(pattern.max_offset, 2 * kp1)
    s = kp1 * (k + 2) / max(bound, q0)
    if bound < q0:
        full = pattern.full_offsets
        for q in _small_primes_upto(q0):
            if bound < q <= q0 and q > 2:
                w = len({a % q for a in full})
                s += abs(_log_factor(q, w, kp1))
    return s


def hl_constant(
    pattern: TuplePattern, truncation_bound: int = DEFAULT_TRUNCATION
) -> HLConstant:
    """Euler product over odd primes q <= truncation_bound, in log space.

    Factor logs are summed (small q exactly, large q vectorized with
    w = k + 1) and exponentiated once; the 2^k prefactor is applied by
    exponent shift.  Deterministic for a fixed truncation bound.
    """
    pattern.require_admissible()
    bound = int(truncation_bound)
    if bound < 3:
        raise ValueError(f"truncation bound must be >= 3, got {bound}")
    k = pattern.k
    kp1 = k + 1
    full = pattern.full_offsets

    odd = primes_upto(bound)[1:]  # drop 2; absorbed in the 2^k prefactor
    cut = max(_EXACT_RESIDUE_FLOOR, pattern.max_offset)
    split = int(np.searchsorted(odd, cut, side="right"))

    log_sum = 0.0
    for q in odd[:split].tolist():
        w = len({a % q for a in full})
        log_sum += _log_factor(q, w, kp1)
    big = odd[split:].astype(np.float64)
    if big.size:
        log_sum += float(np.sum(np.log1p(-kp1 / big) - kp1 * np.log1p(-1.0 / big)))

    value = math.ldexp(math.exp(log_sum), k)
    s = _tail_log_bound(pattern, bound)
    return HLConstant(value, pattern, bound, s * math.exp(s))
