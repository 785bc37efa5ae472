"""Discrepancy scans: delta(p) = count - C * Li_{k+1}(2, p) over tuple base primes.

The scan consumes a pattern's base primes in increasing order.  At each
prime it extends the accumulated logarithmic integral over the gap from
the previous prime (first gap starts at 2), increments the count, and
evaluates the discrepancy.  The running sign starts at -1; the first prime
whose delta sign differs is the pattern's Skewes number, and each later
flip is a sign change.  Scans run in chunks of a fixed number-range so
memory stays bounded, with the count carried across chunks as an offset;
results are independent of the chunk size.  Chunk boundaries are also the
checkpoint grain for resumable long runs.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .hlconst import DEFAULT_TRUNCATION, HLConstant, TuplePattern, hl_constant
from .quadrature import LiAccumulator, li_k, li_pieces
from .sieve import DEFAULT_SEGMENT_LEN, TupleStream, _tuple_block

# Numbers per chunk: fine enough resume grain, coarse enough to amortize.
DEFAULT_CHUNK = 10**8

# Cap on retained (prime, delta) plot samples; decimated uniformly by index.
DEFAULT_SAMPLE_CAP = 10**5

FORMAT_VERSION = 1


class CheckpointError(RuntimeError):
    """Checkpoint file is unreadable or does not match the requested scan."""


@dataclass
class DeltaState:
    """Loop state of a discrepancy scan.

    count includes the offset carried over from previous chunks; li always
    covers [2, last_prime] once at least one prime has been consumed.
    """

    pattern: TuplePattern
    constant: HLConstant
    li: LiAccumulator
    count: int = 0
    current_sign: int = -1
    last_prime: int = 2


@dataclass
class ScanReport:
    """Outcome of a scan up to a bound."""

    pattern: TuplePattern
    bound: int
    skewes: int | None
    sign_changes: list[tuple[int, int]]
    extrema: tuple[tuple[float, int], tuple[float, int]] | None
    count: int
    constant: HLConstant
    samples: list[tuple[int, float]] | None = None

    def sign_change_ratio(self) -> float:
        """Observed sign changes over sqrt(T)/log(T); reported, never asserted."""
        expected = math.sqrt(self.bound) / math.log(self.bound)
        return len(self.sign_changes) / expected


@dataclass(frozen=True)
class Checkpoint:
    """Deserialized scan checkpoint: state plus the next chunk to scan."""

    state: DeltaState
    chunk_lo: int
    format_version: int
    report: dict | None = None


@dataclass(frozen=True)
class IntervalRow:
    """Observed versus estimated tuple count over [lo, hi)."""

    index: int
    lo: int
    hi: int
    observed: int
    estimate: float
    ratio: float | None


@dataclass(frozen=True)
class RaceResult:
    """Random walk of one pattern's count against another's."""

    walk: list[tuple[int, int]]
    zeros: int
    evaluations: int
    final_y: int


def new_state(
    pattern: TuplePattern,
    constant: HLConstant | None = None,
    truncation: int = DEFAULT_TRUNCATION,
) -> DeltaState:
    """Fresh scan state for a pattern; Li accumulation starts at 2."""
    pattern.require_admissible()
    if constant is None:
        constant = hl_constant(pattern, truncation)
    return DeltaState(pattern, constant, LiAccumulator(k=pattern.k + 1))


def step(state: DeltaState, p: int) -> tuple[DeltaState, float]:
    """Consume the pattern's next base prime; returns (state, delta at p)."""
    p = int(p)
    if p <= state.last_prime:
        raise ValueError(
            f"base primes must be strictly increasing: got {p} after {state.last_prime}"
        )
    piece = float(li_pieces(state.li.k, np.array([state.li.last, float(p)]))[0])
    state.li.add_piece(piece)
    state.li.last = float(p)
    state.count += 1
    state.last_prime = p
    delta = state.count - state.constant.value * state.li.total
    if delta > 0.0:
        state.current_sign = 1
    elif delta < 0.0:
        state.current_sign = -1
    else:
        state.current_sign = -state.current_sign  # exact zero counts as a crossing
    return state, delta


def _float_hex(x: float) -> str:
    return float(x).hex()


class _DeltaScan:
    """Chunked scan engine shared by the Skewes/sign-change/extrema operations."""

    def __init__(
        self,
        pattern: TuplePattern,
        limit: int,
        chunk_size: int = DEFAULT_CHUNK,
        *,
        constant: HLConstant | None = None,
        truncation: int = DEFAULT_TRUNCATION,
        sample_cap: int = 0,
        window: tuple[int, int] | None = None,
        stop_at_first_change: bool = False,
        segment_len: int = DEFAULT_SEGMENT_LEN,
    ):
        limit = int(limit)
        chunk_size = int(chunk_size)
        if limit < 2:
            raise ValueError(f"scan limit must be >= 2, got {limit}")
        if chunk_size < 1:
            raise ValueError(f"chunk size must be >= 1, got {chunk_size}")
        self.state = new_state(pattern, constant, truncation)
        self.pattern = pattern
        self.limit = limit
        self.chunk_size = chunk_size
        self.segment_len = segment_len
        self.sample_cap = int(sample_cap)
        self.window = window
        self.stop_at_first_change = stop_at_first_change
        self.chunk_lo = 2
        self.stopped = False
        self.skewes: int | None = None
        self.sign_changes: list[tuple[int, int]] = []
        self.max_delta = 0.0
        self.max_at: int | None = None
        self.min_delta = 0.0
        self.min_at: int | None = None
        self.samples: list[tuple[int, float]] = []
        self.stride = 1

    def run(self, checkpoint_path: str | None = None, resume: bool = False) -> ScanReport:
        if resume:
            if not checkpoint_path:
                raise CheckpointError("resume requested without a checkpoint path")
            self._load(checkpoint_path)
        while self.chunk_lo < self.limit and not self.stopped:
            chunk_hi = min(self.chunk_lo + self.chunk_size, self.limit)
            stream = TupleStream(
                self.pattern, self.chunk_lo, chunk_hi, segment_len=self.segment_len
            )
            for block in stream.blocks():
                self._consume(block)
                if self.stopped:
                    break
            self.chunk_lo = chunk_hi
            if checkpoint_path and not self.stopped:
                self._save(checkpoint_path)
        return self._report()

    def _consume(self, primes: np.ndarray) -> None:
        if primes.size == 0:
            return
        st = self.state
        li = st.li
        bounds = np.empty(primes.size + 1, dtype=np.float64)
        bounds[0] = li.last
        bounds[1:] = primes
        pieces = li_pieces(li.k, bounds).tolist()
        plist = primes.tolist()
        c_value = st.constant.value
        total = li.total
        comp = li.compensation
        count = st.count
        cur = st.current_sign
        window = self.window
        cap = self.sample_cap
        consumed = 0
        for j, p in enumerate(plist):
            y = pieces[j] - comp  # Kahan step, identical to LiAccumulator.add_piece
            t = total + y
            comp = (t - total) - y
            total = t
            count += 1
            consumed = j + 1
            delta = count - c_value * total
            if delta > 0.0:
                new = 1
            elif delta < 0.0:
                new = -1
            else:
                new = -cur  # exact zero counts as a crossing
            if new != cur:
                cur = new
                self.sign_changes.append((p, new))
                if self.skewes is None:
                    self.skewes = p
                if self.stop_at_first_change:
                    self.stopped = True
            if window is None or window[0] <= p <= window[1]:
                if self.max_at is None or delta > self.max_delta:
                    self.max_delta = delta
                    self.max_at = p
                if self.min_at is None or delta < self.min_delta:
                    self.min_delta = delta
                    self.min_at = p
            if cap:
                if (count - 1) % self.stride == 0:
                    self.samples.append((p, delta))
                    if len(self.samples) > cap:
                        self.samples = self.samples[::2]
                        self.stride *= 2
            if self.stopped:
                break
        li.total = total
        li.compensation = comp
        last = plist[consumed - 1]
        li.last = float(last)
        st.count = count
        st.current_sign = cur
        st.last_prime = last

    def _report(self) -> ScanReport:
        extrema = None
        if self.max_at is not None:
            extrema = ((self.max_delta, self.max_at), (self.min_delta, self.min_at))
        return ScanReport(
            pattern=self.pattern,
            bound=self.limit,
            skewes=self.skewes,
            sign_changes=list(self.sign_changes),
            extrema=extrema,
            count=self.state.count,
            constant=self.state.constant,
            samples=list(self.samples) if self.sample_cap else None,
        )

    def _save(self, path: str) -> None:
        rec = _state_record(self.state, self.chunk_lo)
        rec["report"] = {
            "skewes": self.skewes,
            "sign_changes": [[p, s] for p, s in self.sign_changes],
            "max": None if self.max_at is None else [_float_hex(self.max_delta), self.max_at],
            "min": None if self.min_at is None else [_float_hex(self.min_delta), self.min_at],
            "stride": self.stride,
            "samples": [[p, _float_hex(d)] for p, d in self.samples],
        }
        _write_record(rec, path)

    def _load(self, path: str) -> None:
        cp = checkpoint_load(path)
        if cp.state.pattern.offsets != self.pattern.offsets:
            raise CheckpointError(
                f"checkpoint pattern {cp.state.pattern} does not match scan "
                f"pattern {self.pattern}"
            )
        mine = self.state.constant
        theirs = cp.state.constant
        if (
            theirs.value != mine.value
            or theirs.truncation_bound != mine.truncation_bound
        ):
            raise CheckpointError(
                "checkpoint constant does not match the requested scan "
                f"(truncation {theirs.truncation_bound} vs {mine.truncation_bound})"
            )
        self.state = cp.state
        self.chunk_lo = cp.chunk_lo
        rep = cp.report
        if rep:
            self.skewes = rep["skewes"]
            self.sign_changes = [(int(p), int(s)) for p, s in rep["sign_changes"]]
            if rep["max"] is not None:
                self.max_delta = float.fromhex(rep["max"][0])
                self.max_at = int(rep["max"][1])
            if rep["min"] is not None:
                self.min_delta = float.fromhex(rep["min"][0])
                self.min_at = int(rep["min"][1])
            self.stride = int(rep["stride"])
            self.samples = [(int(p), float.fromhex(d)) for p, d in rep["samples"]]
        if self.stop_at_first_change and self.skewes is not None:
            self.stopped = True


def _state_record(state: DeltaState, chunk_lo: int) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "pattern": {"offsets": list(state.pattern.offsets), "label": state.pattern.label},
        "constant": {
            "value": _float_hex(state.constant.value),
            "truncation_bound": state.constant.truncation_bound,
            "tail_error_bound": _float_hex(state.constant.tail_error_bound),
        },
        "count": state.count,
        "current_sign": state.current_sign,
        "last_prime": state.last_prime,
        "li": {
            "k": state.li.k,
            "total": _float_hex(state.li.total),
            "compensation": _float_hex(state.li.compensation),
            "last": _float_hex(state.li.last),
        },
        "chunk_lo": int(chunk_lo),
    }


def _write_record(rec: dict, path: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(rec, fh, indent=1)
    os.replace(tmp, path)


def checkpoint_save(state: DeltaState, path: str, chunk_lo: int | None = None) -> Checkpoint:
    """Write a resumable snapshot of a scan state; floats stored losslessly.

    chunk_lo is the first number of the next chunk; by default everything
    past the last consumed prime remains to be scanned.
    """
    if chunk_lo is None:
        chunk_lo = state.last_prime + 1
    rec = _state_record(state, chunk_lo)
    _write_record(rec, path)
    return Checkpoint(state=state, chunk_lo=int(chunk_lo), format_version=FORMAT_VERSION)


def checkpoint_load(path: str) -> Checkpoint:
    """Read a checkpoint back; exact round-trip of every float field."""
    try:
        with open(path) as fh:
            rec = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from exc
    version = rec.get("format_version")
    if version != FORMAT_VERSION:
        raise CheckpointError(
            f"checkpoint format version {version} not supported (expected {FORMAT_VERSION})"
        )
    try:
        pattern = TuplePattern(tuple(rec["pattern"]["offsets"]), rec["pattern"]["label"])
        constant = HLConstant(
            value=float.fromhex(rec["constant"]["value"]),
            pattern=pattern,
            truncation_bound=int(rec["constant"]["truncation_bound"]),
            tail_error_bound=float.fromhex(rec["constant"]["tail_error_bound"]),
        )
        li = LiAccumulator(
            k=int(rec["li"]["k"]),
            total=float.fromhex(rec["li"]["total"]),
            last=float.fromhex(rec["li"]["last"]),
            compensation=float.fromhex(rec["li"]["compensation"]),
        )
        state = DeltaState(
            pattern=pattern,
            constant=constant,
            li=li,
            count=int(rec["count"]),
            current_sign=int(rec["current_sign"]),
            last_prime=int(rec["last_prime"]),
        )
        chunk_lo = int(rec["chunk_lo"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"malformed checkpoint {path}: {exc}") from exc
    return Checkpoint(
        state=state,
        chunk_lo=chunk_lo,
        format_version=version,
        report=rec.get("report"),
    )


def find_skewes(
    pattern: TuplePattern,
    limit: int,
    chunk_size: int = DEFAULT_CHUNK,
    *,
    constant: HLConstant | None = None,
    truncation: int = DEFAULT_TRUNCATION,
    sample_cap: int = 0,
    checkpoint_path: str | None = None,
    resume: bool = False,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> ScanReport:
    """Scan until the delta sign first differs from the initial -1.

    The report's skewes field is that first prime, or None if the sign
    never changes below the limit; extrema cover everything scanned.
    """
    engine = _DeltaScan(
        pattern,
        limit,
        chunk_size,
        constant=constant,
        truncation=truncation,
        sample_cap=sample_cap,
        stop_at_first_change=True,
        segment_len=segment_len,
    )
    return engine.run(checkpoint_path, resume)


def count_sign_changes(
    pattern: TuplePattern,
    limit: int,
    chunk_size: int = DEFAULT_CHUNK,
    *,
    constant: HLConstant | None = None,
    truncation: int = DEFAULT_TRUNCATION,
    sample_cap: int = 0,
    checkpoint_path: str | None = None,
    resume: bool = False,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> ScanReport:
    """Full scan to the limit recording every sign flip of the delta."""
    engine = _DeltaScan(
        pattern,
        limit,
        chunk_size,
        constant=constant,
        truncation=truncation,
        sample_cap=sample_cap,
        stop_at_first_change=False,
        segment_len=segment_len,
    )
    return engine.run(checkpoint_path, resume)


def extrema(
    pattern: TuplePattern,
    a: int,
    b: int,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    constant: HLConstant | None = None,
    truncation: int = DEFAULT_TRUNCATION,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> tuple[tuple[float, int], tuple[float, int]] | None:
    """Max and min of delta over tuple primes in [a, b], with their primes.

    The scan still starts at 2 (the delta needs full history); only primes
    inside the window contribute to the extrema.  Returns None when the
    window contains no tuple primes.
    """
    a, b = int(a), int(b)
    if not 2 <= a < b:
        raise ValueError(f"window must satisfy 2 <= a < b, got [{a}, {b}]")
    engine = _DeltaScan(
        pattern,
        b + 1,
        chunk_size,
        constant=constant,
        truncation=truncation,
        window=(a, b),
        segment_len=segment_len,
    )
    return engine.run().extrema


def interval_stats(
    pattern: TuplePattern,
    interval_width: int,
    num_intervals: int,
    *,
    constant: HLConstant | None = None,
    truncation: int = DEFAULT_TRUNCATION,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> list[IntervalRow]:
    """Observed vs estimated tuple counts over consecutive width-sized intervals.

    Row i covers [i*w, (i+1)*w): observed base primes, the estimate
    C * Li_{k+1} over the same window (clamped below at 2), and the ratio
    estimate/observed (None when the window is empty of tuple primes).
    """
    pattern.require_admissible()
    width = int(interval_width)
    n = int(num_intervals)
    if width < 1:
        raise ValueError(f"interval width must be >= 1, got {width}")
    if n < 0:
        raise ValueError(f"interval count must be >= 0, got {n}")
    if constant is None:
        constant = hl_constant(pattern, truncation)
    k1 = pattern.k + 1
    rows = []
    for i in range(n):
        lo, hi = i * width, (i + 1) * width
        lo_c = max(2, lo)
        if hi > lo_c:
            observed = int(
                _count_stream(pattern, lo_c, hi, segment_len=segment_len)
            )
            estimate = constant.value * li_k(k1, float(lo_c), float(hi))
        else:
            observed = 0
            estimate = 0.0
        ratio = estimate / observed if observed else None
        rows.append(IntervalRow(i, lo, hi, observed, estimate, ratio))
    return rows


def _count_stream(pattern, lo, hi, *, segment_len):
    total = 0
    for block in TupleStream(pattern, lo, hi, segment_len=segment_len).blocks():
        total += block.size
    return total


def race(
    pattern_a: TuplePattern,
    pattern_b: TuplePattern,
    limit: int,
    *,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    segment_len: int = DEFAULT_SEGMENT_LEN,
) -> RaceResult:
    """Running difference y = count_a - count_b at each prime of either stream.

    The walk moves +1 at a base prime of pattern_a only, -1 at one of
    pattern_b only, and stays level where the patterns share a base prime;
    zeros counts evaluation points with y == 0 (level steps included).
    """
    pattern_a.require_admissible()
    pattern_b.require_admissible()
    if pattern_a.offsets == pattern_b.offsets:
        raise ValueError("race requires two distinct patterns")
    limit = int(limit)
    if limit < 2:
        raise ValueError(f"race limit must be >= 2, got {limit}")
    walk: list[tuple[int, int]] = []
    stride = 1
    zeros = 0
    y = 0
    idx = 0
    for seg_lo in range(2, limit, segment_len):
        seg_hi = min(seg_lo + segment_len, limit)
        pa = _tuple_block(pattern_a, seg_lo, seg_hi)
        pb = _tuple_block(pattern_b, seg_lo, seg_hi)
        if pa.size == 0 and pb.size == 0:
            continue
        union = np.union1d(pa, pb)
        in_a = np.zeros(union.size, dtype=np.int64)
        in_a[np.searchsorted(union, pa)] = 1
        in_b = np.zeros(union.size, dtype=np.int64)
        in_b[np.searchsorted(union, pb)] = 1
        ys = y + np.cumsum(in_a - in_b)
        zeros += int(np.count_nonzero(ys == 0))
        y = int(ys[-1])
        if sample_cap:
            for p, yv in zip(union.tolist(), ys.tolist()):
                if idx % stride == 0:
                    walk.append((p, yv))
                    if len(walk) > sample_cap:
                        walk = walk[::2]
                        stride *= 2
                idx += 1
        else:
            idx += union.size
    return RaceResult(walk=walk, zeros=zeros, evaluations=idx, final_y=y)
