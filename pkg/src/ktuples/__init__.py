"""Prime k-tuple counting, density constants, and discrepancy scans."""

from .hlconst import (
    DEFAULT_TRUNCATION,
    HLConstant,
    InadmissiblePatternError,
    TuplePattern,
    hl_constant,
    is_admissible,
    residue_count,
)
from .quadrature import LiAccumulator, li_k, li_pieces
from .registry import PATTERNS, get_pattern
from .scan import (
    DEFAULT_CHUNK,
    Checkpoint,
    CheckpointError,
    DeltaState,
    IntervalRow,
    RaceResult,
    ScanReport,
    checkpoint_load,
    checkpoint_save,
    count_sign_changes,
    extrema,
    find_skewes,
    interval_stats,
    new_state,
    race,
    step,
)
from .sieve import (
    DEFAULT_SEGMENT_LEN,
    Segment,
    TupleStream,
    primes_upto,
    sieve_segment,
    tuple_stream,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CHUNK",
    "DEFAULT_SEGMENT_LEN",
    "DEFAULT_TRUNCATION",
    "Checkpoint",
    "CheckpointError",
    "DeltaState",
    "HLConstant",
    "InadmissiblePatternError",
    "IntervalRow",
    "LiAccumulator",
    "PATTERNS",
    "RaceResult",
    "ScanReport",
    "Segment",
    "TuplePattern",
    "TupleStream",
    "checkpoint_load",
    "checkpoint_save",
    "count_sign_changes",
    "extrema",
    "find_skewes",
    "get_pattern",
    "hl_constant",
    "interval_stats",
    "is_admissible",
    "li_k",
    "li_pieces",
    "new_state",
    "primes_upto",
    "race",
    "residue_count",
    "sieve_segment",
    "step",
    "tuple_stream",
]
