"""Command-line surface: scans, constants, and CSV/JSON table emitters.

Subcommands: constant, admissible, skewes, signchanges, intervals, race,
delta-plot.  Patterns are chosen by registry label (--tuple P3b) or
explicit offsets (--offsets 0,2,6).  Limits accept plain integers,
scientific notation (1e8), and powers (2^48).  Row data is identical
between the csv and json formats; json adds a meta object.  Exit status
3 means a Skewes scan completed without finding a sign change.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .hlconst import (
    DEFAULT_TRUNCATION,
    InadmissiblePatternError,
    TuplePattern,
    hl_constant,
)
from .registry import PATTERNS, get_pattern
from .scan import (
    DEFAULT_CHUNK,
    DEFAULT_SAMPLE_CAP,
    CheckpointError,
    count_sign_changes,
    find_skewes,
    interval_stats,
    race,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FOUND = 3


def _parse_bound(text: str) -> int:
    """Integer bound from '337867', '1e6', '2^48', or '1_000_000'."""
    s = text.strip().replace("_", "")
    if "^" in s:
        base, _, exp = s.partition("^")
        return int(base) ** int(exp)
    try:
        return int(s)
    except ValueError:
        value = float(s)
        if not value.is_integer():
            raise ValueError(f"bound {text!r} is not an integer") from None
        return int(value)


def _parse_offsets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise ValueError(f"offsets must be comma-separated integers, got {text!r}") from None


def _resolve_pattern(args, attr_tuple="tuple", attr_offsets="offsets") -> TuplePattern:
    label = getattr(args, attr_tuple, None)
    offsets = getattr(args, attr_offsets, None)
    if (label is None) == (offsets is None):
        raise ValueError("choose a pattern with exactly one of --tuple/--offsets")
    if label is not None:
        return get_pattern(label)
    return TuplePattern(_parse_offsets(offsets))


def _sig6(x: float) -> float:
    """Round to 6 significant digits; applied identically to csv and json."""
    return float(f"{x:.6g}")


def _emit(rows: list[dict], meta: dict, args) -> None:
    fmt = getattr(args, "format", "csv")
    out = getattr(args, "out", None)
    if fmt == "json":
        text = json.dumps({"meta": meta, "rows": rows}, indent=1) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
        text = buf.getvalue()
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_constant(args) -> int:
    pattern = _resolve_pattern(args)
    const = hl_constant(pattern, args.truncation)
    rows = [
        {
            "pattern": str(pattern),
            "offsets": ",".join(map(str, pattern.full_offsets)),
            "truncation": const.truncation_bound,
            "value": const.value,
            "tail_error_bound": const.tail_error_bound,
        }
    ]
    meta = {"command": "constant"}
    _emit(rows, meta, args)
    return EXIT_OK


def cmd_admissible(args) -> int:
    pattern = _resolve_pattern(args)
    q = pattern.covering_prime()
    rows = [
        {
            "pattern": str(pattern),
            "offsets": ",".join(map(str, pattern.full_offsets)),
            "admissible": q is None,
            "covering_prime": q,
        }
    ]
    _emit(rows, {"command": "admissible"}, args)
    return EXIT_OK


def _report_row(report, args) -> dict:
    (mx, mx_at), (mn, mn_at) = report.extrema or ((None, None), (None, None))
    return {
        "pattern": str(report.pattern),
        "limit": report.bound,
        "truncation": report.constant.truncation_bound,
        "found": report.skewes is not None,
        "skewes": report.skewes,
        "count": report.count,
        "sign_changes": len(report.sign_changes),
        "max_delta": None if mx is None else _sig6(mx),
        "max_at": mx_at,
        "min_delta": None if mn is None else _sig6(mn),
        "min_at": mn_at,
    }


def cmd_skewes(args) -> int:
    pattern = _resolve_pattern(args)
    report = find_skewes(
        pattern,
        args.limit,
        args.chunk,
        truncation=args.truncation,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
    )
    _emit([_report_row(report, args)], {"command": "skewes"}, args)
    if report.skewes is None:
        print(f"no sign change for {pattern} below {report.bound}", file=sys.stderr)
        return EXIT_NOT_FOUND
    print(f"Skewes number for {pattern}: {report.skewes}", file=sys.stderr)
    return EXIT_OK


def cmd_signchanges(args) -> int:
    pattern = _resolve_pattern(args)
    report = count_sign_changes(
        pattern,
        args.limit,
        args.chunk,
        truncation=args.truncation,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
    )
    rows = [
        {"index": i, "prime": p, "sign": s}
        for i, (p, s) in enumerate(report.sign_changes, start=1)
    ]
    total = len(report.sign_changes)
    meta = {
        "command": "signchanges",
        "pattern": str(pattern),
        "limit": report.bound,
        "truncation": report.constant.truncation_bound,
        "total_changes": total,
        # both counting conventions: with and without the first crossing
        "changes_after_first": max(total - 1, 0),
        "skewes": report.skewes,
        "ratio_to_sqrtT_over_logT": _sig6(report.sign_change_ratio()),
    }
    _emit(rows, meta, args)
    print(
        f"{total} sign changes for {pattern} below {report.bound} "
        f"(ratio to sqrt(T)/log(T): {meta['ratio_to_sqrtT_over_logT']})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_intervals(args) -> int:
    pattern = _resolve_pattern(args)
    rows_raw = interval_stats(
        pattern, args.width, args.count, truncation=args.truncation
    )
    rows = [
        {
            "index": r.index,
            "lo": r.lo,
            "hi": r.hi,
            "observed": r.observed,
            "estimate": round(r.estimate, 2),
            "ratio": None if r.ratio is None else _sig6(r.ratio),
        }
        for r in rows_raw
    ]
    meta = {
        "command": "intervals",
        "pattern": str(pattern),
        "width": args.width,
        "truncation": args.truncation,
        "total_observed": sum(r.observed for r in rows_raw),
    }
    _emit(rows, meta, args)
    return EXIT_OK


def cmd_race(args) -> int:
    pattern_a = get_pattern(args.a) if args.a in PATTERNS else TuplePattern(_parse_offsets(args.a))
    pattern_b = get_pattern(args.b) if args.b in PATTERNS else TuplePattern(_parse_offsets(args.b))
    result = race(pattern_a, pattern_b, args.limit, sample_cap=args.samples)
    rows = [{"index": i, "x": x, "y": y} for i, (x, y) in enumerate(result.walk)]
    meta = {
        "command": "race",
        "a": str(pattern_a),
        "b": str(pattern_b),
        "limit": args.limit,
        "zeros": result.zeros,
        "evaluations": result.evaluations,
        "final_y": result.final_y,
    }
    _emit(rows, meta, args)
    print(
        f"race {pattern_a} vs {pattern_b} to {args.limit}: "
        f"final y = {result.final_y}, zeros = {result.zeros}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_delta_plot(args) -> int:
    pattern = _resolve_pattern(args)
    report = count_sign_changes(
        pattern,
        args.limit,
        args.chunk,
        truncation=args.truncation,
        sample_cap=args.samples,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
    )
    rows = [{"prime": p, "delta": _sig6(d)} for p, d in (report.samples or [])]
    meta = {
        "command": "delta-plot",
        "pattern": str(pattern),
        "limit": report.bound,
        "truncation": report.constant.truncation_bound,
        "skewes": report.skewes,
        "sign_changes": len(report.sign_changes),
        "count": report.count,
    }
    _emit(rows, meta, args)
    return EXIT_OK


def _add_pattern_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tuple", help=f"registry label ({', '.join(sorted(PATTERNS))})")
    p.add_argument("--offsets", help="explicit offsets, e.g. 0,2,6")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")


def _add_scan_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--limit", type=_parse_bound, required=True, help="scan bound, e.g. 1e6 or 2^20")
    p.add_argument("--chunk", type=_parse_bound, default=DEFAULT_CHUNK, help="numbers per chunk")
    p.add_argument("--truncation", type=_parse_bound, default=DEFAULT_TRUNCATION)
    p.add_argument("--checkpoint", help="checkpoint file updated at chunk boundaries")
    p.add_argument("--resume", action="store_true", help="resume from --checkpoint")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktuples",
        description="Prime k-tuple scans against their conjectured densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="density constant for a pattern")
    _add_pattern_args(p)
    p.add_argument("--truncation", type=_parse_bound, default=DEFAULT_TRUNCATION)
    _add_output_args(p)
    p.set_defaults(fn=cmd_constant)

    p = sub.add_parser("admissible", help="admissibility check for a pattern")
    _add_pattern_args(p)
    _add_output_args(p)
    p.set_defaults(fn=cmd_admissible)

    p = sub.add_parser("skewes", help="first prime where the density estimate is overtaken")
    _add_pattern_args(p)
    _add_scan_args(p)
    _add_output_args(p)
    p.set_defaults(fn=cmd_skewes)

    p = sub.add_parser("signchanges", help="all sign changes of the discrepancy up to a limit")
    _add_pattern_args(p)
    _add_scan_args(p)
    _add_output_args(p)
    p.set_defaults(fn=cmd_signchanges)

    p = sub.add_parser("intervals", help="observed vs estimated counts per interval")
    _add_pattern_args(p)
    p.add_argument("--width", type=_parse_bound, required=True)
    p.add_argument("--count", type=_parse_bound, required=True, help="number of intervals")
    p.add_argument("--truncation", type=_parse_bound, default=DEFAULT_TRUNCATION)
    _add_output_args(p)
    p.set_defaults(fn=cmd_intervals)

    p = sub.add_parser("race", help="walk of one pattern's count against another's")
    p.add_argument("--a", required=True, help="registry label or offsets")
    p.add_argument("--b", required=True, help="registry label or offsets")
    p.add_argument("--limit", type=_parse_bound, required=True)
    p.add_argument("--samples", type=_parse_bound, default=DEFAULT_SAMPLE_CAP)
    _add_output_args(p)
    p.set_defaults(fn=cmd_race)

    p = sub.add_parser("delta-plot", help="downsampled (prime, delta) pairs for plotting")
    _add_pattern_args(p)
    _add_scan_args(p)
    p.add_argument("--samples", type=_parse_bound, default=DEFAULT_SAMPLE_CAP)
    _add_output_args(p)
    p.set_defaults(fn=cmd_delta_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InadmissiblePatternError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CheckpointError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
