"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` for the per-criterion
pass lines.  The extended reproductions (tens of minutes in spirit,
seconds here, but not CI-gating) run only with KTUPLES_EXTENDED=1.
"""

import os
import random
import time

import numpy as np
import pytest

from ktuples import (
    PATTERNS,
    LiAccumulator,
    count_sign_changes,
    find_skewes,
    hl_constant,
    li_k,
    race,
    tuple_stream,
)

from oracles import race_walk_naive, tuple_bases_naive

TWIN_CONSTANT = 1.320323632

SKEWES_DESK = [
    ("P3b", 10**6, 337867, 60.0),
    ("P4a", 2 * 10**6, 1172531, 120.0),
    ("P2a", 2 * 10**6, 1369391, 120.0),
    ("P2b", 6 * 10**6, 5206837, 300.0),
]

SKEWES_EXTENDED = [
    ("P5a", 22 * 10**6, 21432401),
    ("P3a", 88 * 10**6, 87613571),
]

# regression: the scan's own P4a sign-change history below 1e8, frozen
P4A_SIGN_CHANGES_1E8 = [
    (1172531, 1),
    (1210871, -1),
    (1246361, 1),
    (1272281, -1),
    (1339901, 1),
    (1508621, -1),
    (1525961, 1),
    (1540961, -1),
    (1584431, 1),
]


def _ok(name: str) -> None:
    print(f"\n[acceptance] {name}: PASS")


@pytest.mark.parametrize("label,limit,expected,budget", SKEWES_DESK)
def test_skewes_exactness(label, limit, expected, budget):
    start = time.perf_counter()
    report = find_skewes(PATTERNS[label], limit)
    elapsed = time.perf_counter() - start
    assert report.skewes == expected
    assert elapsed < budget
    _ok(f"skewes {label} == {expected} ({elapsed:.1f}s)")


def test_twin_constant_value_and_runtime():
    start = time.perf_counter()
    const = hl_constant(PATTERNS["P2a"], 10**7)
    elapsed = time.perf_counter() - start
    assert abs(const.value - TWIN_CONSTANT) < 1e-6
    assert elapsed < 10.0
    _ok(f"twin constant within 1e-6 ({elapsed:.2f}s)")


def test_constant_identities():
    at = lambda label: hl_constant(PATTERNS[label], 10**7).value
    assert at("P2a") == at("P2b")
    assert at("P3a") == at("P3b")
    assert at("P5a") == at("P5b")
    assert abs(at("P4b") / at("P4a") - 2.0) < 1e-9
    _ok("constant identities (equal pairs exact, P4b/P4a == 2 within 1e-9)")


def test_counting_oracle():
    # oracle computed first (naive sieve + companion check); values frozen
    assert len(tuple_bases_naive((2,), 2, 10**6)) == 8169
    assert tuple_stream(PATTERNS["P2a"], 2, 10**6).size == 8169
    for label in ("P2a", "P2b", "P3a", "P3b", "P4a", "P4b", "P5a", "P5b", "P6"):
        pattern = PATTERNS[label]
        oracle = tuple_bases_naive(pattern.offsets, 2, 10**5)
        assert tuple_stream(pattern, 2, 10**5).tolist() == oracle
    _ok("counting oracle (pi_2(1e6) == 8169; nine patterns exact at 1e5)")


def test_chunk_invariance():
    reports = [find_skewes(PATTERNS["P3b"], 10**6, cs) for cs in (10**3, 10**4, 10**5, 10**6)]
    for other in reports[1:]:
        assert other == reports[0]
        assert other.sign_changes == reports[0].sign_changes
    _ok("chunk invariance (P3b identical for chunk sizes 1e3..1e6)")


def test_checkpoint_roundtrip(tmp_path):
    path = str(tmp_path / "cp.json")
    uninterrupted = find_skewes(PATTERNS["P2a"], 1_500_000, 10**5)
    find_skewes(PATTERNS["P2a"], 750_000, 10**5, checkpoint_path=path)
    resumed = find_skewes(PATTERNS["P2a"], 1_500_000, 10**5, checkpoint_path=path, resume=True)
    assert resumed == uninterrupted
    _ok("checkpoint round-trip (interrupted P2a scan identical to straight run)")


def test_quadrature_additivity_1000_triples():
    rng = random.Random(421)
    for _ in range(1000):
        k = rng.randint(1, 6)
        a = rng.uniform(2.0, 1e9)
        c = rng.uniform(a, 1e9)
        b = rng.uniform(a, c)
        whole = li_k(k, a, c)
        assert li_k(k, a, b) + li_k(k, b, c) == pytest.approx(whole, rel=1e-12)
    _ok("quadrature additivity (1000 random triples at 1e-12 relative)")


def test_quadrature_million_step_drift():
    acc = LiAccumulator(k=2)
    for upper in np.linspace(2.0, 10**7, 10**6 + 1)[1:].tolist():
        acc.extend(upper)
    single = li_k(2, 2.0, 10**7)
    assert abs(acc.total - single) / single < 1e-8
    _ok("quadrature accumulation (1e6 extensions drift < 1e-8 relative)")


def test_sign_change_behavior():
    report = count_sign_changes(PATTERNS["P4a"], 10**8)
    assert len(report.sign_changes) >= 9
    assert report.sign_changes == P4A_SIGN_CHANGES_1E8  # frozen regression
    below = count_sign_changes(PATTERNS["P2a"], 1369390)
    assert below.sign_changes == []
    _ok("sign changes (P4a >= 9 below 1e8; twins below 1369391 exactly 0)")


def test_race_sanity():
    result = race(PATTERNS["P2a"], PATTERNS["P2b"], 10**4)
    walk, zeros = race_walk_naive((2,), (4,), 10**4)
    assert result.walk == walk
    assert result.zeros == zeros
    swapped = race(PATTERNS["P2b"], PATTERNS["P2a"], 10**4)
    assert swapped.walk == [(x, -y) for x, y in walk]
    assert swapped.zeros == zeros
    _ok("race sanity (oracle walk matched at every step; antisymmetry)")


@pytest.mark.skipif(
    not os.environ.get("KTUPLES_EXTENDED"),
    reason="extended reproductions; set KTUPLES_EXTENDED=1",
)
@pytest.mark.parametrize("label,limit,expected", SKEWES_EXTENDED)
def test_skewes_extended(label, limit, expected):
    report = find_skewes(PATTERNS[label], limit)
    assert report.skewes == expected
    _ok(f"extended skewes {label} == {expected}")
