"""Discrepancy scan engine: steps, Skewes search, sign changes, races, checkpoints."""

import json

import pytest

from ktuples import (
    PATTERNS,
    CheckpointError,
    TuplePattern,
    checkpoint_load,
    checkpoint_save,
    count_sign_changes,
    extrema,
    find_skewes,
    hl_constant,
    interval_stats,
    li_k,
    new_state,
    race,
    step,
    tuple_stream,
)

from oracles import race_walk_naive, tuple_bases_naive


def test_step_first_twin():
    state = new_state(PATTERNS["P2a"])
    state, delta = step(state, 3)
    assert state.count == 1
    assert state.last_prime == 3
    assert state.li.last == 3.0
    assert delta == 1 - state.constant.value * state.li.total
    # the estimate already exceeds 1 at p = 3, so the walk starts negative
    # (otherwise 3 itself would be the twin Skewes number)
    assert delta < 0
    assert state.current_sign == -1


def test_step_rejects_out_of_order():
    state = new_state(PATTERNS["P2a"])
    step(state, 3)
    with pytest.raises(ValueError):
        step(state, 3)
    with pytest.raises(ValueError):
        step(state, 2)


def test_step_walk_matches_engine_exactly():
    pattern = PATTERNS["P2a"]
    limit = 200000
    state = new_state(pattern)
    walk = {}
    for p in tuple_stream(pattern, 2, limit).tolist():
        state, delta = step(state, p)
        walk[p] = delta
    report = count_sign_changes(pattern, limit, sample_cap=10**6)
    assert report.count == state.count == len(walk)
    assert len(report.samples) == len(walk)
    for p, delta in report.samples:
        assert walk[p] == delta  # bit-identical accumulation


def test_twin_count_below_100():
    state = new_state(PATTERNS["P2a"])
    for p in tuple_stream(PATTERNS["P2a"], 2, 100).tolist():
        state, _ = step(state, p)
    assert state.count == 8


def test_find_skewes_p3b():
    report = find_skewes(PATTERNS["P3b"], 10**6)
    assert report.skewes == 337867
    assert report.sign_changes[0] == (337867, 1)
    assert report.extrema is not None
    assert report.bound == 10**6


def test_find_skewes_not_found_below_limit():
    report = find_skewes(PATTERNS["P2a"], 10**6)
    assert report.skewes is None
    assert report.sign_changes == []
    assert report.count == 8169


def test_chunk_invariance():
    reports = [find_skewes(PATTERNS["P3b"], 10**6, cs) for cs in (10**3, 10**4, 10**5, 10**6)]
    assert all(r == reports[0] for r in reports[1:])


def test_sign_changes_none_below_twin_skewes():
    report = count_sign_changes(PATTERNS["P2a"], 1369390)
    assert report.sign_changes == []
    assert report.skewes is None


def test_sign_change_alternation_and_consistency():
    report = count_sign_changes(PATTERNS["P4a"], 2 * 10**6)
    signs = [s for _, s in report.sign_changes]
    assert len(signs) >= 2
    assert signs[0] == 1
    assert all(a == -b for a, b in zip(signs, signs[1:]))
    first = find_skewes(PATTERNS["P4a"], 2 * 10**6)
    assert first.skewes == report.sign_changes[0][0] == report.skewes == 1172531
    assert report.sign_change_ratio() > 0


def test_extrema_small_window_matches_direct_walk():
    pattern = PATTERNS["P2a"]
    state = new_state(pattern)
    deltas = []
    for p in tuple_stream(pattern, 2, 100).tolist():
        state, d = step(state, p)
        deltas.append((d, p))
    (mx, mx_at), (mn, mn_at) = extrema(pattern, 2, 99)
    assert (mx, mx_at) == max(deltas)
    assert (mn, mn_at) == min(deltas)


def test_extrema_empty_window():
    assert extrema(PATTERNS["P2a"], 90, 96) is None
    with pytest.raises(ValueError):
        extrema(PATTERNS["P2a"], 100, 100)


def test_extrema_straddles_crossing_at_twin_skewes():
    (mx, mx_at), (mn, mn_at) = extrema(PATTERNS["P2a"], 2, 1369391)
    assert mn < 0 < mx
    assert mx_at == 1369391


def test_interval_stats_against_naive_counts():
    width = 10**5
    rows = interval_stats(PATTERNS["P2a"], width, 10)
    for row in rows:
        naive = len(tuple_bases_naive((2,), max(2, row.lo), row.hi))
        assert row.observed == naive
        assert row.estimate > 0
        assert row.ratio == pytest.approx(row.estimate / row.observed)
    assert sum(r.observed for r in rows) == 8169
    assert interval_stats(PATTERNS["P2a"], width, 0) == []
    with pytest.raises(ValueError):
        interval_stats(PATTERNS["P2a"], 0, 3)


def test_interval_estimate_uses_clamped_li():
    row = interval_stats(PATTERNS["P2a"], 10**5, 1)[0]
    const = hl_constant(PATTERNS["P2a"])
    assert row.estimate == pytest.approx(const.value * li_k(2, 2, 10**5), rel=1e-12)


@pytest.mark.parametrize("limit", [100, 10**4])
def test_race_matches_bruteforce_walk(limit):
    result = race(PATTERNS["P2a"], PATTERNS["P2b"], limit)
    walk, zeros = race_walk_naive((2,), (4,), limit)
    assert result.walk == walk
    assert result.zeros == zeros
    assert result.final_y == walk[-1][1]


def test_race_antisymmetry():
    fwd = race(PATTERNS["P2a"], PATTERNS["P2b"], 10**4)
    rev = race(PATTERNS["P2b"], PATTERNS["P2a"], 10**4)
    assert rev.zeros == fwd.zeros
    assert rev.walk == [(x, -y) for x, y in fwd.walk]


def test_race_degenerate_inputs():
    with pytest.raises(ValueError):
        race(PATTERNS["P2a"], TuplePattern((2,)), 100)
    empty = race(PATTERNS["P5a"], PATTERNS["P5b"], 3)
    assert empty.walk == [] and empty.zeros == 0


def test_checkpoint_state_roundtrip(tmp_path):
    path = str(tmp_path / "cp.json")
    state = new_state(PATTERNS["P2a"])
    for p in tuple_stream(PATTERNS["P2a"], 2, 5000).tolist():
        step(state, p)
    checkpoint_save(state, path)
    loaded = checkpoint_load(path).state
    assert loaded.count == state.count
    assert loaded.current_sign == state.current_sign
    assert loaded.last_prime == state.last_prime
    assert loaded.li.total == state.li.total
    assert loaded.li.compensation == state.li.compensation
    assert loaded.li.last == state.li.last
    assert loaded.constant.value == state.constant.value
    assert loaded.constant.truncation_bound == state.constant.truncation_bound
    assert loaded.pattern.offsets == state.pattern.offsets


def test_resume_identical_to_uninterrupted(tmp_path):
    path = str(tmp_path / "cp.json")
    full = find_skewes(PATTERNS["P2a"], 1_500_000, 10**5)
    find_skewes(PATTERNS["P2a"], 750_000, 10**5, checkpoint_path=path)
    resumed = find_skewes(PATTERNS["P2a"], 1_500_000, 10**5, checkpoint_path=path, resume=True)
    assert resumed == full
    assert resumed.skewes == 1369391


def test_checkpoint_rejects_mismatch(tmp_path):
    path = str(tmp_path / "cp.json")
    find_skewes(PATTERNS["P2a"], 200_000, 10**5, checkpoint_path=path)
    with pytest.raises(CheckpointError):
        find_skewes(PATTERNS["P2b"], 10**6, 10**5, checkpoint_path=path, resume=True)
    with pytest.raises(CheckpointError):
        find_skewes(PATTERNS["P2a"], 10**6, 10**5, truncation=10**6,
                    checkpoint_path=path, resume=True)


def test_checkpoint_rejects_bad_files(tmp_path):
    garbage = tmp_path / "bad.json"
    garbage.write_text("{not json")
    with pytest.raises(CheckpointError):
        checkpoint_load(str(garbage))
    wrong = tmp_path / "wrong.json"
    rec = json.loads((_make_checkpoint_text(tmp_path)))
    rec["format_version"] = 99
    wrong.write_text(json.dumps(rec))
    with pytest.raises(CheckpointError):
        checkpoint_load(str(wrong))
    with pytest.raises(CheckpointError):
        find_skewes(PATTERNS["P2a"], 10**6, resume=True)


def _make_checkpoint_text(tmp_path):
    path = tmp_path / "ok.json"
    state = new_state(PATTERNS["P2a"])
    step(state, 3)
    checkpoint_save(state, str(path))
    return path.read_text()


def test_samples_are_uniform_and_capped():
    report = count_sign_changes(PATTERNS["P2a"], 200_000, sample_cap=50)
    assert report.samples is not None
    assert len(report.samples) <= 50
    primes = [p for p, _ in report.samples]
    all_primes = tuple_stream(PATTERNS["P2a"], 2, 200_000).tolist()
    stride = (len(all_primes) - 1) // 50 + 1  # power-of-two decimation
    idx = [all_primes.index(p) for p in primes]
    assert idx == list(range(0, len(all_primes), idx[1] - idx[0]))
    # decimation depends only on the step index, not the chunking
    chunked = count_sign_changes(PATTERNS["P2a"], 200_000, 10**4, sample_cap=50)
    assert chunked.samples == report.samples


def test_no_samples_by_default():
    assert find_skewes(PATTERNS["P3b"], 10**5).samples is None
