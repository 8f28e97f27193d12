from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmtsim.model import Trace
from tmtsim.traffic import (
    InvalidSpec,
    ParseError,
    Pattern,
    PatternSpec,
    generate,
    ordered_pairs,
    parse_trace,
    write_trace,
)


def test_ring_reduce():
    assert generate(PatternSpec(Pattern.RING_REDUCE, 4, 4)).pairs() == [(0, 1), (1, 2), (2, 3), (3, 0)]


def test_all_to_all_one_cycle():
    pairs = generate(PatternSpec(Pattern.ALL_TO_ALL, 3, 6)).pairs()
    assert pairs == sorted(pairs) and Counter(pairs) == Counter(ordered_pairs(3))


@given(st.integers(2, 7))
def test_all_to_all_hits_every_pair_once(n):
    pairs = generate(PatternSpec(Pattern.ALL_TO_ALL, n, n * (n - 1))).pairs()
    assert sorted(pairs) == ordered_pairs(n)


def test_zipf_zero_skew_is_uniform():
    m, n = 10_000, 4
    counts = Counter(generate(PatternSpec(Pattern.ZIPF, n, m, seed=0, skew=0.0)).pairs())
    p = 1 / (n * (n - 1))
    mean, sd = m * p, (m * p * (1 - p)) ** 0.5
    assert set(counts) == set(ordered_pairs(n))
    assert all(abs(c - mean) <= 3 * sd for c in counts.values())


def test_zipf_zero_skew_pooled_chi_square():
    n, m, seeds = 4, 2000, 20
    expected = m / (n * (n - 1))
    stat = 0.0
    for seed in range(seeds):
        counts = Counter(generate(PatternSpec(Pattern.ZIPF, n, m, seed=seed, skew=0.0)).pairs())
        stat += sum((counts[p] - expected) ** 2 / expected for p in ordered_pairs(n))
    # 0.999 quantile of chi-square with 20 * 11 degrees of freedom
    assert stat < 290.56


def test_zipf_skew_favors_low_ranks():
    counts = Counter(generate(PatternSpec(Pattern.ZIPF, 5, 5000, seed=1, skew=1.5)).pairs())
    assert counts.most_common(1)[0][0] == (0, 1)


def test_elephant_mice_concentrates_on_elephants():
    spec = PatternSpec(Pattern.ELEPHANT_MICE, 6, 4000, seed=9, elephant_fraction=0.9, elephants=2)
    counts = Counter(generate(spec).pairs())
    top = counts.most_common(2)
    assert sum(c for _, c in top) / 4000 == pytest.approx(0.9, abs=0.03)


def test_elephant_mice_all_pairs_elephant():
    spec = PatternSpec(Pattern.ELEPHANT_MICE, 3, 50, elephant_fraction=0.0, elephants=6)
    assert len(generate(spec)) == 50


@pytest.mark.parametrize(
    "spec",
    [
        PatternSpec(Pattern.RING_REDUCE, 1, 4),
        PatternSpec(Pattern.RING_REDUCE, 4, 0),
        PatternSpec(Pattern.ZIPF, 4, 4, skew=-1),
        PatternSpec(Pattern.ELEPHANT_MICE, 4, 4, elephant_fraction=1.5),
        PatternSpec(Pattern.ELEPHANT_MICE, 4, 4, elephants=13),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)


specs = st.builds(
    PatternSpec,
    kind=st.sampled_from(list(Pattern)),
    n=st.integers(2, 9),
    m=st.integers(1, 200),
    seed=st.integers(0, 2**32 - 1),
    skew=st.floats(0, 3),
    elephant_fraction=st.floats(0, 1),
    elephants=st.just(1),
)


@given(specs)
def test_generated_traces_are_valid_deterministic_and_round_trip(spec):
    trace = generate(spec)
    assert len(trace) == spec.m
    assert [r.t for r in trace] == list(range(1, spec.m + 1))
    assert all(r.src != r.dst and 0 <= r.src < spec.n and 0 <= r.dst < spec.n for r in trace)
    assert generate(spec) == trace
    assert parse_trace(write_trace(trace), n=spec.n) == trace


def test_parse_basic():
    assert parse_trace(b"0 1\n1 2\n").pairs() == [(0, 1), (1, 2)]


def test_parse_skips_comments():
    trace = parse_trace("# header\n0 1\n# mid\n2 0\n")
    assert [(r.t, r.src, r.dst) for r in trace] == [(1, 0, 1), (2, 2, 0)]


@pytest.mark.parametrize(
    "text, line, reason",
    [
        (b"0 0\n", 1, "self-loop"),
        (b"0 1\n1  2\n", 2, "malformed"),
        (b"0 1\r\n", 1, "malformed"),
        (b"0 1\n\n", 2, "malformed"),
        (b"0 1", 1, "trailing newline"),
        (b"01 2\n", 1, "malformed"),
        (b"0 9\n", 1, "out of range"),
    ],
)
def test_parse_errors(text, line, reason):
    with pytest.raises(ParseError) as info:
        parse_trace(text, n=4)
    assert info.value.line == line and reason in info.value.reason


def test_write_format():
    assert write_trace(Trace(())) == b""
    assert write_trace(Trace.from_pairs([(0, 1)])) == b"0 1\n"
    out = write_trace(Trace.from_pairs([(0, 1), (2, 3), (3, 0)]))
    assert out.count(b"\n") == 3 and out.endswith(b"\n")


def test_parse_non_ascii_is_malformed():
    with pytest.raises(ParseError) as info:
        parse_trace("0 1\n0 ¹\n")
    assert info.value.line == 2
