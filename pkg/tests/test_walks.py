"""Walk construction and statistics tests.

Window counts, measures, and curve values are cross-checked against naive
in-test recomputations.
"""

from math import log

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legwalk.gaussian import GaussInt
from legwalk.modular import legendre
from legwalk.primes import sieve_upto
from legwalk.walks import (
    WalkSeries,
    average_ratio_curve,
    consecutive_run_ratio,
    gaussian_walk,
    logarithmic_measure,
    pearson_correlation,
    qr_ratio,
    race_tally,
    rational_walk,
    walk_stats,
)


def series(values):
    return WalkSeries(np.asarray(values, dtype=np.int8), tuple(range(1, len(values) + 1)), {})


def test_walk_97_below_1000(table_1e6):
    walk = rational_walk(97, 1000, table=table_1e6)
    assert len(walk) == 167
    assert int((walk.values == 0).sum()) == 1
    assert int((walk.values == 1).sum()) == 78
    zero_at = int(np.flatnonzero(walk.values == 0)[0])
    assert walk.sources[zero_at] == 97
    assert qr_ratio(walk) == pytest.approx(0.4698795, abs=5e-8)


def test_walk_starts_at_three(table_1e6):
    walk = rational_walk(5, 100, table=table_1e6)
    assert walk.sources[0] == 3
    assert walk.sources[-1] == 97


def test_walk_tiny():
    walk = rational_walk(3, 4)
    assert len(walk) == 1
    assert walk.values.tolist() == [0]


def test_walk_validation():
    with pytest.raises(ValueError):
        rational_walk(2, 100)
    with pytest.raises(ValueError):
        rational_walk(9, 100)
    with pytest.raises(ValueError):
        rational_walk(7, 100, filter="2mod4")
    with pytest.raises(ValueError):
        rational_walk(7, 100, direction="sideways")


def test_walk_steps_indexing(table_1e6):
    walk = rational_walk(11, 100, table=table_1e6)
    listed = list(walk.steps())
    assert [s.index for s in listed] == list(range(1, len(walk) + 1))
    assert all(s.value == legendre(s.source, 11) for s in listed)
    assert walk.step(1).source == 3
    with pytest.raises(IndexError):
        walk.step(0)
    with pytest.raises(IndexError):
        walk.step(len(walk) + 1)


def test_sums_reconstruct(table_1e6):
    walk = rational_walk(13, 5000, table=table_1e6)
    assert walk.sums[0] == 0
    assert np.array_equal(np.diff(walk.sums), walk.values)
    assert np.all(np.abs(walk.sums[1:]) <= np.arange(1, len(walk) + 1))


def test_filter_partition(table_1e6):
    whole = rational_walk(11, 2000, table=table_1e6)
    one = rational_walk(11, 2000, filter="1mod4", table=table_1e6)
    three = rational_walk(11, 2000, filter="3mod4", table=table_1e6)
    assert len(one) + len(three) == len(whole)
    merged = sorted(
        [(int(q), int(v)) for q, v in zip(one.sources, one.values)]
        + [(int(q), int(v)) for q, v in zip(three.sources, three.values)]
    )
    assert merged == [(int(q), int(v)) for q, v in zip(whole.sources, whole.values)]
    assert np.all(one.sources % 4 == 1)
    assert np.all(three.sources % 4 == 3)


def test_direction_reciprocity_link(table_1e6):
    # p = 1 mod 4: the two directions agree stepwise
    for p in (13, 17):
        qp = rational_walk(p, 10_000, table=table_1e6)
        pq = rational_walk(p, 10_000, direction="pq", table=table_1e6)
        assert np.array_equal(qp.values, pq.values)
    # p = 3 mod 4: they must differ somewhere
    qp = rational_walk(7, 10_000, table=table_1e6)
    pq = rational_walk(7, 10_000, direction="pq", table=table_1e6)
    assert not np.array_equal(qp.values, pq.values)


def test_gaussian_walk_first_steps(table_1e5):
    walk = gaussian_walk(GaussInt(4, 9), 100, table=table_1e5)
    assert str(walk.sources[0]) == "1+i"
    assert walk.values[0] == -1  # [(1+i)/(4+9i)] = -1
    inert_walk = gaussian_walk(GaussInt(3, 0), 10, table=table_1e5)
    assert [str(s) for s in inert_walk.sources] == ["1+i", "1+2i", "2+i", "3"]
    assert inert_walk.values.tolist()[1] == -1  # norm 5 is 2 mod 3


def test_gaussian_walk_zero_step(table_1e5):
    walk = gaussian_walk(GaussInt(2, 3), 50, table=table_1e5)
    zeros = np.flatnonzero(walk.values == 0)
    assert len(zeros) == 1
    assert walk.sources[int(zeros[0])] == GaussInt(2, 3)


def test_gaussian_walk_ramified_toggle(table_1e5):
    with_r = gaussian_walk(GaussInt(2, 3), 100, table=table_1e5)
    without = gaussian_walk(
        GaussInt(2, 3), 100, include_ramified=False, table=table_1e5
    )
    assert len(with_r) == len(without) + 1
    assert str(without.sources[0]) == "1+2i"
    assert np.array_equal(with_r.values[1:], without.values)


def test_gaussian_walk_validation():
    with pytest.raises(ValueError):
        gaussian_walk(GaussInt(1, 1), 100)
    with pytest.raises(ValueError):
        gaussian_walk(GaussInt(5, 0), 100)


def test_qr_ratio_edges():
    assert qr_ratio(series([1, 1, 1])) == 1.0
    assert qr_ratio(series([1, -1, 1, -1])) == 0.5
    assert qr_ratio(series([1, 0, -1]), upto=2) == 1.0
    with pytest.raises(ValueError):
        qr_ratio(series([0, 0]))
    with pytest.raises(ValueError):
        qr_ratio(series([1, 1]), upto=0)


def test_run_ratio_examples():
    assert consecutive_run_ratio(series([1, 1, 1]), 2) == 1.0
    assert consecutive_run_ratio(series([1, -1, 1, -1]), 2) == 0.0
    # zeros drop out before windows are taken
    assert consecutive_run_ratio(series([1, 0, 1]), 2) == 1.0
    assert consecutive_run_ratio(series([1, 1, -1, -1]), 2) == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        consecutive_run_ratio(series([1, 1]), 1)
    with pytest.raises(ValueError):
        consecutive_run_ratio(series([1, 0, 1]), 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=60), st.integers(2, 4))
def test_run_ratio_vs_naive(values, n):
    z = [v for v in values if v]
    walk = series(values)
    if len(z) < n:
        with pytest.raises(ValueError):
            consecutive_run_ratio(walk, n)
        return
    windows = [z[i : i + n] for i in range(len(z) - n + 1)]
    expected = sum(len(set(w)) == 1 for w in windows) / len(windows)
    assert consecutive_run_ratio(walk, n) == pytest.approx(expected, rel=1e-12)


def test_average_curve_p_set_size(table_1e6):
    odd = [int(p) for p in table_1e6.primes[table_1e6.primes < 1000] if p > 2]
    assert len(odd) == 167


def test_average_curve_single_p_zero_stdev(table_1e6):
    curve = average_ratio_curve([97], (100, 1000), table=table_1e6)
    assert curve.stdev == (0.0, 0.0)
    assert curve.n == (1, 1)
    assert curve.mean[1] == pytest.approx(qr_ratio(rational_walk(97, 1000, table=table_1e6)))


def test_average_curve_matches_fresh_walks(table_1e6):
    p_set = (5, 13, 31)
    checkpoints = (100, 1000, 5000)
    curve = average_ratio_curve(p_set, checkpoints, table=table_1e6)
    for i, cp in enumerate(checkpoints):
        vals = [qr_ratio(rational_walk(p, cp, table=table_1e6)) for p in p_set]
        assert curve.mean[i] == pytest.approx(np.mean(vals), rel=1e-12)
        assert curve.stdev[i] == pytest.approx(np.std(vals), rel=1e-12)
        assert curve.n[i] == 3
    assert curve.skipped == 0


def test_average_curve_run_stat_matches(table_1e6):
    curve = average_ratio_curve([7], (50, 500), statistic="run2", table=table_1e6)
    for i, cp in enumerate(checkpoints := (50, 500)):
        expected = consecutive_run_ratio(rational_walk(7, cp, table=table_1e6), 2)
        assert curve.mean[i] == pytest.approx(expected, rel=1e-12)


def test_average_curve_skips_undefined(table_1e6):
    curve = average_ratio_curve([3], (4, 100), table=table_1e6)
    assert curve.n == (0, 1)
    assert curve.skipped == 1
    assert np.isnan(curve.mean[0])


def test_average_curve_validation(table_1e6):
    with pytest.raises(ValueError):
        average_ratio_curve([], (100,), table=table_1e6)
    with pytest.raises(ValueError):
        average_ratio_curve([7], (100, 100), table=table_1e6)
    with pytest.raises(ValueError):
        average_ratio_curve([7], (1000, 100), table=table_1e6)
    with pytest.raises(ValueError):
        average_ratio_curve([7], (100,), statistic="run9", table=table_1e6)


def test_race_tally_hand_case(table_1e6):
    tally = race_tally(table_1e6, 4, [10])
    assert tally.residues == (1, 3)
    assert tally.rows == ((1, 2),)


def test_race_tally_reference_values(table_1e6):
    tally = race_tally(table_1e6, 3, [10**k for k in range(1, 7)])
    assert tally.rows == (
        (1, 2),
        (11, 13),
        (80, 87),
        (611, 617),
        (4784, 4807),
        (39231, 39266),
    )


def test_race_tally_partition(table_1e6):
    for m, x in ((3, 50), (4, 997), (6, 10_000), (10, 345)):
        tally = race_tally(table_1e6, m, [x])
        shared = sum(1 for p in (2, 3, 5, 7) if m % p == 0 and p <= x)
        head = table_1e6.primes[table_1e6.primes <= x]
        assert sum(tally.rows[0]) == head.size - shared


def test_race_tally_validation(table_1e6):
    with pytest.raises(ValueError):
        race_tally(table_1e6, 1, [10])
    with pytest.raises(ValueError):
        race_tally(table_1e6, 3, [10**7])


def naive_measure(table, m, leader, laggard, x_max):
    lead = set(int(p) for p in table.primes if p % m == leader)
    lag = set(int(p) for p in table.primes if p % m == laggard)
    cl = cg = 0
    total = 0.0
    for x in range(2, x_max + 1):
        cl += x in lead
        cg += x in lag
        if cl >= cg:
            total += 1.0 / x
    return total / log(x_max)


def test_logarithmic_measure_vs_naive(table_1e6):
    for m, leader, laggard in ((4, 3, 1), (4, 1, 3), (3, 2, 1)):
        got = logarithmic_measure(table_1e6, m, leader, laggard, 10**4)
        assert got == pytest.approx(
            naive_measure(table_1e6, m, leader, laggard, 10**4), rel=1e-12
        )


def test_logarithmic_measure_dominated_race_is_zero(table_1e6):
    assert logarithmic_measure(table_1e6, 3, 1, 2, 10**5) == 0.0


def test_logarithmic_measure_validation(table_1e6):
    with pytest.raises(ValueError):
        logarithmic_measure(table_1e6, 4, 2, 1, 100)
    with pytest.raises(ValueError):
        logarithmic_measure(table_1e6, 4, 3, 3, 100)
    with pytest.raises(ValueError):
        logarithmic_measure(table_1e6, 4, 3, 1, 10**6 + 5)
    with pytest.raises(ValueError):
        logarithmic_measure(table_1e6, 4, 3, 1, 1)


def test_pearson_edges(table_1e6):
    walk = rational_walk(7, 1000, table=table_1e6)
    negated = WalkSeries(-walk.values, walk.sources, walk.meta)
    assert pearson_correlation(walk, walk) == pytest.approx(1.0)
    assert pearson_correlation(walk, negated) == pytest.approx(-1.0)
    flat = series([0, 0, 0])
    with pytest.raises(ValueError):
        pearson_correlation(walk, flat)
    with pytest.raises(ValueError):
        pearson_correlation(flat, flat)
    with pytest.raises(ValueError):
        pearson_correlation(series([1]), series([1]))


def test_pearson_matches_numpy(table_1e6):
    w1 = rational_walk(11, 3000, table=table_1e6)
    w2 = rational_walk(13, 3000, table=table_1e6)
    expected = np.corrcoef(w1.sums[1:], w2.sums[1:])[0, 1]
    assert pearson_correlation(w1, w2) == pytest.approx(expected, rel=1e-12)


def test_square_root_envelope_band(table_1e6):
    # soft bound on |S(t)|/sqrt(t) for every odd prime modulus below 100
    for p in [int(p) for p in sieve_upto(100).primes if p > 2]:
        walk = rational_walk(p, 10**6, table=table_1e6)
        assert walk_stats(walk)["max_excursion"] <= 5.0, p


def test_walk_stats_consistency(table_1e6):
    walk = rational_walk(97, 1000, table=table_1e6)
    stats = walk_stats(walk)
    assert stats["steps"] == 167
    assert stats["plus_steps"] + stats["minus_steps"] + stats["zero_steps"] == 167
    assert stats["final_sum"] == int(walk.sums[-1])
    assert stats["qr_ratio"] == pytest.approx(78 / 166)
