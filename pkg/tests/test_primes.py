"""Sieve, counting, and cache tests, anchored to a naive trial-division
oracle and hand-checked small values."""

from math import gcd as math_gcd
from math import isqrt, log

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legwalk.primes import (
    APClass,
    cache_path,
    count_primes,
    count_primes_ap,
    density_ratio,
    load_cache,
    load_or_build,
    primes_in_ap,
    save_cache,
    shrink_table,
    sieve_upto,
    table_digest,
    totient,
)


def naive_primes(limit: int) -> list[int]:
    """Trial-division oracle, independent of the sieve under test."""
    out = []
    for n in range(2, limit):
        if all(n % d for d in range(2, isqrt(n) + 1)):
            out.append(n)
    return out


def test_sieve_matches_paper_list():
    assert list(sieve_upto(31)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sieve_empty_below_two():
    for limit in (0, 1, 2):
        assert list(sieve_upto(limit)) == []


@pytest.mark.parametrize("limit", [3, 4, 30, 31, 97, 1000, 10_000])
def test_sieve_vs_trial_division(limit):
    assert list(sieve_upto(limit)) == naive_primes(limit)


def test_sieve_vs_trial_division_1e5():
    assert list(sieve_upto(10**5)) == naive_primes(10**5)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=20_000))
def test_sieve_matches_oracle_any_limit(limit):
    assert list(sieve_upto(limit)) == naive_primes(limit)


def test_segment_size_does_not_matter():
    expected = sieve_upto(50_000)
    for segment in (64, 4096, 1 << 20):
        assert np.array_equal(sieve_upto(50_000, segment).primes, expected.primes)


def test_sieve_rejects_bad_inputs():
    with pytest.raises(ValueError):
        sieve_upto(-1)
    with pytest.raises(ValueError):
        sieve_upto(100, segment_size=1)


def test_pi_of_1e6(table_1e6):
    assert count_primes(table_1e6, 10**6) == 78498


def test_count_primes_small(table_1e6):
    assert count_primes(table_1e6, 30) == 10
    assert count_primes(table_1e6, 1) == 0
    assert count_primes(table_1e6, 2) == 1


def test_count_primes_out_of_range(table_1e6):
    with pytest.raises(ValueError, match="out of range"):
        count_primes(table_1e6, 10**6 + 1)


def test_membership_bitset(table_1e6):
    small = sieve_upto(10_000)
    marked = set(small)
    for n in range(10_000):
        assert small.is_prime(n) == (n in marked)
    assert 17 in small
    assert 18 not in small
    assert "17" not in small
    with pytest.raises(ValueError):
        small.is_prime(10_000)


def test_ap_class_validation():
    with pytest.raises(ValueError):
        APClass(1, 0)
    with pytest.raises(ValueError):
        APClass(4, 4)
    with pytest.raises(ValueError):
        APClass(4, -1)
    assert APClass(4, 1).coprime
    assert not APClass(4, 2).coprime


def test_primes_in_ap_examples():
    table = sieve_upto(100)
    assert len(primes_in_ap(table, APClass(3, 2))) == 13
    assert primes_in_ap(sieve_upto(11), APClass(3, 1)).tolist() == [7]
    assert primes_in_ap(table, APClass(2, 0)).tolist() == [2]


def test_count_primes_ap_table_values(table_1e6):
    assert count_primes_ap(table_1e6, 10**6, APClass(3, 1)) == 39231
    assert count_primes_ap(table_1e6, 10**6, APClass(3, 2)) == 39266
    assert count_primes_ap(table_1e6, 10, APClass(3, 0)) == 1


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=2, max_value=12),
    st.integers(min_value=2, max_value=9999),
)
def test_ap_counts_partition(m, x):
    table = sieve_upto(10_000)
    total = sum(count_primes_ap(table, x, APClass(m, r)) for r in range(m))
    assert total == count_primes(table, x)


def test_totient_examples():
    assert totient(10) == 4
    assert totient(1) == 1
    for p in (2, 3, 5, 97, 991):
        assert totient(p) == p - 1
    with pytest.raises(ValueError):
        totient(0)


def test_totient_vs_bruteforce():
    for n in range(1, 300):
        assert totient(n) == sum(1 for k in range(1, n + 1) if math_gcd(k, n) == 1)


def test_density_ratio_values(table_1e6):
    # frozen from the oracle: pi(1e6) = 78498 (trial-division-checked above)
    assert density_ratio(table_1e6, 10**6) == pytest.approx(
        78498 * log(10**6) / 10**6, rel=1e-12
    )
    assert density_ratio(table_1e6, 10**6) == pytest.approx(1.0844899, abs=1e-7)
    # mod-3 class 2 count comes from the tally checked in test_count_primes_ap_table_values
    got = density_ratio(table_1e6, 10**6, APClass(3, 2))
    assert got == pytest.approx(39266 / (10**6 / (2 * log(10**6))), rel=1e-12)
    assert got == pytest.approx(1.0849597, abs=1e-7)
    # tiny case by hand: pi(3)=2, so 2 / (3/ln 3)
    assert density_ratio(sieve_upto(10), 3) == pytest.approx(
        2 * log(3) / 3, rel=1e-12
    )


def test_density_ratio_window(table_1e6):
    for m in (3, 4, 5):
        for r in range(1, m):
            if math_gcd(r, m) != 1:
                continue
            assert 0.9 < density_ratio(table_1e6, 10**6, APClass(m, r)) < 1.2


def test_density_ratio_validation(table_1e6):
    with pytest.raises(ValueError, match="gcd"):
        density_ratio(table_1e6, 100, APClass(4, 2))
    with pytest.raises(ValueError):
        density_ratio(table_1e6, 2)


def test_sieve_determinism():
    a = sieve_upto(200_000)
    b = sieve_upto(200_000)
    assert np.array_equal(a.primes, b.primes)
    assert table_digest(a) == table_digest(b)


def test_cache_round_trip(tmp_path):
    table = sieve_upto(12_345)
    path = cache_path(str(tmp_path), table.limit)
    digest = save_cache(table, path)
    with open(path, "rb") as fh:
        first_line = fh.readline()
    assert first_line == f"PRIMECACHE v1 limit=12345 count={len(table)}\n".encode()
    loaded = load_cache(path)
    assert loaded.limit == table.limit
    assert np.array_equal(loaded.primes, table.primes)
    assert loaded.is_prime(11)
    assert not loaded.is_prime(12)
    assert digest == table_digest(table)


def test_cache_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.primecache"
    bad.write_bytes(b"not a cache\n")
    with pytest.raises(ValueError, match="not a PRIMECACHE"):
        load_cache(str(bad))
    truncated = tmp_path / "short.primecache"
    truncated.write_bytes(b"PRIMECACHE v1 limit=100 count=25\n\x02\x00")
    with pytest.raises(ValueError, match="truncated"):
        load_cache(str(truncated))


def test_load_or_build_reuses_larger_cache(tmp_path):
    big = sieve_upto(5000)
    save_cache(big, cache_path(str(tmp_path), 5000))
    small = load_or_build(1000, cache_dir=str(tmp_path))
    assert small.limit == 1000
    assert list(small) == naive_primes(1000)
    # nothing new written for the smaller request
    assert sorted(p.name for p in tmp_path.iterdir()) == ["primes_5000.primecache"]


def test_load_or_build_writes_cache(tmp_path):
    load_or_build(777, cache_dir=str(tmp_path))
    assert (tmp_path / "primes_777.primecache").exists()
    again = load_or_build(777, cache_dir=str(tmp_path))
    assert list(again) == naive_primes(777)


def test_shrink_table():
    table = sieve_upto(1000)
    small = shrink_table(table, 100)
    assert small.limit == 100
    assert list(small) == naive_primes(100)
    with pytest.raises(ValueError):
        shrink_table(small, 200)


def test_prime_table_is_immutable():
    table = sieve_upto(100)
    with pytest.raises(ValueError):
        table.primes[0] = 4
