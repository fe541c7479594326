"""Backend parity and edge cases for the hot-loop kernels."""

import numpy as np
import pytest

from legwalk.kernels import pykernels
from legwalk.modular import legendre

try:
    from legwalk.kernels import _ckernels as ckernels
except ImportError:
    ckernels = None

needs_ext = pytest.mark.skipif(ckernels is None, reason="compiled kernels not built")

# primes below 1100, seeded by the primes covering sqrt(1100)
BASE = pykernels.sieve_range(
    0, 1100, np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31], dtype=np.int64)
)


def test_sieve_range_small():
    got = pykernels.sieve_range(0, 31, BASE)
    assert got.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sieve_range_segment_boundaries():
    whole = pykernels.sieve_range(0, 1000, BASE)
    pieces = [pykernels.sieve_range(lo, min(lo + 97, 1000), BASE) for lo in range(0, 1000, 97)]
    assert np.concatenate(pieces).tolist() == whole.tolist()


def test_sieve_range_empty_and_low():
    assert pykernels.sieve_range(10, 10, BASE).size == 0
    assert pykernels.sieve_range(0, 2, BASE).size == 0
    assert pykernels.sieve_range(1, 3, BASE).tolist() == [2]


def test_legendre_batch_matches_scalar():
    for p in (3, 7, 97, 10007):
        a = np.arange(-2 * p, 2 * p, dtype=np.int64)
        got = pykernels.legendre_batch(a, p)
        expected = [legendre(int(v), p) for v in a]
        assert got.tolist() == expected


def test_legendre_batch_rejects_bad_modulus():
    with pytest.raises(ValueError):
        pykernels.legendre_batch(np.arange(4, dtype=np.int64), 8)
    with pytest.raises(ValueError):
        pykernels.legendre_batch(np.arange(4, dtype=np.int64), 1)
    with pytest.raises(ValueError, match="not prime"):
        pykernels.legendre_batch(np.arange(9, dtype=np.int64), 9)


def test_legendre_fixed_top_matches_scalar():
    mods = np.array([3, 5, 7, 11, 13, 97, 101], dtype=np.int64)
    for a in (-5, 0, 2, 97, 12345):
        got = pykernels.legendre_fixed_top(a, mods)
        assert got.tolist() == [legendre(a, int(q)) for q in mods]


def test_legendre_fixed_top_rejects_even_modulus():
    with pytest.raises(ValueError):
        pykernels.legendre_fixed_top(3, np.array([3, 4], dtype=np.int64))


def test_lead_measure_hand_case():
    # leader hits at 2 and 3, laggard at 5: ahead (ties included) everywhere
    leader = np.array([2, 3], dtype=np.int64)
    laggard = np.array([5], dtype=np.int64)
    expected = 1 / 2 + 1 / 3 + 1 / 4 + 1 / 5 + 1 / 6
    assert pykernels.lead_measure(leader, laggard, 6) == pytest.approx(expected, rel=1e-12)


def test_lead_measure_never_ahead():
    empty = np.array([], dtype=np.int64)
    two = np.array([2], dtype=np.int64)
    # the laggard scores at x=2 and is never matched: zero measure
    assert pykernels.lead_measure(empty, two, 10) == 0.0
    # swapped, the leader is ahead at every x
    got = pykernels.lead_measure(two, empty, 10)
    assert got == pytest.approx(sum(1 / x for x in range(2, 11)), rel=1e-12)


@needs_ext
def test_backend_parity_sieve():
    for lo, hi in ((0, 1000), (123, 456), (990, 1000), (5, 5)):
        a = pykernels.sieve_range(lo, hi, BASE)
        b = ckernels.sieve_range(lo, hi, BASE)
        assert np.array_equal(a, b)


@needs_ext
def test_backend_parity_legendre():
    rng = np.random.default_rng(7)
    a = rng.integers(-10**6, 10**6, size=5000).astype(np.int64)
    for p in (3, 97, 99991):
        assert np.array_equal(
            pykernels.legendre_batch(a, p), ckernels.legendre_batch(a, p)
        )
    mods = np.array([3, 5, 97, 99991, 13], dtype=np.int64)
    for top in (-4, 0, 7, 95):
        assert np.array_equal(
            pykernels.legendre_fixed_top(top, mods),
            ckernels.legendre_fixed_top(top, mods),
        )


@needs_ext
def test_backend_parity_lead_measure():
    primes = pykernels.sieve_range(0, 10**5, BASE)
    lead = primes[primes % 4 == 3]
    lag = primes[primes % 4 == 1]
    a = pykernels.lead_measure(lead, lag, 10**5 - 1)
    b = ckernels.lead_measure(lead, lag, 10**5 - 1)
    assert a == pytest.approx(b, rel=1e-12)


@needs_ext
def test_backend_parity_errors():
    for mod in (9, 8):
        with pytest.raises(ValueError):
            ckernels.legendre_batch(np.arange(mod, dtype=np.int64), mod)
