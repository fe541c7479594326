"""NumPy implementations of the hot loops.

These are the fallback backend; ``legwalk.kernels._ckernels`` provides the
same four functions compiled with Cython.  Both backends must return
identical values (floating-point sums may differ in the last couple of ulps
because of summation order).

All moduli handled here must fit in 31 bits so that a square never
overflows int64.  The scalar routines in :mod:`legwalk.modular` have no such
restriction.
"""

import numpy as np

_MOD_LIMIT = 1 << 31


def _check_modulus(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if p >= _MOD_LIMIT:
        raise ValueError(f"batch kernels require modulus < 2**31, got {p}")


def sieve_range(lo: int, hi: int, base_primes) -> np.ndarray:
    """Primes in [lo, hi), given base primes covering sqrt(hi)."""
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(hi - lo, dtype=bool)
    for v in range(lo, min(hi, 2)):
        mask[v - lo] = False
    for p in np.asarray(base_primes, dtype=np.int64):
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start < hi:
            mask[start - lo :: p] = False
    return np.flatnonzero(mask).astype(np.int64) + lo


def legendre_batch(a, p: int) -> np.ndarray:
    """Quadratic-character values (a_i | p) for a fixed odd prime p.

    Euler's criterion evaluated with a vectorised square-and-multiply;
    returns an int8 array over {-1, 0, +1}.
    """
    _check_modulus(p)
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    base = a.copy()
    e = (p - 1) // 2
    while e:
        if e & 1:
            result = result * base % p
        e >>= 1
        if e:
            base = base * base % p
    out = np.where(result == 1, 1, np.where(result == p - 1, -1, 0)).astype(np.int8)
    if not np.all((result == 1) | (result == p - 1) | (result == 0)):
        raise ValueError(f"{p} is not prime (Euler's criterion failed)")
    return out


def legendre_fixed_top(a: int, mods) -> np.ndarray:
    """Quadratic-character values (a | q_i) for an array of odd primes q_i."""
    mods = np.asarray(mods, dtype=np.int64)
    if mods.size and (
        int(mods.min()) < 3 or int(mods.max()) >= _MOD_LIMIT or np.any(mods % 2 == 0)
    ):
        raise ValueError("batch kernels require odd moduli in [3, 2**31)")
    base = np.asarray(a, dtype=np.int64) % mods
    result = np.ones_like(mods)
    e = (mods - 1) >> 1
    while np.any(e > 0):
        odd = (e & 1).astype(bool)
        result = np.where(odd, result * base % mods, result)
        e = e >> 1
        base = np.where(e > 0, base * base % mods, base)
    out = np.where(result == 1, 1, np.where(result == mods - 1, -1, 0)).astype(np.int8)
    if not np.all((result == 1) | (result == mods - 1) | (result == 0)):
        raise ValueError("some modulus is not an odd prime")
    return out


def lead_measure(leader, laggard, x_max: int, segment: int = 1 << 20) -> float:
    """Sum of 1/x over 2 <= x <= x_max where the leader's prime tally is at
    least the laggard's (ties retain the lead)."""
    leader = np.asarray(leader, dtype=np.int64)
    laggard = np.asarray(laggard, dtype=np.int64)
    total = 0.0
    lead_seen = lag_seen = 0
    for lo in range(2, x_max + 1, segment):
        hi = min(lo + segment, x_max + 1)
        n = hi - lo
        delta_lead = np.zeros(n, dtype=np.int64)
        delta_lag = np.zeros(n, dtype=np.int64)
        li, lj = np.searchsorted(leader, (lo, hi))
        gi, gj = np.searchsorted(laggard, (lo, hi))
        delta_lead[leader[li:lj] - lo] = 1
        delta_lag[laggard[gi:gj] - lo] = 1
        lead_counts = np.cumsum(delta_lead) + lead_seen
        lag_counts = np.cumsum(delta_lag) + lag_seen
        ahead = lead_counts >= lag_counts
        if ahead.any():
            xs = np.arange(lo, hi, dtype=np.float64)
            total += float((1.0 / xs[ahead]).sum())
        lead_seen = int(lead_counts[-1])
        lag_seen = int(lag_counts[-1])
    return total
