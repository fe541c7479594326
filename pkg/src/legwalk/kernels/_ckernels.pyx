# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot loops.

Mirrors :mod:`legwalk.kernels.pykernels` function for function; the backend
is chosen once in ``legwalk.kernels``.
"""

import numpy as np

from libc.stdint cimport int64_t, int8_t, uint8_t, uint64_t

_MOD_LIMIT = 1 << 31


cdef inline int8_t _euler(int64_t a, int64_t p) noexcept:
    # (a | p) via a^((p-1)/2) mod p; p odd, p < 2**31 so products fit u64.
    cdef uint64_t base, result, m = <uint64_t> p
    cdef int64_t r = a % p
    cdef int64_t e = (p - 1) >> 1
    if r < 0:
        r += p
    base = <uint64_t> r
    result = 1
    while e:
        if e & 1:
            result = result * base % m
        e >>= 1
        if e:
            base = base * base % m
    if result == 1:
        return 1
    if result == m - 1:
        return -1
    if result == 0:
        return 0
    return 2  # impossible for prime p; caller raises


def sieve_range(long long lo, long long hi, base_primes):
    """Primes in [lo, hi), given base primes covering sqrt(hi)."""
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    cdef const int64_t[::1] bp = np.ascontiguousarray(base_primes, dtype=np.int64)
    cdef Py_ssize_t n = hi - lo
    mask = np.ones(n, dtype=np.uint8)
    cdef uint8_t[::1] mv = mask
    cdef uint8_t* mp = &mv[0]
    cdef Py_ssize_t i, j, step
    cdef int64_t p, start, v
    for v in range(lo, min(hi, 2)):
        mp[v - lo] = 0
    for i in range(bp.shape[0]):
        p = bp[i]
        if p * p >= hi:
            break
        start = p * p
        if start < lo:
            start = ((lo + p - 1) // p) * p
        j = start - lo
        step = p
        while j < n:
            mp[j] = 0
            j += step
    return np.flatnonzero(mask).astype(np.int64) + lo


def legendre_batch(a, long long p):
    """Quadratic-character values (a_i | p) for a fixed odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if p >= _MOD_LIMIT:
        raise ValueError(f"batch kernels require modulus < 2**31, got {p}")
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef Py_ssize_t n = av.shape[0], i
    out = np.empty(n, dtype=np.int8)
    cdef int8_t[::1] ov = out
    cdef int8_t s
    cdef bint bad = False
    for i in range(n):
        s = _euler(av[i], p)
        if s == 2:
            bad = True
            break
        ov[i] = s
    if bad:
        raise ValueError(f"{p} is not prime (Euler's criterion failed)")
    return out


def legendre_fixed_top(long long a, mods):
    """Quadratic-character values (a | q_i) for an array of odd primes q_i."""
    cdef const int64_t[::1] mv = np.ascontiguousarray(mods, dtype=np.int64)
    cdef Py_ssize_t n = mv.shape[0], i
    out = np.empty(n, dtype=np.int8)
    cdef int8_t[::1] ov = out
    cdef int8_t s
    cdef int64_t q
    cdef bint bad = False
    for i in range(n):
        q = mv[i]
        if q < 3 or q % 2 == 0 or q >= _MOD_LIMIT:
            raise ValueError("batch kernels require odd moduli in [3, 2**31)")
        s = _euler(a, q)
        if s == 2:
            bad = True
            break
        ov[i] = s
    if bad:
        raise ValueError("some modulus is not an odd prime")
    return out


def lead_measure(leader, laggard, long long x_max):
    """Sum of 1/x over 2 <= x <= x_max where the leader's prime tally is at
    least the laggard's (ties retain the lead)."""
    cdef const int64_t[::1] ld = np.ascontiguousarray(leader, dtype=np.int64)
    cdef const int64_t[::1] lg = np.ascontiguousarray(laggard, dtype=np.int64)
    cdef Py_ssize_t li = 0, gi = 0, nl = ld.shape[0], ng = lg.shape[0]
    cdef long long x, cl = 0, cg = 0
    cdef double total = 0.0
    for x in range(2, x_max + 1):
        while li < nl and ld[li] == x:
            cl += 1
            li += 1
        while gi < ng and lg[gi] == x:
            cg += 1
            gi += 1
        if cl >= cg:
            total += 1.0 / x
    return total
