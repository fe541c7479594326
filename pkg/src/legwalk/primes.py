"""Rational primes: segmented sieving, counting, and the on-disk cache.

The sieve is segmented so the working memory per step is bounded by the
segment size regardless of the limit; limits up to 1e8 are practical.
"""

import hashlib
import os
import re
from dataclasses import dataclass
from math import gcd as _gcd
from math import isqrt, log

import numpy as np

from .kernels import sieve_range

DEFAULT_SEGMENT = 1 << 20

_CACHE_HEADER = re.compile(rb"^PRIMECACHE v1 limit=(\d+) count=(\d+)\n")
_CACHE_SUFFIX = ".primecache"


class PrimeTable:
    """Primes below ``limit``: an ordered int64 array plus a packed bitset
    for O(1) membership tests.  Immutable once built."""

    __slots__ = ("limit", "primes", "_bits")

    def __init__(self, limit: int, primes: np.ndarray):
        self.limit = int(limit)
        arr = np.asarray(primes, dtype=np.int64)
        arr.setflags(write=False)
        self.primes = arr
        bits = np.zeros(max((self.limit + 7) // 8, 1), dtype=np.uint8)
        if arr.size:
            np.bitwise_or.at(bits, arr >> 3, (1 << (arr & 7)).astype(np.uint8))
        bits.setflags(write=False)
        self._bits = bits

    def __len__(self) -> int:
        return int(self.primes.size)

    def __iter__(self):
        return iter(self.primes.tolist())

    def is_prime(self, n: int) -> bool:
        if not 0 <= n < self.limit:
            raise ValueError(f"{n} outside table range [0, {self.limit})")
        return bool(self._bits[n >> 3] & (1 << (n & 7)))

    def __contains__(self, n) -> bool:
        return isinstance(n, int) and 0 <= n < self.limit and self.is_prime(n)

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, count={len(self)})"


@dataclass(frozen=True)
class APClass:
    """A residue class ``residue (mod modulus)``."""

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue must lie in [0, {self.modulus}), got {self.residue}"
            )

    @property
    def coprime(self) -> bool:
        return _gcd(self.residue, self.modulus) == 1


def _small_sieve(n: int) -> np.ndarray:
    """Primes below n by a plain sieve; only used to seed the segments."""
    if n <= 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(n - 1) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_upto(limit: int, segment_size: int = DEFAULT_SEGMENT) -> PrimeTable:
    """All primes strictly below ``limit``, sieved in bounded-memory segments."""
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    if segment_size < 2:
        raise ValueError("segment_size must be at least 2")
    if limit <= 2:
        return PrimeTable(limit, np.empty(0, dtype=np.int64))
    base = _small_sieve(isqrt(limit - 1) + 1)
    chunks = []
    for lo in range(0, limit, segment_size):
        chunks.append(sieve_range(lo, min(lo + segment_size, limit), base))
    return PrimeTable(limit, np.concatenate(chunks))


def primes_in_ap(table: PrimeTable, cls: APClass) -> np.ndarray:
    """The primes in the table lying in the given residue class, in order."""
    return table.primes[table.primes % cls.modulus == cls.residue]


def _check_range(table: PrimeTable, x: int) -> None:
    if x >= table.limit:
        raise ValueError(f"x={x} is out of range for table limit {table.limit}")


def count_primes(table: PrimeTable, x: int) -> int:
    """pi(x): number of primes <= x."""
    _check_range(table, x)
    return int(np.searchsorted(table.primes, x, side="right"))


def count_primes_ap(table: PrimeTable, x: int, cls: APClass) -> int:
    """pi(x; modulus, residue): primes <= x in the residue class."""
    _check_range(table, x)
    head = table.primes[: np.searchsorted(table.primes, x, side="right")]
    return int(np.count_nonzero(head % cls.modulus == cls.residue))


def totient(n: int) -> int:
    """Euler's phi: count of integers in [1, n] coprime to n."""
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    result = m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def density_ratio(table: PrimeTable, x: int, cls: APClass | None = None) -> float:
    """pi(x) / (x / ln x), or its arithmetic-progression analogue
    pi(x; a, b) / (x / (phi(a) ln x)) when a class is given.

    Both ratios tend to 1; log means the natural logarithm.
    """
    if x < 3:
        raise ValueError(f"density ratio needs x >= 3, got {x}")
    if cls is None:
        return count_primes(table, x) * log(x) / x
    if not cls.coprime:
        raise ValueError(
            f"density ratio needs gcd(residue, modulus) == 1; "
            f"got {cls.residue} mod {cls.modulus}"
        )
    expected = x / (totient(cls.modulus) * log(x))
    return count_primes_ap(table, x, cls) / expected


# --- cache file: "PRIMECACHE v1 limit=<n> count=<k>\n" + little-endian u64 ---

def _serialize(table: PrimeTable) -> tuple[bytes, bytes]:
    header = f"PRIMECACHE v1 limit={table.limit} count={len(table)}\n".encode()
    return header, table.primes.astype("<u8").tobytes()


def table_digest(table: PrimeTable) -> str:
    """SHA-256 of the table's cache-file serialization (whether or not the
    file exists); identical tables hash identically."""
    header, payload = _serialize(table)
    h = hashlib.sha256()
    h.update(header)
    h.update(payload)
    return h.hexdigest()


def cache_path(cache_dir: str, limit: int) -> str:
    return os.path.join(cache_dir, f"primes_{limit}{_CACHE_SUFFIX}")


def save_cache(table: PrimeTable, path: str) -> str:
    """Write the cache file and return its SHA-256 digest."""
    header, payload = _serialize(table)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
    h = hashlib.sha256()
    h.update(header)
    h.update(payload)
    return h.hexdigest()


def load_cache(path: str) -> PrimeTable:
    with open(path, "rb") as fh:
        blob = fh.read()
    m = _CACHE_HEADER.match(blob)
    if m is None:
        raise ValueError(f"{path}: not a PRIMECACHE v1 file")
    limit, count = int(m.group(1)), int(m.group(2))
    payload = blob[m.end() :]
    if len(payload) != 8 * count:
        raise ValueError(
            f"{path}: truncated cache (expected {8 * count} payload bytes, "
            f"got {len(payload)})"
        )
    primes = np.frombuffer(payload, dtype="<u8").astype(np.int64)
    return PrimeTable(limit, primes)


def shrink_table(table: PrimeTable, limit: int) -> PrimeTable:
    """A view of the table restricted to primes below a smaller limit."""
    if limit > table.limit:
        raise ValueError(f"cannot grow table {table.limit} to {limit}")
    if limit == table.limit:
        return table
    cut = np.searchsorted(table.primes, limit, side="left")
    return PrimeTable(limit, table.primes[:cut])


def load_or_build(
    limit: int,
    cache_dir: str | None = None,
    segment_size: int = DEFAULT_SEGMENT,
    write_cache: bool = True,
) -> PrimeTable:
    """Return a table with exactly the requested limit, reusing any cache
    file in ``cache_dir`` whose limit is at least as large."""
    if cache_dir and os.path.isdir(cache_dir):
        candidates = []
        for name in os.listdir(cache_dir):
            m = re.fullmatch(rf"primes_(\d+){re.escape(_CACHE_SUFFIX)}", name)
            if m and int(m.group(1)) >= limit:
                candidates.append(int(m.group(1)))
        if candidates:
            cached = load_cache(cache_path(cache_dir, min(candidates)))
            return shrink_table(cached, limit)
    table = sieve_upto(limit, segment_size)
    if cache_dir and write_cache:
        save_cache(table, cache_path(cache_dir, limit))
    return table
