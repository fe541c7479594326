"""Quadratic-character walks over rational and Gaussian primes, and the
statistics reported on them: residue ratios, consecutive-run frequencies,
race tallies, the logarithmic lead measure, averaged ratio curves, and
paired-walk correlation.

A walk fixes a modulus and steps through an ordered prime sequence; each
step is the character value in {-1, 0, +1} and the walk height is the
cumulative sum S(t) with S(0) = 0.  Zero steps (numerator divisible by the
modulus) stay in the series so t-indexing matches the prime sequence, but
they are excluded from every ratio denominator.
"""

from dataclasses import dataclass
from math import gcd, log, sqrt
from typing import NamedTuple

import numpy as np

from .gaussian import (
    GaussInt,
    GaussKind,
    _is_rational_prime,
    classify_gaussian_prime,
    enumerate_gaussian_primes,
)
from .kernels import lead_measure, legendre_batch, legendre_fixed_top
from .modular import mod_inverse
from .primes import PrimeTable, sieve_upto

FILTERS = ("all", "1mod4", "3mod4")
DIRECTIONS = ("qp", "pq")
STATISTICS = ("qr", "run2", "run3", "run4")


class SymbolStep(NamedTuple):
    value: int
    source: object
    index: int


class WalkSeries:
    """Ordered character steps plus cumulative sums; immutable once built."""

    __slots__ = ("values", "sources", "meta", "sums")

    def __init__(self, values, sources, meta: dict):
        vals = np.asarray(values, dtype=np.int8)
        vals.setflags(write=False)
        self.values = vals
        self.sources = sources
        self.meta = meta
        sums = np.concatenate(
            ([0], np.cumsum(vals, dtype=np.int64))
        )
        sums.setflags(write=False)
        self.sums = sums

    def __len__(self) -> int:
        return int(self.values.size)

    def step(self, t: int) -> SymbolStep:
        """The t-th step, 1-based."""
        if not 1 <= t <= len(self):
            raise IndexError(f"step index {t} outside [1, {len(self)}]")
        source = self.sources[t - 1]
        if isinstance(source, np.integer):
            source = int(source)
        return SymbolStep(int(self.values[t - 1]), source, t)

    def steps(self):
        for t in range(1, len(self) + 1):
            yield self.step(t)

    def __repr__(self) -> str:
        return f"WalkSeries(steps={len(self)}, meta={self.meta})"


def rational_walk(
    p: int,
    q_limit: int,
    *,
    filter: str = "all",
    direction: str = "qp",
    table: PrimeTable | None = None,
) -> WalkSeries:
    """Character walk for a fixed odd prime p with q running over the primes
    in [3, q_limit), optionally restricted to a residue class mod 4.

    Direction "qp" steps with (q | p), "pq" with (p | q); the step is 0
    exactly at q == p.
    """
    if p < 3 or p % 2 == 0 or not _is_rational_prime(p):
        raise ValueError(f"walk modulus must be an odd prime, got {p}")
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {FILTERS}, got {filter!r}")
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    if table is None or table.limit < q_limit:
        table = sieve_upto(q_limit)
    lo = np.searchsorted(table.primes, 3, side="left")
    hi = np.searchsorted(table.primes, q_limit, side="left")
    qs = table.primes[lo:hi]
    if filter == "1mod4":
        qs = qs[qs % 4 == 1]
    elif filter == "3mod4":
        qs = qs[qs % 4 == 3]
    if direction == "qp":
        values = legendre_batch(qs, p)
    else:
        values = legendre_fixed_top(p, qs)
    meta = {
        "kind": "rational",
        "p": p,
        "q_limit": q_limit,
        "filter": filter,
        "direction": direction,
    }
    return WalkSeries(values, qs, meta)


def gaussian_walk(
    pi: GaussInt,
    max_norm: int,
    *,
    include_ramified: bool = True,
    table: PrimeTable | None = None,
) -> WalkSeries:
    """Character walk for a fixed split or inert Gaussian prime modulus with
    the numerator running over the norm-sorted first-quadrant enumeration.

    1+i is part of the enumeration by default; pass include_ramified=False
    to drop it.
    """
    kind = classify_gaussian_prime(pi)
    if kind is None:
        raise ValueError(f"{pi} is not a Gaussian prime")
    if kind is GaussKind.RAMIFIED:
        raise ValueError("1+i and its associates are not valid walk moduli")
    ks = enumerate_gaussian_primes(max_norm, table)
    if not include_ramified:
        ks = [k for k in ks if k.norm() != 2]
    a = np.array([k.re for k in ks], dtype=np.int64)
    b = np.array([k.im for k in ks], dtype=np.int64)
    if kind is GaussKind.INERT:
        alpha = abs(pi.re or pi.im)
        values = legendre_batch(a * a + b * b, alpha)
    else:
        p = pi.norm()
        c = mod_inverse(pi.re, p) * pi.im % p
        values = legendre_batch(a + c * b, p)
    meta = {
        "kind": "gaussian",
        "pi": str(pi),
        "max_norm": max_norm,
        "include_ramified": include_ramified,
    }
    return WalkSeries(values, tuple(ks), meta)


def qr_ratio(walk: WalkSeries, upto: int | None = None) -> float:
    """Fraction of +1 steps among the nonzero steps of the walk prefix."""
    vals = walk.values if upto is None else walk.values[:upto]
    nonzero = int(np.count_nonzero(vals))
    if nonzero == 0:
        raise ValueError("ratio undefined: no nonzero steps in range")
    return int((vals == 1).sum()) / nonzero


def consecutive_run_ratio(walk: WalkSeries, n: int) -> float:
    """Fraction of length-n sliding windows of the zero-free step sequence
    whose values all agree.  Independent signs would give 2**-(n-1)."""
    if n < 2:
        raise ValueError(f"run length must be at least 2, got {n}")
    z = walk.values[walk.values != 0]
    if z.size < n:
        raise ValueError(f"need at least {n} nonzero steps, have {z.size}")
    win = n - 1
    eq = z[1:] == z[:-1]
    cs = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
    full = cs[win:] - cs[:-win] == win
    return int(full.sum()) / (z.size - n + 1)


@dataclass(frozen=True)
class RatioCurve:
    """Per-checkpoint mean and population spread of a walk statistic across
    a set of moduli."""

    checkpoints: tuple[int, ...]
    mean: tuple[float, ...]
    stdev: tuple[float, ...]
    n: tuple[int, ...]
    p_set: tuple[int, ...]
    statistic: str
    filter: str
    skipped: int


def _prefix_statistic(values: np.ndarray, statistic: str) -> tuple:
    """Cumulative machinery so a statistic can be read off at any prefix."""
    cum_nz = np.cumsum(values != 0, dtype=np.int64)
    if statistic == "qr":
        cum_plus = np.cumsum(values == 1, dtype=np.int64)
        return ("qr", cum_nz, cum_plus)
    n = int(statistic[3:])
    z = values[values != 0]
    win = n - 1
    if z.size > win:
        eq = z[1:] == z[:-1]
        cs = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        wins = (cs[win:] - cs[:-win] == win).astype(np.int64)
        cum_wins = np.cumsum(wins)
    else:
        cum_wins = np.zeros(0, dtype=np.int64)
    return ("run", cum_nz, cum_wins, n)


def _statistic_at(machinery: tuple, prefix_len: int) -> float | None:
    if prefix_len <= 0:
        return None
    if machinery[0] == "qr":
        _, cum_nz, cum_plus = machinery
        nz = int(cum_nz[prefix_len - 1])
        if nz == 0:
            return None
        return int(cum_plus[prefix_len - 1]) / nz
    _, cum_nz, cum_wins, n = machinery
    zn = int(cum_nz[prefix_len - 1])
    if zn < n:
        return None
    windows = zn - n + 1
    return int(cum_wins[windows - 1]) / windows


def average_ratio_curve(
    p_set,
    checkpoints,
    *,
    filter: str = "all",
    statistic: str = "qr",
    direction: str = "qp",
    table: PrimeTable | None = None,
) -> RatioCurve:
    """Mean and population standard deviation of a walk statistic across the
    moduli in p_set, read at each checkpoint q-limit.

    Walks whose statistic is undefined at a checkpoint (no nonzero steps
    yet, or too few for the run window) are skipped there and counted in
    ``skipped``.
    """
    p_set = tuple(int(p) for p in p_set)
    checkpoints = tuple(int(c) for c in checkpoints)
    if not p_set:
        raise ValueError("p_set must be nonempty")
    if list(checkpoints) != sorted(checkpoints) or len(set(checkpoints)) != len(
        checkpoints
    ):
        raise ValueError("checkpoints must be strictly increasing")
    if statistic not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}, got {statistic!r}")
    q_max = checkpoints[-1]
    if table is None or table.limit < q_max:
        table = sieve_upto(q_max)
    per_checkpoint: list[list[float]] = [[] for _ in checkpoints]
    skipped = 0
    for p in p_set:
        walk = rational_walk(
            p, q_max, filter=filter, direction=direction, table=table
        )
        machinery = _prefix_statistic(walk.values, statistic)
        for i, cp in enumerate(checkpoints):
            prefix = int(np.searchsorted(walk.sources, cp, side="left"))
            value = _statistic_at(machinery, prefix)
            if value is None:
                skipped += 1
            else:
                per_checkpoint[i].append(value)
    means, stds, ns = [], [], []
    for bucket in per_checkpoint:
        arr = np.asarray(bucket, dtype=np.float64)
        ns.append(arr.size)
        means.append(float(arr.mean()) if arr.size else float("nan"))
        stds.append(float(arr.std()) if arr.size else float("nan"))
    return RatioCurve(
        checkpoints=checkpoints,
        mean=tuple(means),
        stdev=tuple(stds),
        n=tuple(ns),
        p_set=p_set,
        statistic=statistic,
        filter=filter,
        skipped=skipped,
    )


@dataclass(frozen=True)
class RaceTable:
    """Counts of primes per coprime residue class at each grid point."""

    modulus: int
    grid: tuple[int, ...]
    residues: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]  # aligned with grid; one count per residue


def race_tally(table: PrimeTable, m: int, x_grid) -> RaceTable:
    """Tally the prime race mod m over the given grid of x values."""
    if m < 2:
        raise ValueError(f"race modulus must be >= 2, got {m}")
    grid = tuple(int(x) for x in x_grid)
    for x in grid:
        if x >= table.limit:
            raise ValueError(f"grid point {x} out of range for table limit {table.limit}")
    residues = tuple(r for r in range(m) if gcd(r, m) == 1)
    grid_arr = np.asarray(grid, dtype=np.int64)
    columns = []
    for r in residues:
        in_class = table.primes[table.primes % m == r]
        columns.append(np.searchsorted(in_class, grid_arr, side="right"))
    rows = tuple(
        tuple(int(col[i]) for col in columns) for i in range(len(grid))
    )
    return RaceTable(modulus=m, grid=grid, residues=residues, rows=rows)


def logarithmic_measure(
    table: PrimeTable, m: int, leader: int, laggard: int, x_max: int
) -> float:
    """The scaled lead measure (1/ln X) * sum of 1/x over the integers
    2 <= x <= X at which the leader's tally is at least the laggard's.

    Ties count toward the leader; an x where the laggard is strictly ahead
    contributes nothing.
    """
    if x_max < 2:
        raise ValueError(f"measure needs X >= 2, got {x_max}")
    if x_max >= table.limit:
        raise ValueError(f"X={x_max} out of range for table limit {table.limit}")
    for r in (leader, laggard):
        if not 0 <= r < m or gcd(r, m) != 1:
            raise ValueError(f"residue {r} is not coprime to {m}")
    if leader == laggard:
        raise ValueError("leader and laggard must differ")
    lead = table.primes[table.primes % m == leader]
    lag = table.primes[table.primes % m == laggard]
    return lead_measure(lead, lag, x_max) / log(x_max)


def pearson_correlation(w1: WalkSeries, w2: WalkSeries) -> float:
    """Pearson coefficient of the two walks' cumulative-sum sequences."""
    if len(w1) != len(w2) or len(w1) < 2:
        raise ValueError("walks must have equal length >= 2")
    s1 = w1.sums[1:].astype(np.float64)
    s2 = w2.sums[1:].astype(np.float64)
    d1 = s1 - s1.mean()
    d2 = s2 - s2.mean()
    denom = sqrt(float((d1 * d1).sum()) * float((d2 * d2).sum()))
    if denom == 0.0:
        raise ValueError("correlation undefined: a walk has zero variance")
    return float((d1 * d2).sum()) / denom


def walk_stats(walk: WalkSeries) -> dict:
    """Summary numbers for reports: counts, final height, excursion scale."""
    vals = walk.values
    n = len(walk)
    stats = {
        "steps": n,
        "plus_steps": int((vals == 1).sum()),
        "minus_steps": int((vals == -1).sum()),
        "zero_steps": int((vals == 0).sum()),
        "final_sum": int(walk.sums[-1]) if n else 0,
    }
    nonzero = stats["plus_steps"] + stats["minus_steps"]
    stats["qr_ratio"] = stats["plus_steps"] / nonzero if nonzero else None
    if n:
        t = np.arange(1, n + 1, dtype=np.float64)
        stats["max_excursion"] = float(
            np.max(np.abs(walk.sums[1:]) / np.sqrt(t))
        )
    else:
        stats["max_excursion"] = 0.0
    return stats
