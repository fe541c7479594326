"""Brute-force verification suites for the character machinery.

Each check pits an implementation against an independent route (exhaustive
enumeration, exact divisibility, or a stated sign law) and reports what it
swept.  Failures are results, not exceptions: the caller decides what a red
check means.
"""

import random
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .gaussian import (
    GaussInt,
    GaussKind,
    classify_gaussian_prime,
    count_gaussian_primes,
    divides,
    enumerate_gaussian_primes,
    gaussian_legendre,
    gls_bruteforce,
    mirror,
    mirror_product_counterexamples,
    quartet_relations,
    residue_map,
    split_pair,
    split_prime_identities,
)
from .kernels import legendre_batch
from .modular import legendre, mod_inverse, mod_pow, qr_set_bruteforce, reciprocity_sign
from .primes import PrimeTable, sieve_upto

SUITES = ("modular", "gaussian", "relations", "conjecture", "all")
SCALES = ("quick", "full")

_BOUNDS = {
    "quick": {
        "euler_p": 500,
        "mult_p": 100,
        "supplement_p": 1000,
        "reciprocity_p": 100,
        "inverse_p": 200,
        "symbol_modulus_norm": 500,
        "symbol_numerator_norm": 300,
        "count_x": 10_000,
        "residue_modulus_norm": 500,
        "identity_norm": 1000,
        "identity_recip_bound": 100,
        "quartet_p": 200,
        "quartet_q": 1000,
        "mechanics_p": (13, 29),
        "mechanics_q": 1000,
        "mirror_p": 100,
        "mirror_q": 1000,
    },
    "full": {
        "euler_p": 10_000,
        "mult_p": 500,
        "supplement_p": 10_000,
        "reciprocity_p": 500,
        "inverse_p": 1000,
        "symbol_modulus_norm": 2000,
        "symbol_numerator_norm": 1000,
        "count_x": 100_000,
        "residue_modulus_norm": 1000,
        "identity_norm": 10_000,
        "identity_recip_bound": 300,
        "quartet_p": 1000,
        "quartet_q": 10_000,
        "mechanics_p": (13, 17, 29, 37, 41, 97),
        "mechanics_q": 10_000,
        "mirror_p": 1000,
        "mirror_q": 10_000,
    },
}

_MAX_FAILURES = 10


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures],
        }


def all_passed(results) -> bool:
    return all(r.passed for r in results)


def _result(suite, name, checked, failures) -> CheckResult:
    return CheckResult(suite, name, not failures, checked, failures[:_MAX_FAILURES])


def _odd_primes_upto(table: PrimeTable, n: int) -> list[int]:
    return [int(p) for p in table.primes[table.primes <= n].tolist() if p > 2]


def _lattice_disk(max_norm: int) -> list[GaussInt]:
    """All nonzero Gaussian integers with norm up to max_norm."""
    r = isqrt(max_norm)
    out = []
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if (a or b) and a * a + b * b <= max_norm:
                out.append(GaussInt(a, b))
    return out


def _split_reps(table: PrimeTable, max_norm: int) -> list[GaussInt]:
    reps = []
    for p in table.primes[table.primes <= max_norm].tolist():
        if p % 4 == 1:
            reps.extend(split_pair(int(p)))
    return reps


def _inert_reps(max_norm: int) -> list[GaussInt]:
    return [
        GaussInt(a, 0)
        for a in range(3, isqrt(max_norm) + 1, 4)
        if classify_gaussian_prime(GaussInt(a, 0)) is GaussKind.INERT
    ]


# --- modular suite ---

def _check_euler_vs_enumeration(table, bound):
    failures = []
    checked = 0
    for p in _odd_primes_upto(table, bound):
        residues = qr_set_bruteforce(p)
        member = np.zeros(p, dtype=bool)
        member[list(residues)] = True
        expected = np.where(member, 1, -1).astype(np.int8)
        expected[0] = 0
        got = legendre_batch(np.arange(p, dtype=np.int64), p)
        checked += p
        for a in np.flatnonzero(got != expected):
            failures.append((int(a), p, int(got[a]), int(expected[a])))
    return _result("modular", "euler_criterion_vs_square_enumeration", checked, failures)


def _check_multiplicativity(table, bound):
    failures = []
    checked = 0
    for p in _odd_primes_upto(table, bound):
        vals = legendre_batch(np.arange(p, dtype=np.int64), p).astype(np.int16)
        prod_idx = np.outer(np.arange(p), np.arange(p)) % p
        lhs = np.outer(vals, vals)
        rhs = vals[prod_idx]
        checked += p * p
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)
            failures.extend((p, int(a), int(b)) for a, b in bad[:3])
    return _result("modular", "top_argument_multiplicativity", checked, failures)


def _check_periodicity(table, bound):
    failures = []
    checked = 0
    for p in _odd_primes_upto(table, bound):
        a = np.arange(p, dtype=np.int64)
        checked += p
        if not np.array_equal(legendre_batch(a, p), legendre_batch(a + p, p)):
            failures.append(p)
    return _result("modular", "top_argument_periodicity", checked, failures)


def _check_supplements(table, bound):
    failures = []
    checked = 0
    for p in _odd_primes_upto(table, bound):
        checked += 2
        if legendre(-1, p) != (-1) ** ((p - 1) // 2):
            failures.append(("-1", p))
        if legendre(2, p) != (-1) ** ((p * p - 1) // 8):
            failures.append(("2", p))
    return _result("modular", "reciprocity_supplements", checked, failures)


def _check_reciprocity(table, bound):
    failures = []
    checked = 0
    ps = _odd_primes_upto(table, bound)
    for p in ps:
        for q in ps:
            if p == q:
                continue
            checked += 1
            if legendre(q, p) != reciprocity_sign(p, q) * legendre(p, q):
                failures.append((p, q))
    return _result("modular", "quadratic_reciprocity", checked, failures)


def _check_mod_inverse(table, bound):
    failures = []
    checked = 0
    for p in _odd_primes_upto(table, bound):
        for a in range(1, p):
            checked += 1
            if a * mod_inverse(a, p) % p != 1:
                failures.append((a, p))
    return _result("modular", "modular_inverse", checked, failures)


def _check_mod_pow(table, bound):
    failures = []
    checked = 0
    for m in range(2, 40):
        for base in range(0, 20):
            for exp in range(0, 20):
                checked += 1
                if mod_pow(base, exp, m) != pow(base, exp, m):
                    failures.append((base, exp, m))
    return _result("modular", "square_and_multiply_vs_builtin", checked, failures)


# --- gaussian suite ---

def _check_symbol_oracle(table, bounds):
    failures = []
    checked = 0
    moduli = _split_reps(table, bounds["symbol_modulus_norm"]) + _inert_reps(
        bounds["symbol_modulus_norm"]
    )
    numerators = _lattice_disk(bounds["symbol_numerator_norm"])
    for pi in moduli:
        for k in numerators:
            checked += 1
            if int(gaussian_legendre(k, pi)) != gls_bruteforce(k, pi):
                failures.append((str(k), str(pi)))
    return _result("gaussian", "symbol_vs_square_enumeration", checked, failures)


def _check_count_formula(table, bounds):
    failures = []
    x_max = bounds["count_x"]
    primes_list = enumerate_gaussian_primes(x_max, table)
    norms = np.array([g.norm() for g in primes_list], dtype=np.int64)
    for x in range(2, x_max + 1):
        expected = int(np.searchsorted(norms, x, side="right"))
        if count_gaussian_primes(table, x) != expected:
            failures.append(x)
    return _result("gaussian", "count_formula_vs_enumeration", x_max - 1, failures)


def _check_residue_map(table, bounds):
    failures = []
    checked = 0
    grid = [GaussInt(a, b) for a in range(-7, 8) for b in range(-7, 8)]
    for pi in _split_reps(table, bounds["residue_modulus_norm"]):
        for k in grid:
            checked += 1
            r = residue_map(k, pi)
            if not divides(pi, k - GaussInt(r, 0)):
                failures.append((str(k), str(pi), r))
    return _result("gaussian", "residue_map_divisibility", checked, failures)


def _check_norm_multiplicativity(table, bounds):
    rng = random.Random(20160325)
    failures = []
    checked = 0
    for _ in range(2000):
        z = GaussInt(rng.randint(-500, 500), rng.randint(-500, 500))
        w = GaussInt(rng.randint(-500, 500), rng.randint(-500, 500))
        checked += 1
        if (z * w).norm() != z.norm() * w.norm():
            failures.append((str(z), str(w)))
    return _result("gaussian", "norm_multiplicativity", checked, failures)


def _check_symbol_multiplicativity(table, bounds):
    failures = []
    checked = 0
    moduli = _split_reps(table, 300) + _inert_reps(300)
    small = _lattice_disk(60)
    for pi in moduli:
        vals = {}
        for k in small:
            vals[k] = int(gaussian_legendre(k, pi))
        for k in small[::7]:
            if vals[k] == 0:
                continue
            for l in small[::11]:
                if vals[l] == 0:
                    continue
                checked += 1
                if int(gaussian_legendre(k * l, pi)) != vals[k] * vals[l]:
                    failures.append((str(k), str(l), str(pi)))
    return _result("gaussian", "symbol_multiplicativity", checked, failures)


def _check_symbol_periodicity(table, bounds):
    rng = random.Random(97)
    failures = []
    checked = 0
    moduli = _split_reps(table, 300) + _inert_reps(300)
    for pi in moduli:
        for _ in range(40):
            k = GaussInt(rng.randint(-40, 40), rng.randint(-40, 40))
            mult = GaussInt(rng.randint(-5, 5), rng.randint(-5, 5))
            checked += 1
            if int(gaussian_legendre(k + mult * pi, pi)) != int(
                gaussian_legendre(k, pi)
            ):
                failures.append((str(k), str(pi)))
    return _result("gaussian", "symbol_periodicity", checked, failures)


def _check_eightfold_symmetry(table, bounds):
    failures = []
    checked = 0
    units = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))
    for g in enumerate_gaussian_primes(bounds["identity_norm"], table):
        for u in units:
            for image in (u * g, u * g.conjugate()):
                checked += 1
                if classify_gaussian_prime(image) is None:
                    failures.append(str(image))
    return _result("gaussian", "eightfold_symmetry", checked, failures)


def _check_split_identities(table, bounds):
    failures = []
    checked = 0
    for p in table.primes[table.primes <= bounds["identity_norm"]].tolist():
        if p % 4 != 1:
            continue
        for pi in split_pair(int(p)):
            checked += 3
            report = split_prime_identities(
                pi, reciprocity_bound=bounds["identity_recip_bound"], table=table
            )
            if not report.all_ok:
                failures.append((str(pi), report))
    return _result("gaussian", "split_modulus_sign_identities", checked, failures)


# --- relations suite ---

def _check_quartets(table, bounds):
    failures = []
    checked = 0
    p_norms = [
        int(p)
        for p in table.primes[table.primes <= bounds["quartet_p"]].tolist()
        if p % 4 == 1
    ]
    q_norms = [
        int(q)
        for q in table.primes[table.primes <= bounds["quartet_q"]].tolist()
        if q % 4 == 1
    ]
    for p in p_norms:
        pi = split_pair(p)[0]
        for q in q_norms:
            if q == p:
                continue
            k = split_pair(q)[0]
            checked += 4
            rel = quartet_relations(pi, k)
            if not rel.all_ok:
                failures.append((str(pi), str(k), rel))
    return _result("relations", "symbol_quartet_products", checked, failures)


def _check_sign_mechanics(table, bounds):
    failures = []
    checked = 0
    q_norms = [
        int(q)
        for q in table.primes[table.primes <= bounds["mechanics_q"]].tolist()
        if q % 4 == 1
    ]
    for p in bounds["mechanics_p"]:
        pi1 = split_pair(p)[0]
        pi2 = mirror(pi1)
        sign = (-1) ** ((p - 1) // 4)
        for q in q_norms:
            if q == p:
                continue
            k = split_pair(q)[0]
            k2 = mirror(k)
            c1 = int(gaussian_legendre(k, pi1)) + int(gaussian_legendre(k2, pi1))
            c2 = int(gaussian_legendre(k, pi2)) + int(gaussian_legendre(k2, pi2))
            rq = legendre(q, p)
            checked += 1
            if sign == 1 and rq == 1:
                ok = c1 == c2 and abs(c1) == 2
            elif sign == -1 and rq == -1:
                ok = c1 == -c2 and abs(c1) == 2
            else:
                ok = c1 == 0 and c2 == 0
            if not ok:
                failures.append((p, q, c1, c2))
    return _result("relations", "paired_step_mechanics", checked, failures)


# --- conjecture suite ---

def _check_mirror_products(table, bounds):
    violations = mirror_product_counterexamples(
        bounds["mirror_p"], bounds["mirror_q"], table
    )
    p_count = sum(
        1
        for p in table.primes[table.primes <= bounds["mirror_p"]].tolist()
        if p % 4 == 1
    )
    q_count = sum(
        2
        for q in table.primes[table.primes <= bounds["mirror_q"]].tolist()
        if q % 4 == 1
    )
    failures = [(str(a), str(b), str(k)) for a, b, k in violations]
    return _result(
        "conjecture", "mirror_modulus_product_rule", p_count * q_count, failures
    )


def run_suite(
    suite: str,
    scale: str = "quick",
    table: PrimeTable | None = None,
    progress=None,
) -> list[CheckResult]:
    """Run one verification suite (or all) and return per-check results."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; expected one of {SCALES}")
    bounds = _BOUNDS[scale]
    need = max(
        bounds["euler_p"],
        bounds["supplement_p"],
        bounds["symbol_modulus_norm"],
        bounds["count_x"],
        bounds["identity_norm"],
        bounds["quartet_q"],
        bounds["mechanics_q"],
        bounds["mirror_q"],
    )
    if table is None or table.limit <= need:
        table = sieve_upto(need + 1)
    plan = []
    if suite in ("modular", "all"):
        plan += [
            lambda: _check_euler_vs_enumeration(table, bounds["euler_p"]),
            lambda: _check_multiplicativity(table, bounds["mult_p"]),
            lambda: _check_periodicity(table, bounds["mult_p"]),
            lambda: _check_supplements(table, bounds["supplement_p"]),
            lambda: _check_reciprocity(table, bounds["reciprocity_p"]),
            lambda: _check_mod_inverse(table, bounds["inverse_p"]),
            lambda: _check_mod_pow(table, bounds),
        ]
    if suite in ("gaussian", "all"):
        plan += [
            lambda: _check_symbol_oracle(table, bounds),
            lambda: _check_count_formula(table, bounds),
            lambda: _check_residue_map(table, bounds),
            lambda: _check_norm_multiplicativity(table, bounds),
            lambda: _check_symbol_multiplicativity(table, bounds),
            lambda: _check_symbol_periodicity(table, bounds),
            lambda: _check_eightfold_symmetry(table, bounds),
            lambda: _check_split_identities(table, bounds),
        ]
    if suite in ("relations", "all"):
        plan += [
            lambda: _check_quartets(table, bounds),
            lambda: _check_sign_mechanics(table, bounds),
        ]
    if suite in ("conjecture", "all"):
        plan += [lambda: _check_mirror_products(table, bounds)]
    results = []
    for job in plan:
        result = job()
        results.append(result)
        if progress is not None:
            state = "ok" if result.passed else "FAIL"
            progress(
                f"[{result.suite}] {result.name}: {state} "
                f"({result.checked} checks)"
            )
    return results
