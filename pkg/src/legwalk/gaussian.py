"""Gaussian integers: exact arithmetic, prime classification, norm-ordered
enumeration, and the quadratic character over Z[i].

A Gaussian prime falls in one of three classes: ramified (a unit times
1+i, norm 2), split (norm is a rational prime congruent to 1 mod 4), or
inert (a unit times a rational prime congruent to 3 mod 4).

For a split modulus pi = alpha + beta*i of norm p, reduction to Z/pZ goes
through the ring isomorphism sending a + b*i to a + alpha^(-1) * b * beta
(mod p); the character of k mod pi is then the rational character of that
residue.  For an inert modulus alpha the character of a + b*i is the
rational character of a^2 + b^2 mod alpha.
"""

import enum
import re as _re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, log, sqrt
from typing import NamedTuple

import numpy as np

from .kernels import legendre_batch
from .modular import legendre, mod_inverse
from .primes import APClass, PrimeTable, count_primes_ap, sieve_upto, totient


class GaussInt(NamedTuple):
    """A Gaussian integer re + im*i with exact integer arithmetic."""

    re: int
    im: int

    def __add__(self, other):
        other = _coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        other = _coerce(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __rmul__(self, other):
        return self * other

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        mag = abs(self.im)
        imtxt = "i" if mag == 1 else f"{mag}i"
        if self.re == 0:
            return imtxt if self.im > 0 else f"-{imtxt}"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{imtxt}"


def _coerce(value) -> GaussInt:
    if isinstance(value, GaussInt):
        return value
    if isinstance(value, int):
        return GaussInt(value, 0)
    raise TypeError(f"cannot mix GaussInt with {type(value).__name__}")


def parse_gauss(text: str) -> GaussInt:
    """Parse 'a+bi' notation: '3', '-2', 'i', '1+i', '2-3i', '9i', ..."""
    t = text.strip().replace(" ", "")
    m = _re.fullmatch(r"([+-]?\d+)([+-]\d*)i", t)
    if m:
        b = m.group(2)
        return GaussInt(int(m.group(1)), int(b) if len(b) > 1 else int(b + "1"))
    m = _re.fullmatch(r"([+-]?\d*)i", t)
    if m:
        b = m.group(1)
        return GaussInt(0, int(b + "1") if b in ("", "+", "-") else int(b))
    if _re.fullmatch(r"[+-]?\d+", t):
        return GaussInt(int(t), 0)
    raise ValueError(f"cannot parse Gaussian integer: {text!r}")


def mirror(z: GaussInt) -> GaussInt:
    """Swap real and imaginary parts: a+bi -> b+ai (= i * conjugate)."""
    return GaussInt(z.im, z.re)


def divides(d: GaussInt, z: GaussInt) -> bool:
    """True when d divides z exactly in Z[i]."""
    n = d.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    t = z * d.conjugate()
    return t.re % n == 0 and t.im % n == 0


def exact_div(z: GaussInt, d: GaussInt) -> GaussInt:
    """z / d when d divides z; raises otherwise."""
    n = d.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    t = z * d.conjugate()
    if t.re % n or t.im % n:
        raise ValueError(f"{d} does not divide {z}")
    return GaussInt(t.re // n, t.im // n)


class GaussKind(enum.Enum):
    RAMIFIED = "ramified"
    SPLIT = "split"
    INERT = "inert"


def _is_rational_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def classify_gaussian_prime(z: GaussInt) -> GaussKind | None:
    """The prime class of z, or None when z is not irreducible in Z[i]."""
    n = z.norm()
    if n == 2:
        return GaussKind.RAMIFIED
    if _is_rational_prime(n):
        # a sum of two squares is never 3 mod 4, so an odd prime norm splits
        return GaussKind.SPLIT
    if (z.re == 0) != (z.im == 0):
        p = abs(z.re or z.im)
        if p % 4 == 3 and _is_rational_prime(p):
            return GaussKind.INERT
    return None


def is_gaussian_prime(z: GaussInt) -> bool:
    return classify_gaussian_prime(z) is not None


def two_squares(p: int) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as a^2 + b^2 with a < b.

    Hermite-Serret: take x with x^2 = -1 (mod p), run the Euclidean
    algorithm on (p, x) until the remainder drops below sqrt(p), and read
    off the two sides.
    """
    if p % 4 != 1 or not _is_rational_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    x = pow(n, (p - 1) // 4, p)
    a, b = p, x
    bound = isqrt(p)
    while b > bound:
        a, b = b, a % b
    c = isqrt(p - b * b)
    if b * b + c * c != p:
        raise AssertionError(f"two-squares descent failed for {p}")
    return (b, c) if b < c else (c, b)


def split_pair(p: int) -> tuple[GaussInt, GaussInt]:
    """The two first-quadrant Gaussian primes of norm p, smaller real part
    first (the order they appear in the norm-sorted enumeration)."""
    a, b = two_squares(p)
    return GaussInt(a, b), GaussInt(b, a)


def enumerate_gaussian_primes(
    max_norm: int, table: PrimeTable | None = None
) -> list[GaussInt]:
    """First-quadrant Gaussian primes (re >= 1, im >= 0) with norm up to
    max_norm, sorted by norm and then by real part.

    Split norms contribute the pair a+bi, b+ai; inert rational primes p
    enter as p+0i with norm p^2; 1+i is first with norm 2.
    """
    if max_norm < 2:
        raise ValueError(f"max_norm must be at least 2, got {max_norm}")
    if table is None or table.limit <= max_norm:
        table = sieve_upto(max_norm + 1)
    entries: list[tuple[int, int, int]] = []
    for p in table.primes.tolist():
        if p > max_norm:
            break
        if p == 2:
            entries.append((2, 1, 1))
        elif p % 4 == 1:
            a, b = two_squares(p)
            entries.append((p, a, b))
            entries.append((p, b, a))
        elif p * p <= max_norm:
            entries.append((p * p, p, 0))
    entries.sort()
    return [GaussInt(a, b) for _, a, b in entries]


def count_gaussian_primes(table: PrimeTable, x: int) -> int:
    """Count of first-quadrant Gaussian primes with norm <= x:
    2*pi(x; 4, 1) + pi(isqrt(x); 4, 3) + 1 (the 1 counts 1+i)."""
    if x < 2:
        raise ValueError(f"count needs x >= 2, got {x}")
    split = count_primes_ap(table, x, APClass(4, 1))
    inert = count_primes_ap(table, isqrt(x), APClass(4, 3))
    return 2 * split + inert + 1


def gaussian_density_ratio(table: PrimeTable, x: int) -> float:
    """Gaussian prime count over its prime-number-theorem style estimate
    2x/(phi(4) ln x) + sqrt(x)/(phi(4) ln sqrt(x)); tends to 1."""
    if x < 4:
        raise ValueError(f"density ratio needs x >= 4, got {x}")
    phi4 = totient(4)
    estimate = 2 * x / (phi4 * log(x)) + sqrt(x) / (phi4 * log(sqrt(x)))
    return count_gaussian_primes(table, x) / estimate


def residue_map(k: GaussInt, pi: GaussInt) -> int:
    """The image of k in Z/pZ under the isomorphism Z[i]/(pi) = Z/pZ for a
    split modulus pi = alpha + beta*i of norm p:

        r = (a + alpha^(-1) * b * beta) mod p

    pi always divides k - r exactly.
    """
    if classify_gaussian_prime(pi) is not GaussKind.SPLIT:
        raise ValueError(f"residue map needs a split Gaussian prime, got {pi}")
    p = pi.norm()
    return (k.re + mod_inverse(pi.re, p) * k.im * pi.im) % p


class GLSymbol(int):
    """A Gaussian quadratic-character value.

    Behaves as a plain int in {-1, 0, +1} and remembers the numerator and
    modulus that produced it.  (``numerator`` shadows the read-only
    rational-protocol descriptor that plain ints carry.)
    """

    def __new__(cls, value: int, numerator: GaussInt, modulus: GaussInt):
        self = super().__new__(cls, int(value))
        self._numerator = numerator
        self._modulus = modulus
        return self

    @property
    def numerator(self) -> GaussInt:
        return self._numerator

    @property
    def modulus(self) -> GaussInt:
        return self._modulus

    def __repr__(self) -> str:
        return f"GLSymbol({int(self)}, [{self._numerator}/{self._modulus}])"


def gaussian_legendre(k: GaussInt, pi: GaussInt) -> GLSymbol:
    """The quadratic character of k modulo a split or inert Gaussian prime.

    Split pi of norm p: the rational character of residue_map(k, pi) mod p.
    Inert pi = unit * alpha: the rational character of norm(k) mod alpha.
    Value 0 exactly when pi divides k.  Ramified moduli are rejected.
    """
    kind = classify_gaussian_prime(pi)
    if kind is None:
        raise ValueError(f"{pi} is not a Gaussian prime")
    if kind is GaussKind.RAMIFIED:
        raise ValueError("1+i and its associates are not valid symbol moduli")
    if kind is GaussKind.INERT:
        alpha = abs(pi.re or pi.im)
        value = legendre(k.norm() % alpha, alpha)
    else:
        value = legendre(residue_map(k, pi), pi.norm())
    return GLSymbol(value, k, pi)


@lru_cache(maxsize=2048)
def _split_square_classes(pi: GaussInt) -> tuple[int, frozenset]:
    # image of i found by exhaustive divisibility search, not by inversion
    p = pi.norm()
    i_image = next(r for r in range(p) if divides(pi, GaussInt(-r, 1)))
    squares = frozenset(x * x % p for x in range(1, p))
    return i_image, squares


@lru_cache(maxsize=256)
def _inert_square_classes(alpha: int) -> frozenset:
    squares = set()
    for u in range(alpha):
        for v in range(alpha):
            w = GaussInt(u, v) * GaussInt(u, v)
            squares.add((w.re % alpha, w.im % alpha))
    return frozenset(squares)


def gls_bruteforce(k: GaussInt, pi: GaussInt) -> int:
    """Quadratic-character oracle by exhaustive square enumeration.

    Independent of :func:`gaussian_legendre`: no Euler criterion and no
    residue formula.  For a split modulus the set {x^2 mod p} is tabulated
    and k is reduced through the brute-forced image of i; for an inert
    modulus alpha all (u + v*i)^2 classes are tabulated.  Tables are cached
    per modulus, so sweeps over many numerators stay cheap.
    """
    kind = classify_gaussian_prime(pi)
    if kind is None:
        raise ValueError(f"{pi} is not a Gaussian prime")
    if divides(pi, k):
        return 0
    if kind is GaussKind.RAMIFIED:
        return 1  # Z[i]/(1+i) has two classes and 1 = 1^2
    if kind is GaussKind.INERT:
        alpha = abs(pi.re or pi.im)
        return 1 if (k.re % alpha, k.im % alpha) in _inert_square_classes(alpha) else -1
    p = pi.norm()
    i_image, squares = _split_square_classes(pi)
    return 1 if (k.re + i_image * k.im) % p in squares else -1


def odd_re_associate(z: GaussInt) -> GaussInt:
    """The unit multiple of a split prime with odd, positive real part.

    Symbol values with z in the numerator position change by unit factors
    when z is replaced by an associate, so identities that flip numerator
    and modulus are stated for these representatives.
    """
    if classify_gaussian_prime(z) is not GaussKind.SPLIT:
        raise ValueError(f"{z} is not a split Gaussian prime")
    if z.re % 2:
        return z if z.re > 0 else -z
    w = GaussInt(z.im, -z.re)  # -i * z
    return w if w.re > 0 else -w


def _require_first_quadrant_split(pi: GaussInt) -> int:
    if classify_gaussian_prime(pi) is not GaussKind.SPLIT:
        raise ValueError(f"{pi} is not a split Gaussian prime")
    if pi.re < 1 or pi.im < 1:
        raise ValueError(f"first-quadrant representative required, got {pi}")
    return pi.norm()


@dataclass(frozen=True)
class SplitIdentityReport:
    """Which of the three split-modulus symbol identities hold:

    - unit_i_ok: [i/pi] == (-1)**((p-1)/4)
    - one_plus_i_ok: [(1+i)/pi] == (-1)**(((alpha+beta)**2 - 1)/8) with
      alpha+beta read off the odd-real-part associate of pi
    - reciprocity_ok: [k/pi] == [pi/k] for the scanned numerators, with
      split operands taken by their odd-real-part associates

    The symbol itself only depends on the modulus ideal, but the sign
    formulas and the numerator side are representative-dependent; both
    identities hold exactly in the odd-real-part normal form (the parity
    the underlying derivation assumes), so the checks normalize first.
    """

    modulus: GaussInt
    unit_i_ok: bool
    one_plus_i_ok: bool
    reciprocity_ok: bool
    reciprocity_checked: int

    @property
    def all_ok(self) -> bool:
        return self.unit_i_ok and self.one_plus_i_ok and self.reciprocity_ok


def split_prime_identities(
    pi: GaussInt,
    reciprocity_bound: int = 200,
    table: PrimeTable | None = None,
) -> SplitIdentityReport:
    """Evaluate the three sign identities for a first-quadrant split prime.

    Reciprocity is checked against every split or inert first-quadrant
    prime of norm up to ``reciprocity_bound``.
    """
    p = _require_first_quadrant_split(pi)
    pin = odd_re_associate(pi)
    unit_i_ok = gaussian_legendre(GaussInt(0, 1), pi) == (-1) ** ((p - 1) // 4)
    s = pin.re + pin.im
    one_plus_i_ok = gaussian_legendre(GaussInt(1, 1), pi) == (-1) ** (
        (s * s - 1) // 8
    )
    reciprocity_ok = True
    checked = 0
    for k in enumerate_gaussian_primes(reciprocity_bound, table):
        kind = classify_gaussian_prime(k)
        if kind is GaussKind.RAMIFIED:
            continue
        kn = odd_re_associate(k) if kind is GaussKind.SPLIT else k
        checked += 1
        if gaussian_legendre(kn, pin) != gaussian_legendre(pin, kn):
            reciprocity_ok = False
    return SplitIdentityReport(pi, unit_i_ok, one_plus_i_ok, reciprocity_ok, checked)


@dataclass(frozen=True)
class QuartetRelations:
    """Product relations among the four symbols built from a split modulus
    pair pi, mirror(pi) and a split numerator pair k, mirror(k).

    With sign = (-1)**((p-1)/4) and rq = (q | p):
    - first_pair_ok:  [k/pi] * [mirror(k)/pi] == sign * rq
    - mirror_pair_ok: [k/mirror(pi)] * [mirror(k)/mirror(pi)] == sign * rq
    - cross_a_ok:     [k/pi] * [k/mirror(pi)] == rq
    - cross_b_ok:     [mirror(k)/pi] * [mirror(k)/mirror(pi)] == rq
    """

    modulus: GaussInt
    numerator: GaussInt
    first_pair_ok: bool
    mirror_pair_ok: bool
    cross_a_ok: bool
    cross_b_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.first_pair_ok
            and self.mirror_pair_ok
            and self.cross_a_ok
            and self.cross_b_ok
        )


def quartet_relations(pi: GaussInt, k: GaussInt) -> QuartetRelations:
    """Check the four product relations for split pi and split k, p != q."""
    p = _require_first_quadrant_split(pi)
    q = _require_first_quadrant_split(k)
    if p == q:
        raise ValueError("modulus and numerator norms must differ")
    pi2, k2 = mirror(pi), mirror(k)
    s1a = int(gaussian_legendre(k, pi))
    s1b = int(gaussian_legendre(k2, pi))
    s2a = int(gaussian_legendre(k, pi2))
    s2b = int(gaussian_legendre(k2, pi2))
    sign = (-1) ** ((p - 1) // 4)
    rq = legendre(q, p)
    return QuartetRelations(
        modulus=pi,
        numerator=k,
        first_pair_ok=s1a * s1b == sign * rq,
        mirror_pair_ok=s2a * s2b == sign * rq,
        cross_a_ok=s1a * s2a == rq,
        cross_b_ok=s1b * s2b == rq,
    )


def mirror_product_counterexamples(
    p_max: int, q_max: int, table: PrimeTable | None = None
) -> list[tuple[GaussInt, GaussInt, GaussInt]]:
    """Scan all split modulus pairs (pi, mirror(pi)) of norm p <= p_max and
    split numerators k of norm q <= q_max (q != p) for violations of

        [k/pi] * [k/mirror(pi)] == (q | p)

    Returns the violations as (pi, mirror(pi), k) triples; expected empty.
    """
    if p_max > 10_000 or q_max > 10_000:
        raise ValueError("scan bounds above 10^4 are not supported")
    hi = max(p_max, q_max)
    if table is None or table.limit <= hi:
        table = sieve_upto(hi + 1)
    split_norms = [
        int(p) for p in table.primes.tolist() if p % 4 == 1 and p <= hi
    ]
    reps = []
    for q in split_norms:
        if q <= q_max:
            c, d = two_squares(q)
            reps.append((c, d, q))
            reps.append((d, c, q))
    if not reps:
        return []
    a_arr = np.array([r[0] for r in reps], dtype=np.int64)
    b_arr = np.array([r[1] for r in reps], dtype=np.int64)
    q_arr = np.array([r[2] for r in reps], dtype=np.int64)
    violations = []
    for p in split_norms:
        if p > p_max:
            break
        alpha, beta = two_squares(p)
        pi1, pi2 = GaussInt(alpha, beta), GaussInt(beta, alpha)
        c1 = mod_inverse(alpha, p) * beta % p
        c2 = mod_inverse(beta, p) * alpha % p
        v1 = legendre_batch(a_arr + c1 * b_arr, p)
        v2 = legendre_batch(a_arr + c2 * b_arr, p)
        rq = legendre_batch(q_arr, p)
        bad = (q_arr != p) & (v1 * v2 != rq)
        for idx in np.flatnonzero(bad):
            violations.append((pi1, pi2, GaussInt(int(a_arr[idx]), int(b_arr[idx]))))
    return violations
