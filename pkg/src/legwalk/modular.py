"""Exact modular arithmetic and the rational quadratic-residue machinery.

All functions are pure and operate on Python integers, so there is no size
restriction.  Values of the quadratic character are plain ints in
{-1, 0, +1}: +1 for a nonzero quadratic residue, -1 for a non-residue, 0
when the modulus divides the numerator.
"""


def gcd(a: int, b: int) -> int:
    """Greatest common divisor by the Euclidean algorithm; gcd(a, 0) == |a|."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m by binary square-and-multiply."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    result = 1
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        exp >>= 1
        if exp:
            base = base * base % m
    return result


def mod_inverse(a: int, p: int) -> int:
    """Inverse of a modulo a prime p, via extended Euclid."""
    a %= p
    if a == 0:
        raise ValueError(f"no inverse for 0 mod {p}")
    g, x, _ = egcd(a, p)
    if g != 1:
        raise ValueError(f"no inverse: gcd({a}, {p}) = {g}")
    return x % p


def legendre(a: int, p: int) -> int:
    """Quadratic character (a | p) for an odd prime p, by Euler's criterion.

    The top argument is reduced mod p first, so negative values are fine.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = mod_pow(a, (p - 1) // 2, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ValueError(f"{p} is not prime (Euler's criterion gave {r})")


def qr_set_bruteforce(p: int) -> set[int]:
    """All nonzero quadratic residues mod an odd prime p, by enumerating x**2.

    Independent of :func:`legendre`; used as its oracle.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return {x * x % p for x in range(1, p)}


def reciprocity_sign(p: int, q: int) -> int:
    """(-1)**(((p-1)/2)*((q-1)/2)) relating (q|p) and (p|q)."""
    if p == q:
        raise ValueError("reciprocity needs distinct primes")
    for m in (p, q):
        if m < 3 or m % 2 == 0:
            raise ValueError(f"{m} is not an odd prime")
    return -1 if ((p - 1) // 2) * ((q - 1) // 2) % 2 else 1
