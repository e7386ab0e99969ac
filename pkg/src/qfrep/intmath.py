"""Exact integer primitives: factoring, Kronecker symbols, modular roots."""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional, Tuple

from .errors import FactorizationIncomplete, InvalidDiscriminant, InvalidInput

TRIAL_LIMIT = 10**6
RHO_SEEDS = 16
RHO_ITERATIONS = 1 << 20

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


_PRIMES = None


def _primes():
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _small_primes(TRIAL_LIMIT)
    return _PRIMES


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, u, v) with a*u + b*v == g == gcd(a, b) >= 0."""
    u0, u1, v0, v1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    def primes(self):
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.factors)


def _rho(n: int, c: int) -> Optional[int]:
    # Brent's variant with batched gcds.
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > RHO_ITERATIONS:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, value: int, out: dict):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, value, out)
        _split(r, value, out)
        return
    for c in range(1, RHO_SEEDS + 1):
        d = _rho(n, c)
        if d:
            _split(d, value, out)
            _split(n // d, value, out)
            return
    raise FactorizationIncomplete(value, n)


def factor(m: int) -> Factorization:
    """Factor m >= 1: trial division below 10**6, then Pollard rho."""
    if m < 1:
        raise InvalidInput(f"cannot factor {m}")
    found = {}
    n = m
    for p in _primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(n):
            found[n] = found.get(n, 0) + 1
        else:
            _split(n, m, found)
    return Factorization(m, tuple(sorted(found.items())))


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise InvalidInput(f"kronecker symbol needs n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D/n) for odd n.
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Smallest r >= 0 with r*r == a (mod p), or None; p an odd prime.

    Tonelli-Shanks with the smallest quadratic non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def is_cubic_residue(a: int, p: int) -> bool:
    if p % 3 != 1 or not is_prime(p):
        raise InvalidInput(f"cubic residue test needs a prime p = 1 mod 3, got {p}")
    if a % p == 0:
        raise InvalidInput(f"{p} divides {a}")
    return pow(a, (p - 1) // 3, p) == 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(abs(n)))


def is_fundamental(d: int) -> bool:
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        k = d // 4
        return k % 4 in (2, 3) and is_squarefree(k)
    return False


def valid_discriminant(D: int) -> bool:
    return D < 0 and D % 4 in (0, 1)


def fundamental_discriminant(D: int) -> Tuple[int, int]:
    """Split a negative discriminant as D == f*f*d_K."""
    if not valid_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a negative integer = 0, 1 mod 4")
    f = 1
    for p, e in factor(-D):
        f *= p ** (e // 2)
    d = D // (f * f)
    if d % 4 in (2, 3):
        f //= 2
        d *= 4
    return d, f
