"""Orders of imaginary quadratic fields and their fractional ideals.

The order of discriminant D is Z + Z*w with w = (D + sqrt(D))/2, so that
w^2 = D*w - (D^2 - D)/4.  Field elements are pairs (x0, x1) meaning
x0 + x1*w, with Fraction or int entries.

Every fractional ideal is stored in the canonical shape

    scale * <a, (-b + sqrt(D))/2>_Z,   a > 0,  -a < b <= a,  b^2 = D mod 4a

and all arithmetic goes through the Hermite normal form of a generating
set, so products, extensions and contractions share one code path.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Tuple

from .errors import (
    ConductorPrime,
    ContextMismatch,
    InvalidInput,
    NotIntegral,
    NotNested,
    NotProper,
)
from .forms import QuadForm, check_form
from .intmath import (
    Factorization,
    factor,
    fundamental_discriminant,
    kronecker,
    sqrt_mod,
    xgcd,
)


@dataclass(frozen=True, repr=False)
class DiscContext:
    D: int
    d_K: int
    f: int
    f_factors: Factorization

    def __str__(self):
        return f"D={self.D}"

    def __repr__(self):
        return f"DiscContext(D={self.D}, d_K={self.d_K}, f={self.f})"

    def conductor_primes(self) -> List[int]:
        return self.f_factors.primes()

    def with_conductor(self, f: int) -> "DiscContext":
        return disc_context(f * f * self.d_K)

    def mul(self, x, y):
        """Product of two field elements in this order's basis."""
        D = self.D
        x0, x1 = x
        y0, y1 = y
        return (x0 * y0 - x1 * y1 * ((D * D - D) // 4), x0 * y1 + x1 * y0 + D * x1 * y1)

    def conj(self, x):
        # conjugate of w is D - w
        x0, x1 = x
        return (x0 + self.D * x1, -x1)


@lru_cache(maxsize=None)
def disc_context(D: int) -> DiscContext:
    d_K, f = fundamental_discriminant(D)
    return DiscContext(D, d_K, f, factor(f))


def _hnf(vectors) -> Tuple[int, int, int]:
    """Integer HNF (A, B, C) of a full-rank lattice in Z^2.

    The lattice is Z*(A, 0) + Z*(B, C) with A, C > 0 and 0 <= B < A.
    """
    A = B = C = 0
    for u, v in vectors:
        if v == 0 and C == 0:
            A = gcd(A, u)
            continue
        g, s, t = xgcd(C, v)
        kernel = (v // g) * B - (C // g) * u
        B, C = s * B + t * u, g
        A = gcd(A, kernel)
    if A == 0 or C == 0:
        raise InvalidInput("generators do not span a full-rank lattice")
    return A, B % A, C


@dataclass(frozen=True, repr=False)
class OrderIdeal:
    ctx: DiscContext
    scale: Fraction
    a: int
    b: int

    def __post_init__(self):
        D, a, b = self.ctx.D, self.a, self.b
        if a <= 0 or not (-a < b <= a):
            raise InvalidInput(f"ideal data a={a}, b={b} not in canonical range")
        if (b * b - D) % (4 * a):
            raise InvalidInput(f"b^2 = {b * b} is not D = {D} mod 4a = {4 * a}")
        if self.scale <= 0:
            raise InvalidInput("scale must be positive")
        object.__setattr__(self, "scale", Fraction(self.scale))

    @classmethod
    def create(cls, ctx: DiscContext, scale, a: int, b: int) -> "OrderIdeal":
        """Build an ideal, moving b into (-a, a] first."""
        if a <= 0:
            raise InvalidInput(f"a must be positive, got {a}")
        b = b % (2 * a)
        if b > a:
            b -= 2 * a
        return cls(ctx, Fraction(scale), a, b)

    def __str__(self):
        return format_ideal(self)

    def __repr__(self):
        return f"OrderIdeal({format_ideal(self)})"

    @property
    def c(self) -> int:
        return (self.b * self.b - self.ctx.D) // (4 * self.a)

    def basis(self):
        s, D = self.scale, self.ctx.D
        return (s * self.a, Fraction(0)), (s * (-(D + self.b) // 2), s)

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.a

    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def is_proper(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def form(self) -> QuadForm:
        return QuadForm(self.a, self.b, self.c)

    def contains(self, x) -> bool:
        (A, _), (B, C) = self.basis()
        x0, x1 = Fraction(x[0]), Fraction(x[1])
        n = x1 / C
        if n.denominator != 1:
            return False
        return ((x0 - n * B) / A).denominator == 1

    def issubset(self, other: "OrderIdeal") -> bool:
        _same_ctx(self, other)
        return all(other.contains(v) for v in self.basis())

    def scaled(self, k) -> "OrderIdeal":
        return OrderIdeal(self.ctx, self.scale * Fraction(k), self.a, self.b)

    def __mul__(self, other):
        if isinstance(other, OrderIdeal):
            return ideal_mul(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = unit_ideal(self.ctx)
        base = self if n >= 0 else ideal_inv(self)
        for _ in range(abs(n)):
            result = ideal_mul(result, base)
        return result


def _same_ctx(A, B):
    if A.ctx != B.ctx:
        raise ContextMismatch(f"ideals live in different orders ({A.ctx}, {B.ctx})")


def ideal_from_gens(ctx: DiscContext, gens) -> OrderIdeal:
    """The Z-lattice spanned by ``gens``, which must be an ideal of the order."""
    gens = [(Fraction(x0), Fraction(x1)) for x0, x1 in gens]
    den = 1
    for x0, x1 in gens:
        den = den * x0.denominator // gcd(den, x0.denominator)
        den = den * x1.denominator // gcd(den, x1.denominator)
    A, B, C = _hnf([(int(x0 * den), int(x1 * den)) for x0, x1 in gens])
    if A % C or B % C:
        raise InvalidInput("lattice is not closed under multiplication by the order")
    a, B1 = A // C, B // C
    b = -ctx.D - 2 * B1
    return OrderIdeal.create(ctx, Fraction(C, den), a, b)


def unit_ideal(ctx: DiscContext) -> OrderIdeal:
    return OrderIdeal(ctx, Fraction(1), 1, ctx.D % 2)


def principal_ideal(ctx: DiscContext, n) -> OrderIdeal:
    """n * O for a nonzero rational n."""
    return unit_ideal(ctx).scaled(abs(Fraction(n)))


def ideal_norm(A: OrderIdeal) -> Fraction:
    return A.norm()


def ideal_is_proper(A: OrderIdeal) -> bool:
    return A.is_proper()


def _require_proper(*ideals):
    for A in ideals:
        if not A.is_proper():
            raise NotProper(f"{A} is not a proper ideal")


def ideal_mul(A: OrderIdeal, B: OrderIdeal) -> OrderIdeal:
    _same_ctx(A, B)
    _require_proper(A, B)
    ctx = A.ctx
    ga = [(x0 / A.scale, x1 / A.scale) for x0, x1 in A.basis()]
    gb = [(x0 / B.scale, x1 / B.scale) for x0, x1 in B.basis()]
    prod = ideal_from_gens(ctx, [ctx.mul(x, y) for x in ga for y in gb])
    return prod.scaled(A.scale * B.scale)


def ideal_conj(A: OrderIdeal) -> OrderIdeal:
    return OrderIdeal.create(A.ctx, A.scale, A.a, -A.b)


def ideal_inv(A: OrderIdeal) -> OrderIdeal:
    _require_proper(A)
    return ideal_conj(A).scaled(1 / A.norm())


def form_to_ideal(F, ctx: DiscContext = None) -> OrderIdeal:
    F = check_form(F)
    if ctx is None:
        ctx = disc_context(F.discriminant)
    elif ctx.D != F.discriminant:
        raise ContextMismatch(f"{F} does not have discriminant {ctx.D}")
    return OrderIdeal.create(ctx, 1, F.a, F.b)


def ideal_to_form(A: OrderIdeal) -> QuadForm:
    _require_proper(A)
    return A.form()


def _check_nested(small: DiscContext, large: DiscContext) -> int:
    if small.d_K != large.d_K or small.f % large.f:
        raise NotNested(f"order of {small} is not contained in order of {large}")
    return small.f // large.f


def relative_conductor(small: DiscContext, large: DiscContext) -> int:
    return _check_nested(small, large)


def _embed(x, small: DiscContext, large: DiscContext, r: int):
    # w = (D - r D')/2 + r w'
    k = (small.D - r * large.D) // 2
    x0, x1 = x
    return (x0 + x1 * k, r * x1)


def extend(A: OrderIdeal, large: DiscContext) -> OrderIdeal:
    """The ideal A*O' of the larger order O'."""
    r = _check_nested(A.ctx, large)
    _require_proper(A)
    gens = [_embed(v, A.ctx, large, r) for v in A.basis()]
    wprime = (0, 1)
    gens += [large.mul(g, wprime) for g in gens]
    return ideal_from_gens(large, gens)


def contract(Aprime: OrderIdeal, small: DiscContext) -> OrderIdeal:
    """The intersection A' n O for an integral ideal A' of the larger order."""
    r = _check_nested(small, Aprime.ctx)
    if not Aprime.is_integral():
        raise NotIntegral(f"{Aprime} is not integral")
    (A, _), (B, C) = Aprime.basis()
    A, B, C = int(A), int(B), int(C)
    # O sits inside O' as {x0 + x1 w' : r | x1}.
    t = r // gcd(r, C)
    k = (small.D - r * Aprime.ctx.D) // 2
    gens = [(A, 0), (t * B - (t * C // r) * k, t * C // r)]
    return ideal_from_gens(small, gens)


def prime_ideals_above(ctx: DiscContext, p: int) -> List[OrderIdeal]:
    """Prime ideals of norm p, the b > 0 root first; empty when p is inert."""
    if ctx.f % p == 0:
        raise ConductorPrime(f"{p} divides the conductor {ctx.f}")
    D = ctx.D
    k = kronecker(D, p)
    if k == -1:
        return []
    if p == 2:
        roots = [b for b in (1, 2, 0, -1) if (b * b - D) % 8 == 0]
    else:
        b = sqrt_mod(D, p)
        if (b - D) % 2:
            b = p - b
        roots = [b] if k == 0 else [b, -b]
    out = []
    for b in roots:
        P = OrderIdeal.create(ctx, 1, p, b)
        if P not in out:
            out.append(P)
    return out[: 1 if k == 0 else 2]


def parse_ideal(text: str) -> OrderIdeal:
    """Parse ``D:num/den:a:b`` (``/den`` optional)."""
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise InvalidInput(f"ideal literal {text!r} is not D:num/den:a:b")
    try:
        D = int(parts[0])
        scale = Fraction(parts[1])
        a, b = int(parts[2]), int(parts[3])
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad ideal literal {text!r}: {exc}") from None
    return OrderIdeal.create(disc_context(D), scale, a, b)


def format_ideal(A: OrderIdeal) -> str:
    s = A.scale
    return f"{A.ctx.D}:{s.numerator}/{s.denominator}:{A.a}:{A.b}"
