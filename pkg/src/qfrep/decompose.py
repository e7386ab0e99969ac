"""Factorization of proper ideals of imaginary quadratic orders.

An integral proper ideal A of the order of conductor f splits as

    A = P_1 ... P_r * (q_1 O)^(e_1/2) ... (q_s O)^(e_s/2) * C_1 ... C_t

with N(P_i) = p_i prime to f, q_j inert, and N(C_k) a power of the k-th
prime dividing f.  Conductor primes are peeled off one at a time by
passing to the next larger order in the chain between O and O_K.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Tuple

from .errors import (
    NotConductorPrime,
    NotCoprime,
    NotIntegral,
    NotProper,
    OddInertExponent,
)
from .intmath import factor, kronecker
from .orders import (
    DiscContext,
    OrderIdeal,
    contract,
    extend,
    ideal_inv,
    ideal_mul,
    prime_ideals_above,
    principal_ideal,
    unit_ideal,
)


@dataclass
class IdealDecomposition:
    ctx: DiscContext
    split_ramified: List[Tuple[OrderIdeal, int]] = field(default_factory=list)
    inert: List[Tuple[int, int]] = field(default_factory=list)
    conductor_parts: List[Tuple[int, OrderIdeal]] = field(default_factory=list)

    def recompose(self) -> OrderIdeal:
        result = unit_ideal(self.ctx)
        for P, e in self.split_ramified:
            for _ in range(e):
                result = ideal_mul(result, P)
        for q, half in self.inert:
            result = result.scaled(q**half)
        for _, C in self.conductor_parts:
            result = ideal_mul(result, C)
        return result

    def norm(self) -> Fraction:
        n = Fraction(1)
        for P, e in self.split_ramified:
            n *= P.norm() ** e
        for q, half in self.inert:
            n *= q ** (2 * half)
        for _, C in self.conductor_parts:
            n *= C.norm()
        return n

    def is_empty(self) -> bool:
        return not (self.split_ramified or self.inert or self.conductor_parts)

    def factors(self) -> List[OrderIdeal]:
        """Every factor with multiplicity, inert primes as q*O."""
        out = []
        for P, e in self.split_ramified:
            out += [P] * e
        for q, half in self.inert:
            out += [principal_ideal(self.ctx, q)] * half
        out += [C for _, C in self.conductor_parts]
        return out


def _divide(A: OrderIdeal, B: OrderIdeal) -> OrderIdeal:
    Q = ideal_mul(A, ideal_inv(B))
    if not Q.is_integral():
        raise AssertionError(f"{A} / {B} is not integral")
    return Q


def _integral_norm(A: OrderIdeal) -> int:
    if not A.is_integral():
        raise NotIntegral(f"{A} is not integral")
    n = A.norm()
    return n.numerator


def decompose_maximal(A: OrderIdeal) -> IdealDecomposition:
    """Prime factorization of an integral ideal of a maximal order."""
    ctx = A.ctx
    if ctx.f != 1:
        raise ValueError(f"{ctx} is not a maximal order")
    N = _integral_norm(A)
    dec = IdealDecomposition(ctx)
    for p, _ in factor(N):
        if kronecker(ctx.D, p) == -1:
            half = 0
            while A.scale.numerator % p == 0:
                A = A.scaled(Fraction(1, p))
                half += 1
            if A.norm().numerator % p == 0:
                raise OddInertExponent(p)
            dec.inert.append((p, half))
            continue
        for P in prime_ideals_above(ctx, p):
            e = 0
            while A.issubset(P):
                A = _divide(A, P)
                e += 1
            if e:
                dec.split_ramified.append((P, e))
        if A.norm().numerator % p == 0:
            raise AssertionError(f"{p} still divides the norm of {A}")
    if A.norm() != 1:
        raise AssertionError(f"leftover factor {A}")
    return dec


def decompose_coprime(A: OrderIdeal) -> IdealDecomposition:
    """Factor a proper integral ideal whose norm is prime to the conductor."""
    ctx = A.ctx
    N = _integral_norm(A)
    if gcd(N, ctx.f) != 1:
        raise NotCoprime(f"N({A}) = {N} is not prime to the conductor {ctx.f}")
    if ctx.f == 1:
        return decompose_maximal(A)
    top = ctx.with_conductor(1)
    big = decompose_maximal(extend(A, top))
    dec = IdealDecomposition(ctx)
    dec.split_ramified = [(contract(P, ctx), e) for P, e in big.split_ramified]
    dec.inert = list(big.inert)
    return dec


def _peel(A: OrderIdeal):
    """Split off the part of A at the largest conductor prime.

    Returns (l, lower, C): ``lower`` is the decomposition of the rest of A
    with every factor already moved down into A's order, and C is the
    factor with N(C) a power of l.
    """
    ctx = A.ctx
    l, lam = ctx.f_factors.factors[-1]
    up = ctx.with_conductor(ctx.f // l**lam)
    above = decompose_order_ideal(extend(A, up))
    lower = IdealDecomposition(ctx)
    for P, e in above.split_ramified:
        if P.a % l:
            lower.split_ramified.append((contract(P, ctx), e))
    lower.inert = [(q, half) for q, half in above.inert if q != l]
    lower.conductor_parts = [(k, contract(C, ctx)) for k, C in above.conductor_parts]
    C = _divide(A, lower.recompose())
    if not C.is_proper():
        raise AssertionError(f"conductor part {C} is not proper")
    return l, lower, C


def split_conductor(A: OrderIdeal, l: int) -> Tuple[OrderIdeal, OrderIdeal]:
    """Write A = B*C with N(B) prime to l and N(C) a power of l."""
    ctx = A.ctx
    _integral_norm(A)
    if not A.is_proper():
        raise NotProper(f"{A} is not proper")
    if ctx.f % l:
        raise NotConductorPrime(f"{l} does not divide the conductor {ctx.f}")
    dec = decompose_order_ideal(A)
    C = unit_ideal(ctx)
    for k, Ck in dec.conductor_parts:
        if k == l:
            C = Ck
    return _divide(A, C), C


def decompose_order_ideal(A: OrderIdeal) -> IdealDecomposition:
    """Full decomposition of a proper integral ideal of any order."""
    if not A.is_proper():
        raise NotProper(f"{A} is not proper")
    _integral_norm(A)
    if A.ctx.f == 1:
        return decompose_maximal(A)
    l, dec, C = _peel(A)
    if C.norm() != 1:
        dec.conductor_parts.append((l, C))
    dec.conductor_parts.sort(key=lambda kc: kc[0])
    return dec
