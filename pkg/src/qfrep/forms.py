"""Binary quadratic forms ax^2 + bxy + cy^2.

Reduction, SL(2, Z) action and the exhaustive representation search that
serves as ground truth for everything else in the package.
"""

from math import gcd, isqrt
from typing import NamedTuple, Optional, Set, Tuple

from .errors import InvalidForm
from .intmath import xgcd


class UnimodularMap(NamedTuple):
    """The matrix [[p, q], [r, s]] acting by (x, y) -> (px + qy, rx + sy)."""

    p: int
    q: int
    r: int
    s: int

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def __matmul__(self, other):
        p, q, r, s = self
        P, Q, R, S = other
        return UnimodularMap(p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)

    def inverse(self):
        if self.det() != 1:
            raise ValueError("only determinant-1 maps are inverted")
        p, q, r, s = self
        return UnimodularMap(s, -q, -r, p)

    def __call__(self, x: int, y: int) -> Tuple[int, int]:
        return self.p * x + self.q * y, self.r * x + self.s * y


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"

    @property
    def discriminant(self) -> int:
        return discriminant(self)

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_positive_definite(self) -> bool:
        return self.a > 0 and discriminant(self) < 0

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (abs(b) != a and a != c)


def discriminant(F) -> int:
    a, b, c = F
    return b * b - 4 * a * c


def principal_form(D: int) -> QuadForm:
    k = D % 2
    return QuadForm(1, k, (k - D) // 4)


def check_form(F) -> QuadForm:
    try:
        F = QuadForm(*map(int, F))
    except (TypeError, ValueError):
        raise InvalidForm(f"a form needs three integer coefficients, got {F!r}") from None
    if not F.is_positive_definite():
        raise InvalidForm(f"{F} is not positive definite")
    if not F.is_primitive():
        raise InvalidForm(f"{F} is not primitive")
    return F


def apply_transform(F, M) -> QuadForm:
    """The form (x, y) -> F(px + qy, rx + sy)."""
    a, b, c = F
    p, q, r, s = M
    return QuadForm(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def _translate(F, k):
    # x -> x + k*y
    a, b, c = F
    return QuadForm(a, b + 2 * a * k, a * k * k + b * k + c), UnimodularMap(1, k, 0, 1)


def normalize(F) -> Tuple[QuadForm, UnimodularMap]:
    """Move b into (-a, a] by a translation."""
    a, b, _ = F
    return _translate(F, (a - b) // (2 * a))


def reduce(F) -> Tuple[QuadForm, UnimodularMap]:
    """Return (G, M) with G reduced and G == apply_transform(F, M), det M == 1."""
    F = check_form(F)
    G, M = normalize(F)
    while G.a > G.c or (G.a == G.c and G.b < 0):
        a, b, c = G
        G, M = QuadForm(c, -b, a), M @ UnimodularMap(0, -1, 1, 0)
        G, T = normalize(G)
        M = M @ T
    return G, M


def reduced(F) -> QuadForm:
    return reduce(F)[0]


def _witness_key(xy):
    x, y = xy
    return abs(x), abs(y), x < 0, y < 0


def _solutions(F, m: int, proper: bool):
    a, b, c = F
    D = discriminant(F)
    ymax = isqrt(4 * a * m // -D)
    for y in range(-ymax, ymax + 1):
        # a x^2 + (b y) x + (c y^2 - m) = 0
        disc = D * y * y + 4 * a * m
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for num in {-b * y + s, -b * y - s}:
            if num % (2 * a) == 0:
                x = num // (2 * a)
                if not proper or gcd(x, y) == 1:
                    yield x, y


def represent(F, m: int, proper: bool = False) -> Optional[Tuple[int, int]]:
    """Smallest (x, y) with F(x, y) == m, or None.

    Ties go by (|x|, |y|), then nonnegative coordinates first. With
    ``proper`` only coprime pairs count.
    """
    F = QuadForm(*F)
    if not F.is_positive_definite():
        raise InvalidForm(f"{F} is not positive definite")
    if m < 0:
        return None
    if m == 0:
        return None if proper else (0, 0)
    sols = list(_solutions(F, m, proper))
    return min(sols, key=_witness_key) if sols else None


def represented_set(F, bound: int) -> Set[int]:
    """All values 0 <= F(x, y) <= bound."""
    F = QuadForm(*F)
    if not F.is_positive_definite():
        raise InvalidForm(f"{F} is not positive definite")
    a, b, c = F
    D = -discriminant(F)
    out = set()
    ymax = isqrt(4 * a * bound // D)
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + c y^2 <= bound on an interval around -b y / 2a
        rest = 4 * a * bound - D * y * y
        if rest < 0:
            continue
        s = isqrt(rest)
        lo = (-b * y - s) // (2 * a) - 1
        hi = (-b * y + s) // (2 * a) + 1
        for x in range(lo, hi + 1):
            v = F(x, y)
            if 0 <= v <= bound:
                out.add(v)
    return out


def lead_with(F, m: int) -> Optional[Tuple[QuadForm, UnimodularMap]]:
    """A form (m, b, c) properly equivalent to F, with b in (-m, m], and the map.

    The map M satisfies apply_transform(F, M) == result and det M == 1.
    """
    F = check_form(F)
    w = represent(F, m, proper=True)
    if w is None:
        return None
    x0, y0 = w
    _, u, v = xgcd(x0, y0)
    M = UnimodularMap(x0, -v, y0, u)
    G = apply_transform(F, M)
    G, T = normalize(G)
    return G, M @ T
