"""The form class group C(D) of a negative discriminant."""

import threading
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    ConductorPrime,
    InertPrime,
    InvalidDiscriminant,
    NotConductorPrime,
    NotCoprime,
    NotNested,
    RepresentativeSearchExhausted,
)
from .forms import QuadForm, check_form, lead_with, principal_form, reduce, represent
from .intmath import kronecker, valid_discriminant
from .orders import (
    DiscContext,
    disc_context,
    extend,
    form_to_ideal,
    ideal_mul,
    ideal_to_form,
    prime_ideals_above,
)


def reduced_forms(D: int) -> List[QuadForm]:
    """Reduced primitive forms of discriminant D, principal form first."""
    if not valid_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a negative integer = 0, 1 mod 4")
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and (a == c)):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(QuadForm(a, b, c))
    out.sort(key=lambda F: (F.a, abs(F.b), F.b < 0))
    return out


class ClassGroup:
    """C(D) as an indexed list of reduced forms.

    Products are computed through ideal multiplication and memoized; the
    memo is guarded by a lock so one instance can serve several threads.
    """

    def __init__(self, D: int, reps: Optional[Sequence[QuadForm]] = None, table=None):
        if not valid_discriminant(D):
            raise InvalidDiscriminant(f"{D} is not a negative integer = 0, 1 mod 4")
        self.ctx: DiscContext = disc_context(D)
        self.reps: List[QuadForm] = list(reps) if reps is not None else reduced_forms(D)
        self._index: Dict[QuadForm, int] = {F: i for i, F in enumerate(self.reps)}
        self._table: Dict[Tuple[int, int], int] = {}
        self._lock = threading.Lock()
        if table is not None:
            for i, row in enumerate(table):
                for j, k in enumerate(row):
                    self._table[i, j] = k

    @property
    def D(self) -> int:
        return self.ctx.D

    def __len__(self):
        return len(self.reps)

    @property
    def order(self) -> int:
        return len(self.reps)

    def __iter__(self):
        return (ClassElem(self, i) for i in range(len(self.reps)))

    def __repr__(self):
        return f"ClassGroup({self.D}, h={len(self)})"

    def identity(self) -> "ClassElem":
        return ClassElem(self, self._index[principal_form(self.D)])

    def elem(self, F) -> "ClassElem":
        """The class of any primitive positive definite form of discriminant D."""
        F = check_form(F)
        if F.discriminant != self.D:
            raise InvalidDiscriminant(f"{F} has discriminant {F.discriminant}, not {self.D}")
        return ClassElem(self, self._index[reduce(F)[0]])

    def _mul_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        k = self._table.get((i, j))
        if k is None:
            A = form_to_ideal(self.reps[i], self.ctx)
            B = form_to_ideal(self.reps[j], self.ctx)
            k = self._index[reduce(ideal_to_form(ideal_mul(A, B)))[0]]
            with self._lock:
                self._table[i, j] = k
                self._table[j, i] = k
        return k

    def table(self) -> List[List[int]]:
        n = len(self.reps)
        return [[self._mul_index(i, j) for j in range(n)] for i in range(n)]


class ClassElem:
    __slots__ = ("group", "index")

    def __init__(self, group: ClassGroup, index: int):
        if not 0 <= index < len(group.reps):
            raise IndexError(index)
        self.group = group
        self.index = index

    @property
    def form(self) -> QuadForm:
        return self.group.reps[self.index]

    def __eq__(self, other):
        return (
            isinstance(other, ClassElem)
            and self.group.D == other.group.D
            and self.index == other.index
        )

    def __hash__(self):
        return hash((self.group.D, self.index))

    def __lt__(self, other):
        return self.index < other.index

    def __repr__(self):
        return f"[{self.form}]"

    def __mul__(self, other):
        return class_mul(self, other)

    def __pow__(self, n: int):
        return class_pow(self, n)

    def inverse(self):
        return class_inverse(self)


def _same_group(x, y):
    if x.group.D != y.group.D:
        raise InvalidDiscriminant(f"classes of D={x.group.D} and D={y.group.D} do not multiply")


def class_identity(G: ClassGroup) -> ClassElem:
    return G.identity()


def class_mul(x: ClassElem, y: ClassElem) -> ClassElem:
    _same_group(x, y)
    return ClassElem(x.group, x.group._mul_index(x.index, y.index))


def class_inverse(x: ClassElem) -> ClassElem:
    a, b, c = x.form
    return x.group.elem((a, -b, c))


def class_pow(x: ClassElem, n: int) -> ClassElem:
    if n < 0:
        x, n = class_inverse(x), -n
    result = x.group.identity()
    while n:
        if n & 1:
            result = class_mul(result, x)
        x = class_mul(x, x)
        n >>= 1
    return result


_GROUPS: Dict[int, ClassGroup] = {}
_GROUPS_LOCK = threading.Lock()


def class_group(D: int) -> ClassGroup:
    """Shared ClassGroup instance for D, so multiplication memos are reused."""
    G = _GROUPS.get(D)
    if G is None:
        G = ClassGroup(D)
        with _GROUPS_LOCK:
            G = _GROUPS.setdefault(D, G)
    return G


def register_group(G: ClassGroup) -> ClassGroup:
    """Install a prebuilt group (e.g. loaded from a cache) as the shared one."""
    with _GROUPS_LOCK:
        _GROUPS[G.D] = G
    return G


def enumerate_reduced(D: int) -> ClassGroup:
    return class_group(D)


def classes_representing_prime(G: ClassGroup, p: int) -> Set[ClassElem]:
    """Classes of the forms (p, +-b, c) with b^2 = D mod 4p."""
    if G.ctx.f % p == 0:
        raise ConductorPrime(f"{p} divides the conductor {G.ctx.f}")
    if kronecker(G.D, p) == -1:
        raise InertPrime(f"{p} is inert for D={G.D}")
    return {G.elem(P.form()) for P in prime_ideals_above(G.ctx, p)}


def classes_representing_power(G: ClassGroup, l: int, h: int) -> Set[ClassElem]:
    """Classes whose forms represent l**h, for a prime l dividing the conductor."""
    if l < 2 or G.ctx.f % l:
        raise NotConductorPrime(f"{l} does not divide the conductor {G.ctx.f}")
    n = l**h
    return {x for x in G if represent(x.form, n) is not None}


def _primitive_values(F, box: int):
    vals = set()
    for x in range(-box, box + 1):
        for y in range(0, box + 1):
            if gcd(x, y) == 1:
                vals.add(F(x, y))
    return sorted(vals)


def coprime_representatives(x: ClassElem, M: int, count: int = 1, max_box: int = 1024):
    """Forms (m, b, c) in the class of x with gcd(m, M) == 1, smallest m first."""
    out = []
    box = 32
    while box <= max_box:
        for m in _primitive_values(x.form, box):
            if gcd(m, M) == 1:
                out.append(lead_with(x.form, m)[0])
                if len(out) == count:
                    return out
        out = []
        box *= 2
    raise RepresentativeSearchExhausted(
        f"no value of {x.form} prime to {M} with |x|, |y| <= {max_box}"
    )


def _nested(D: int, Dprime: int) -> int:
    if not valid_discriminant(Dprime) or D % Dprime:
        raise NotNested(f"{D} is not a square multiple of {Dprime}")
    r = isqrt(D // Dprime)
    if r * r * Dprime != D:
        raise NotNested(f"{D} is not a square multiple of {Dprime}")
    return r


def map_form_down(F, Dprime: int) -> ClassElem:
    """Image in C(D') of a form whose leading coefficient is prime to r."""
    F = check_form(F)
    G = class_group(Dprime)
    r = _nested(F.discriminant, Dprime)
    if gcd(F.a, r) != 1:
        raise NotCoprime(f"leading coefficient of {F} is not prime to {r}")
    A = extend(form_to_ideal(F), G.ctx)
    return G.elem(ideal_to_form(A))


def surjection_pi(x: ClassElem, Dprime: int) -> ClassElem:
    """The map C(D) -> C(D'), [a] -> [a O'], for D == r^2 D'."""
    r = _nested(x.group.D, Dprime)
    if r == 1:
        return class_group(Dprime).elem(x.form)
    (F,) = coprime_representatives(x, r)
    return map_form_down(F, Dprime)


def _product_layers(G: ClassGroup, sets: Sequence[Iterable[ClassElem]]):
    layers = [{G.identity(): None}]
    for S in sets:
        S = sorted(S)
        nxt = {}
        for prev in sorted(layers[-1]):
            for s in S:
                z = class_mul(prev, s)
                if z not in nxt:
                    nxt[z] = (prev, s)
        layers.append(nxt)
    return layers


def reachable_products(G: ClassGroup, sets: Sequence[Iterable[ClassElem]]) -> Set[ClassElem]:
    """All products s_1 * ... * s_n with s_i drawn from sets[i]."""
    return set(_product_layers(G, sets)[-1])


def choose_factors(
    G: ClassGroup, sets: Sequence[Iterable[ClassElem]], target: ClassElem
) -> Optional[List[ClassElem]]:
    """One choice per set whose product is ``target``, or None."""
    layers = _product_layers(G, sets)
    if target not in layers[-1]:
        return None
    chosen = []
    z = target
    for layer in reversed(layers[1:]):
        z, s = layer[z]
        chosen.append(s)
    return chosen[::-1]
