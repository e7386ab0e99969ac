import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import dirichlet_compose, naive_represent, naive_values, primes_below
from qfrep.classgroup import (
    ClassGroup,
    choose_factors,
    class_group,
    class_identity,
    class_inverse,
    class_mul,
    class_pow,
    classes_representing_power,
    classes_representing_prime,
    coprime_representatives,
    enumerate_reduced,
    map_form_down,
    reachable_products,
    surjection_pi,
)
from qfrep.errors import InertPrime, InvalidDiscriminant, NotConductorPrime, NotCoprime, NotNested
from qfrep.forms import QuadForm, lead_with, reduced
from qfrep.intmath import kronecker

DISCS = [D for D in range(-400, -2) if D % 4 in (0, 1)]
SMALL_H = [D for D in DISCS if len(class_group(D)) <= 16]
PI_PAIRS = [(-32, -8), (-64, -16), (-64, -4), (-108, -27), (-108, -12), (-20, -20)]


def E(D, F):
    return class_group(D).elem(F)


def test_enumerate_reduced_examples():
    assert enumerate_reduced(-4).reps == [(1, 0, 1)]
    assert enumerate_reduced(-20).reps == [(1, 0, 5), (2, 2, 3)]
    assert set(enumerate_reduced(-108).reps) == {(1, 0, 27), (4, 2, 7), (4, -2, 7)}
    assert len(enumerate_reduced(-108)) == 3


def test_class_number_table():
    # known class numbers h(D) for the first fundamental discriminants
    known = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -19: 1, -20: 2, -23: 3,
             -24: 2, -31: 3, -35: 2, -39: 4, -40: 2, -43: 1, -47: 5, -51: 2,
             -52: 2, -55: 4, -56: 4, -59: 3, -67: 1, -71: 7, -84: 4, -163: 1}
    for D, h in known.items():
        assert len(class_group(D)) == h


def test_invalid_discriminant():
    for D in (-5, -6, 0, 5):
        with pytest.raises(InvalidDiscriminant):
            ClassGroup(D)


def test_class_mul_examples():
    G20 = class_group(-20)
    x = G20.elem((2, 2, 3))
    assert class_mul(class_identity(G20), x) == x
    assert class_mul(x, x) == G20.elem((1, 0, 5))
    y = E(-108, (4, 2, 7))
    assert class_mul(y, y) == E(-108, (4, -2, 7))


def test_inverse_and_pow_examples():
    G = class_group(-108)
    assert class_inverse(G.identity()) == G.identity()
    assert class_inverse(G.elem((4, 2, 7))) == G.elem((4, -2, 7))
    assert class_pow(E(-20, (2, 2, 3)), 2) == class_group(-20).identity()
    assert class_pow(E(-108, (4, 2, 7)), -1) == G.elem((4, -2, 7))


def test_group_axioms():
    for D in SMALL_H:
        G = class_group(D)
        e = G.identity()
        assert e.form == G.reps[0]
        els = list(G)
        for x in els:
            assert x * e == x
            assert x * x.inverse() == e
            assert x ** len(G) == e
            for y in els:
                assert x * y == y * x


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SMALL_H), st.data())
def test_associativity(D, data):
    G = class_group(D)
    x, y, z = (data.draw(st.sampled_from(list(G))) for _ in range(3))
    assert (x * y) * z == x * (y * z)


def test_table_is_latin_square():
    for D in SMALL_H[::5]:
        T = class_group(D).table()
        h = len(T)
        for row in T:
            assert sorted(row) == list(range(h))
        for j in range(h):
            assert sorted(T[i][j] for i in range(h)) == list(range(h))
        assert T[0] == list(range(h))


def test_table_seeded_group_agrees():
    G = class_group(-84)
    H = ClassGroup(-84, G.reps, G.table())
    assert H.table() == G.table()


def _with_coprime_leader(F, a):
    for x in range(-5, 6):
        for y in range(0, 6):
            if gcd(x, y) == 1 and gcd(F(x, y), a) == 1:
                return lead_with(F, F(x, y))[0]
    raise AssertionError


def test_composition_agrees_with_dirichlet():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        D = rng.choice(DISCS)
        G = class_group(D)
        F, H = rng.choice(G.reps), rng.choice(G.reps)
        H2 = _with_coprime_leader(H, F[0])
        comp = dirichlet_compose(F, H2)
        assert comp is not None
        assert reduced(comp) == (G.elem(F) * G.elem(H)).form, (D, F, H)
        checked += 1


def test_composition_multiplies_represented_values():
    rng = random.Random(6)
    for _ in range(60):
        D = rng.choice(DISCS)
        G = class_group(D)
        x, y = rng.choice(list(G)), rng.choice(list(G))
        z = (x * y).form
        vx = sorted(naive_values(x.form, 40) - {0})[:4]
        vy = sorted(naive_values(y.form, 40) - {0})[:4]
        for m in vx:
            for n in vy:
                assert naive_represent(z, m * n) is not None, (D, x, y, m, n)


def test_classes_representing_prime_examples():
    G20 = class_group(-20)
    assert classes_representing_prime(G20, 3) == {G20.elem((2, 2, 3))}
    assert classes_representing_prime(G20, 29) == {G20.elem((1, 0, 5))}
    G4 = class_group(-4)
    assert classes_representing_prime(G4, 2) == {G4.identity()}
    with pytest.raises(InertPrime):
        classes_representing_prime(G20, 11)


def test_classes_representing_prime_matches_exhaustion():
    for D in DISCS[::7]:
        G = class_group(D)
        for p in primes_below(120):
            if G.ctx.f % p == 0 or kronecker(D, p) == -1:
                continue
            expected = {x for x in G if naive_represent(x.form, p) is not None}
            assert classes_representing_prime(G, p) == expected, (D, p)


def test_classes_representing_power_examples():
    G32 = class_group(-32)
    assert classes_representing_power(G32, 2, 1) == set()
    assert classes_representing_power(G32, 2, 2) == {G32.elem((1, 0, 8)), G32.elem((3, 2, 3))}
    assert classes_representing_power(class_group(-108), 3, 1) == set()
    with pytest.raises(NotConductorPrime):
        classes_representing_power(G32, 3, 1)


def test_reachable_products_examples():
    G20 = class_group(-20)
    x = G20.elem((2, 2, 3))
    assert reachable_products(G20, []) == {G20.identity()}
    assert reachable_products(G20, [{x}, {x}]) == {G20.identity()}
    G32 = class_group(-32)
    both = {G32.elem((1, 0, 8)), G32.elem((3, 2, 3))}
    assert reachable_products(G32, [both]) == both


def test_choose_factors_multiplies_to_target():
    rng = random.Random(8)
    for _ in range(100):
        G = class_group(rng.choice(SMALL_H))
        els = list(G)
        sets = [set(rng.sample(els, rng.randint(1, len(els)))) for _ in range(rng.randint(0, 5))]
        reach = reachable_products(G, sets)
        for t in els:
            chosen = choose_factors(G, sets, t)
            assert (chosen is not None) == (t in reach)
            if chosen is not None:
                prod = G.identity()
                for s, S in zip(chosen, sets):
                    assert s in S
                    prod = prod * s
                assert prod == t


def test_surjection_examples():
    assert surjection_pi(E(-32, (3, 2, 3)), -8) == E(-8, (1, 0, 2))
    assert surjection_pi(E(-108, (4, 2, 7)), -27) == E(-27, (1, 1, 7))
    assert surjection_pi(E(-108, (4, 2, 7)), -12) == E(-12, (1, 0, 3))
    assert surjection_pi(E(-20, (2, 2, 3)), -20) == E(-20, (2, 2, 3))
    for D, Dp in PI_PAIRS:
        assert surjection_pi(class_group(D).identity(), Dp) == class_group(Dp).identity()


def test_surjection_rejects_non_nested():
    with pytest.raises(NotNested):
        surjection_pi(E(-32, (3, 2, 3)), -12)
    with pytest.raises(NotNested):
        surjection_pi(E(-20, (2, 2, 3)), -4)
    with pytest.raises(NotCoprime):
        map_form_down((4, 4, 5), -16)


def test_coprime_representatives_are_in_class():
    for D, Dp in PI_PAIRS:
        G = class_group(D)
        r = int((D // Dp) ** 0.5)
        for x in G:
            reps = coprime_representatives(x, r, count=3)
            assert len(set(reps)) == 3
            for F in reps:
                assert gcd(F[0], r) == 1 and G.elem(F) == x


def test_surjection_independent_of_representative():
    for D, Dp in PI_PAIRS:
        G = class_group(D)
        r = int((D // Dp) ** 0.5)
        for x in G:
            images = {map_form_down(F, Dp) for F in coprime_representatives(x, r, count=3)}
            assert images == {surjection_pi(x, Dp)}


def test_class_elem_display_and_order():
    G = class_group(-108)
    assert repr(G.elem((4, 2, 7))) == "[(4,2,7)]"
    assert sorted(G) == list(G)
    assert G.elem(QuadForm(7, -2, 4)) == G.elem((4, 2, 7))
