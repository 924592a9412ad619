import random
from fractions import Fraction
from math import inf

import pytest

from heckeforge.exact import (Cyclo, PadicVal, cyclotomic_poly, euler_phi,
                              padic_valuation, vp)


def test_root_of_unity_inverse():
    z = Cyclo.zeta(5)
    assert z * z ** 4 == 1


def test_i_times_conjugate():
    i = Cyclo.zeta(4)
    assert (1 + i) * (1 - i) == 2


def test_sum_of_nontrivial_fifth_roots():
    acc = Cyclo.rational(0)
    for a in range(1, 5):
        acc = acc + Cyclo.zeta(5, a)
    assert acc == -1


def test_cross_conductor_identities():
    assert Cyclo.zeta(2) == -1
    assert Cyclo.zeta(6) == -(Cyclo.zeta(3) ** 2)
    assert Cyclo.zeta(4) ** 2 == -1


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert euler_phi(27) == 18


def _random_cyclo(rng):
    m = rng.choice([1, 3, 4, 5, 8, 12])
    return Cyclo(m, [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
                     for _ in range(euler_phi(m))])


def test_field_axioms_randomized():
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (_random_cyclo(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a


def test_inverse_and_division():
    rng = random.Random(11)
    for _ in range(25):
        a = _random_cyclo(rng)
        if not a:
            continue
        assert a * a.inverse() == 1
        assert (a / a) == 1


def test_conjugation_is_ring_involution():
    rng = random.Random(13)
    for _ in range(20):
        a, b = _random_cyclo(rng), _random_cyclo(rng)
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()
        assert a.conj().conj() == a


def test_padic_valuation_examples():
    assert padic_valuation(Fraction(24, 5), 2) == PadicVal(2, 3)
    assert padic_valuation(0, 3).value == inf
    assert padic_valuation(Fraction(9, 2), 3).value == 2
    with pytest.raises(ValueError):
        padic_valuation(Fraction(1), 4)


def test_valuation_is_multiplicative():
    rng = random.Random(3)
    for _ in range(1000):
        p = rng.choice([2, 3, 5])
        x = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
        y = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
        assert vp(x * y, p) == vp(x, p) + vp(y, p)
        assert vp(x + y, p) >= min(vp(x, p), vp(y, p))


def test_cyclo_valuation_is_content():
    x = Cyclo(5, [Fraction(2), Fraction(4), Fraction(8), Fraction(1, 2)])
    assert vp(x, 2) == -1
    assert vp(Cyclo.zeta(5), 3) == 0


def test_serialization_roundtrip():
    x = Cyclo(5, [Fraction(1, 2), Fraction(-3), Fraction(0), Fraction(7, 5)])
    blob = x.to_json()
    assert blob["m"] == 5 and blob["coeffs"][0] == "1/2"
    assert Cyclo.from_json(blob) == x
