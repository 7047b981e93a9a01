from __future__ import annotations

import random

from siegelcy.cyclotomic import CycInt8


def zeta() -> CycInt8:
    return CycInt8.zeta_power(1)


def test_zeta_times_zeta_cubed_is_minus_one():
    assert zeta() * CycInt8.zeta_power(3) == CycInt8.from_int(-1)


def test_difference_of_squares():
    one = CycInt8.from_int(1)
    z2 = CycInt8.zeta_power(2)
    assert (one + z2) * (one - z2) == CycInt8.from_int(2)


def test_zeta_has_order_eight():
    z = zeta()
    w = z * z  # zeta^2
    w = w * w  # zeta^4
    w = w * w  # zeta^8
    assert w == CycInt8.from_int(1)
    assert CycInt8.zeta_power(8) == 1
    assert zeta() ** 8 == 1


def test_zeta_power_table():
    z = zeta()
    acc = CycInt8.from_int(1)
    for k in range(17):
        assert acc == CycInt8.zeta_power(k)
        assert acc == CycInt8.from_int(1).times_zeta_power(k)
        acc = acc * z


def _random_element(rng: random.Random) -> CycInt8:
    return CycInt8(*(rng.randint(-9, 9) for _ in range(4)))


def test_ring_axioms_on_seeded_triples():
    rng = random.Random(8)
    for _ in range(100):
        a, b, c = (_random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a + b == b + a


def test_canonical_representation():
    assert CycInt8(1, 0, 0, 0) == 1
    assert CycInt8(1, 0, 0, 0) != CycInt8(1, 1, 0, 0)
    assert hash(CycInt8(2, 3, -1, 0)) == hash(CycInt8(2, 3, -1, 0))


def test_conjugation_gives_norm_like_products():
    rng = random.Random(11)
    for _ in range(50):
        a = _random_element(rng)
        n = a * a.conjugate()
        # the product with the complex conjugate is fixed by conjugation
        assert n == n.conjugate()


def test_to_complex_matches_root_of_unity():
    import cmath

    for k in range(8):
        expected = cmath.exp(1j * cmath.pi * k / 4)
        got = CycInt8.zeta_power(k).to_complex()
        assert abs(got - expected) < 1e-12
