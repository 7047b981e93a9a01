from __future__ import annotations

import math
import random

import pytest

from siegelcy.characteristics import Char, even_characteristics, odd_characteristics
from siegelcy.numeric import (
    SiegelPoint,
    character_law_check,
    conditioned_samples,
    cusp_limit_deviation,
    diagonal_vanishing_check,
    evaluate_qseries,
    pulled_back_point,
    series_numeric_consistency,
    siegel_transform,
    theta_eval,
    theta_eval_batch,
    transform_modulus_check,
)
from siegelcy.qseries import negate_offdiag, theta_qexp
from siegelcy.symplectic import (
    SpMat,
    Subgroup,
    cusp_form_character,
    theta_character,
)


def rand_point(rng: random.Random, y: float = 1.2) -> SiegelPoint:
    return SiegelPoint(
        complex(rng.uniform(-0.5, 0.5), rng.uniform(y, y + 0.5)),
        complex(rng.uniform(-0.25, 0.25), rng.uniform(0.1, 0.3)),
        complex(rng.uniform(-0.5, 0.5), rng.uniform(y, y + 0.5)),
    )


def test_point_validation():
    with pytest.raises(ValueError):
        SiegelPoint(1j, 2j, 1j)  # det Y < 0
    with pytest.raises(ValueError):
        SiegelPoint(-1j, 0j, 1j)


def test_theta_at_scaled_identity_points():
    # separable oracle: (sum over n of e^(pi i z n^2))^2 on diagonal points
    val = theta_eval(Char(0, 0, 0, 0), SiegelPoint(1j, 0j, 1j), tol=1e-10)
    oracle = sum(math.exp(-math.pi * n * n) for n in range(-6, 7)) ** 2
    assert abs(val.value - oracle) < 1e-6
    assert abs(val.value - 1.1803406) < 1e-6

    val2 = theta_eval(Char(0, 0, 0, 0), SiegelPoint(2j, 0j, 2j), tol=1e-10)
    oracle2 = sum(math.exp(-2 * math.pi * n * n) for n in range(-6, 7)) ** 2
    assert abs(val2.value - oracle2) < 1e-6


def test_odd_characteristics_evaluate_to_zero():
    rng = random.Random(1)
    Z = rand_point(rng)
    for m in odd_characteristics():
        assert abs(theta_eval(m, Z, tol=1e-12).value) < 1e-12


def test_tail_bound_is_honest():
    # summing with a loose tolerance stays within the claimed bound of a
    # much more precise value
    Z = SiegelPoint(1j, 0.3j, 1.1j)
    coarse = theta_eval(Char(0, 0, 0, 0), Z, tol=1e-4)
    fine = theta_eval(Char(0, 0, 0, 0), Z, tol=1e-20)
    assert abs(coarse.value - fine.value) <= coarse.tail_bound


def test_batch_matches_single():
    Z = SiegelPoint(1.1j, 0.2j, 0.9j)
    chars = even_characteristics()[:4]
    batch = theta_eval_batch(chars, Z, tol=1e-12)
    for m, r in zip(chars, batch):
        single = theta_eval(m, Z, tol=1e-12)
        assert abs(r.value - single.value) < 1e-20


def test_dual_engine_consistency_all_even():
    Z = SiegelPoint(3j, 0j, 3j)
    for m in even_characteristics():
        assert series_numeric_consistency(m, Z, 12) < 1e-8


def test_dual_engine_ten_seeded_points():
    rng = random.Random(42)
    for _ in range(10):
        Z = SiegelPoint(
            complex(rng.uniform(-0.5, 0.5), rng.uniform(3.2, 4.0)),
            complex(rng.uniform(-0.2, 0.2), rng.uniform(0.05, 0.25)),
            complex(rng.uniform(-0.5, 0.5), rng.uniform(3.2, 4.0)),
        )
        for m in even_characteristics():
            assert series_numeric_consistency(m, Z, 12) < 1e-8


def test_dual_engine_higher_point():
    assert series_numeric_consistency(
        Char(0, 0, 0, 0), SiegelPoint(5j, 0j, 5j), 12) < 1e-12


def test_dual_engine_rejects_low_points():
    with pytest.raises(ValueError, match="dropped-terms"):
        series_numeric_consistency(Char(0, 0, 0, 0), SiegelPoint(0.6j, 0j, 0.6j), 4)


def test_cusp_limit_shrinks():
    devs = [cusp_limit_deviation(Char(0, 0, 0, 0), s) for s in (2.0, 3.0, 4.0)]
    assert devs[0] > devs[1] > devs[2]


def test_identity_transform_is_exact():
    Z = SiegelPoint(1.2j, 0.1j, 1.3j)
    image, det = siegel_transform(SpMat.identity(), Z)
    assert abs(det - 1) < 1e-25
    ok, dev = transform_modulus_check(SpMat.identity(), Char(0, 0, 1, 1), Z)
    assert ok and dev < 1e-12


def test_full_inversion_transform():
    rng = random.Random(7)
    evens = even_characteristics()
    for _ in range(20):
        Z = rand_point(rng)
        m = rng.choice(evens)
        ok, dev = transform_modulus_check(SpMat.inversion(), m, Z)
        assert ok and dev < 1e-8


def test_sampled_transform_modulus():
    rng = random.Random(17)
    mats = conditioned_samples(Subgroup.full(), 20, seed=100,
                               word_length=5, max_entry=3, nonzero_c=10)
    evens = even_characteristics()
    for M in mats:
        m = rng.choice(evens)
        ok, dev = transform_modulus_check(M, m, rand_point(rng))
        assert ok and dev < 1e-8


def test_theta_product_character_matches_formula():
    base = SiegelPoint(1.3j, 0.15j, 1.4j)
    mats = conditioned_samples(Subgroup.hecke(2), 20, seed=200,
                               word_length=8, max_entry=5, nonzero_c=8)
    values = set()
    for M in mats:
        Z = pulled_back_point(M, base)
        measured = character_law_check("theta_product", M, Z)
        assert measured == theta_character(M)
        values.add(measured)
    assert values == {1, -1}


def test_cusp_form_character_trivial_on_kernel():
    base = SiegelPoint(1.3j, 0.15j, 1.4j)
    mats = conditioned_samples(Subgroup.chi_kernel(), 20, seed=300,
                               word_length=8, max_entry=5, nonzero_c=8)
    for M in mats:
        Z = pulled_back_point(M, base)
        assert character_law_check("cusp_form", M, Z) == 1


def test_cusp_form_character_matches_combined_formula():
    # on the bigger group the weight-3 product transforms by the product of
    # the quadratic character and the mod-2 sign character
    base = SiegelPoint(1.3j, 0.15j, 1.4j)
    mats = conditioned_samples(Subgroup.hecke(2), 12, seed=400,
                               word_length=8, max_entry=5, nonzero_c=5)
    for M in mats:
        Z = pulled_back_point(M, base)
        assert character_law_check("cusp_form", M, Z) == cusp_form_character(M)


def test_lower_triangular_flips_the_product_form():
    low = SpMat.from_blocks(((1, 0), (0, 1)), ((0, 0), (0, 0)),
                            ((2, 2), (2, 2)), ((1, 0), (0, 1)))
    rng = random.Random(3)
    assert character_law_check("theta_product", low, rand_point(rng)) == -1
    assert theta_character(low) == -1


def test_measured_characters_are_multiplicative():
    base = SiegelPoint(1.3j, 0.15j, 1.4j)
    mats = conditioned_samples(Subgroup.hecke(2), 10, seed=500,
                               word_length=6, max_entry=3, nonzero_c=4)
    rng = random.Random(9)
    for _ in range(30):
        a, b = rng.choice(mats), rng.choice(mats)
        prod = a * b
        if prod.max_entry() > 12:
            continue
        Z = pulled_back_point(prod, base)
        lhs = character_law_check("theta_product", prod, Z)
        za = pulled_back_point(a, base)
        zb = pulled_back_point(b, base)
        assert lhs == (character_law_check("theta_product", a, za)
                       * character_law_check("theta_product", b, zb))


def test_diagonal_vanishing():
    assert diagonal_vanishing_check(1j, 2j)
    assert diagonal_vanishing_check(0.5 + 1j, 3j)
    # control: the even theta with zero characteristic does not vanish there
    control = theta_eval(Char(0, 0, 0, 0), SiegelPoint(1j, 0j, 2j), tol=1e-12)
    assert abs(control.value) > 1


def test_antisymmetry_numeric_and_exact():
    from siegelcy.characteristics import STANDARD_SEXTUPLE
    from siegelcy.numeric import theta_product_eval, _standard_sextuple_chars

    rng = random.Random(23)
    for _ in range(10):
        Z = rand_point(rng, y=1.0)
        flipped = SiegelPoint(Z.z0, -Z.z1, Z.z2)
        plus = theta_product_eval(_standard_sextuple_chars(), Z)
        minus = theta_product_eval(_standard_sextuple_chars(), flipped)
        assert abs(plus.value + minus.value) < 1e-9
    # and exactly on expansions
    from siegelcy.qseries import product

    series = product(theta_qexp(m, 12) for m in sorted(STANDARD_SEXTUPLE))
    assert negate_offdiag(series) == -series
