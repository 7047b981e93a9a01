from __future__ import annotations

import random
from fractions import Fraction

import pytest

from siegelcy.mpoly import (
    MPoly,
    RatFn,
    ThreeForm,
    graded_membership,
    monomials_of_degree,
    rational_jacobian,
    substitute_ratfn,
    threeform_pullback,
)

XY = ("x", "y")
UV = ("u", "v")


def test_binomial_substitution():
    x, y = MPoly.ring(XY)
    u, v = MPoly.ring(UV)
    f = x ** 2
    expanded = f.substitute({"x": u + v})
    assert expanded == u ** 2 + 2 * u * v + v ** 2


def test_substituting_zero():
    x, _ = MPoly.ring(XY)
    assert x.substitute({"x": MPoly.zero(UV)}).is_zero()


def test_unassigned_variable_is_named():
    x, y = MPoly.ring(XY)
    with pytest.raises(KeyError, match="y"):
        (x * y).substitute({"x": MPoly.var(UV, "u")})


def _random_poly(rng: random.Random, variables) -> MPoly:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        e = tuple(rng.randint(0, 3) for _ in variables)
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return MPoly(variables, terms)


def test_ring_axioms_on_seeded_triples():
    rng = random.Random(21)
    for _ in range(100):
        a, b, c = (_random_poly(rng, XY) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_degree_and_homogeneity():
    x, y = MPoly.ring(XY)
    f = x ** 2 * y + x * y ** 2
    assert f.total_degree() == 3
    assert f.is_homogeneous()
    assert not (f + x).is_homogeneous()
    assert MPoly.zero(XY).is_homogeneous()


def test_monomial_enumeration_counts():
    assert len(monomials_of_degree(("a", "b", "c"), 4)) == 15
    assert len(monomials_of_degree(("a",) * 6, 2)) == 21
    assert monomials_of_degree(XY, 0) == [(0, 0)]


# -- graded membership ----------------------------------------------------

def test_membership_square_in_linear_ideal():
    x, y = MPoly.ring(XY)
    cert = graded_membership(x ** 2, [x])
    assert cert is not None
    assert cert.reexpand([x]) == x ** 2
    assert cert.cofactors[0] == x


def test_membership_degree_obstruction():
    x, _ = MPoly.ring(XY)
    assert graded_membership(x, [x ** 2]) is None


def test_membership_rejects_inhomogeneous():
    x, y = MPoly.ring(XY)
    with pytest.raises(ValueError):
        graded_membership(x + x ** 2, [x])


def test_membership_certificate_iff_reexpansion():
    rng = random.Random(5)
    x, y = MPoly.ring(XY)
    gens = [x ** 2 + y ** 2, x * y]
    for _ in range(20):
        # random degree-3 combination must come back as a member
        q1 = rng.randint(-3, 3) * x + rng.randint(-3, 3) * y
        q2 = rng.randint(-3, 3) * x + rng.randint(-3, 3) * y
        f = q1 * gens[0] + q2 * gens[1]
        if f.is_zero():
            continue
        cert = graded_membership(f, gens)
        assert cert is not None
        assert cert.reexpand(gens) == f
    # and a non-member is refused: x^3 is not in (x^2+y^2) in degree 3
    assert graded_membership(x ** 3, [x ** 2 + y ** 2]) is None


# -- rational functions ------------------------------------------------------

def test_ratfn_equality_by_cross_multiplication():
    x, y = MPoly.ring(XY)
    a = RatFn(x * y, x)          # y with a spurious factor
    b = RatFn(y)
    assert a == b
    assert RatFn(x) != RatFn(y)


def test_ratfn_arithmetic():
    x, y = MPoly.ring(XY)
    f = RatFn(x) / RatFn(y)
    g = RatFn(y) / RatFn(x)
    assert f * g == RatFn.from_const(XY, 1)
    assert f + g == RatFn(x ** 2 + y ** 2, x * y)
    assert (f - f).is_zero()


def test_ratfn_partial_quotient_rule():
    x, y = MPoly.ring(XY)
    f = RatFn(x ** 2, y)
    df = f.partial("x")
    assert df == RatFn(2 * x, y)
    dfy = f.partial("y")
    assert dfy == RatFn(-(x ** 2), y ** 2)


# -- jacobians ------------------------------------------------------------

G3 = ("g1", "g2", "g3")


def test_identity_map_jacobian():
    maps = [RatFn.var(G3, v) for v in G3]
    assert rational_jacobian(maps, list(G3)) == RatFn.from_const(G3, 1)


def test_diagonal_jacobian():
    g1 = RatFn.var(G3, "g1")
    maps = [g1 * g1, RatFn.var(G3, "g2"), RatFn.var(G3, "g3")]
    assert rational_jacobian(maps, list(G3)) == 2 * g1


def test_jacobian_multiplicative_under_composition():
    rng = random.Random(17)
    vars3 = G3

    def random_map(rng) -> list[RatFn]:
        gens = [MPoly.var(vars3, v) for v in vars3]
        out = []
        for i in range(3):
            p = gens[i] + rng.randint(0, 2) * gens[(i + 1) % 3] * gens[i]
            q = MPoly.const(vars3, rng.randint(1, 3))
            out.append(RatFn(p, q))
        return out

    for _ in range(20):
        f = random_map(rng)
        g = random_map(rng)
        # compose: (f o g)_i = f_i(g1, g2, g3)
        comp = []
        for fi in f:
            num = substitute_ratfn(fi.num, {v: g[j] for j, v in enumerate(vars3)})
            den = substitute_ratfn(fi.den, {v: g[j] for j, v in enumerate(vars3)})
            comp.append(num / den)
        jf = rational_jacobian(f, list(vars3))
        jg = rational_jacobian(g, list(vars3))
        jf_at_g_num = substitute_ratfn(jf.num, {v: g[j] for j, v in enumerate(vars3)})
        jf_at_g_den = substitute_ratfn(jf.den, {v: g[j] for j, v in enumerate(vars3)})
        lhs = rational_jacobian(comp, list(vars3))
        rhs = (jf_at_g_num / jf_at_g_den) * jg
        assert lhs == rhs


# -- three-forms --------------------------------------------------------------

Z3 = ("z1", "z2", "z3")


def _dz() -> ThreeForm:
    return ThreeForm(Z3, RatFn.from_const(Z3, 1), ("z1", "z2", "z3"))


def test_wedge_normalization_sign():
    c = RatFn.from_const(Z3, 1)
    swapped = ThreeForm(Z3, c, ("z2", "z1", "z3"))
    assert swapped.wedge == ("z1", "z2", "z3")
    assert swapped.coeff == RatFn.from_const(Z3, -1)
    assert ThreeForm(Z3, c, ("z1", "z1", "z2")).is_zero()


def test_pullback_identity():
    omega = _dz()
    subs = {v: RatFn.var(Z3, v) for v in Z3}
    assert threeform_pullback(omega, subs, Z3) == omega


def test_pullback_first_blowup_chart():
    omega = _dz()
    w_vars = ("w1", "z2", "z3")
    w1, z2, z3 = (RatFn.var(w_vars, v) for v in w_vars)
    subs = {"z1": w1 * z2, "z2": z2, "z3": z3}
    pulled = threeform_pullback(omega, subs, w_vars)
    assert pulled.wedge == ("w1", "z2", "z3")
    assert pulled.coeff == z2


def test_pullback_second_blowup_chart():
    omega = _dz()
    u_vars = ("u1", "z2", "z3")
    u1, z2, z3 = (RatFn.var(u_vars, v) for v in u_vars)
    subs = {"z1": u1 * z2 * z3, "z2": z2, "z3": z3}
    pulled = threeform_pullback(omega, subs, u_vars)
    assert pulled.coeff == z2 * z3


def test_pullback_degenerate_map_is_flagged():
    omega = _dz()
    z2 = RatFn.var(Z3, "z2")
    subs = {"z1": z2, "z2": z2, "z3": RatFn.var(Z3, "z3")}
    pulled = threeform_pullback(omega, subs, Z3)
    assert pulled.is_zero()
    assert pulled.degenerate


def test_pullback_contravariant_functorial():
    rng = random.Random(3)
    for _ in range(20):
        # polynomial chart maps keep the composition exact
        gens = [MPoly.var(Z3, v) for v in Z3]
        def rand_subs():
            out = {}
            for i, v in enumerate(Z3):
                p = gens[i] + rng.randint(0, 1) * gens[(i + 1) % 3] ** 2
                out[v] = RatFn(p)
            return out

        f = rand_subs()
        g = rand_subs()
        omega = ThreeForm(Z3, RatFn(gens[0] + 1), ("z1", "z2", "z3"))
        # pull back along f, then along g
        step = threeform_pullback(omega, f, Z3)
        twice = threeform_pullback(step, g, Z3)
        # compose f after g as a single substitution: (f o g)(v) = f(v) evaluated at g
        fog = {}
        for v in Z3:
            num = substitute_ratfn(f[v].num, g)
            den = substitute_ratfn(f[v].den, g)
            fog[v] = num / den
        direct = threeform_pullback(omega, fog, Z3)
        assert twice == direct
