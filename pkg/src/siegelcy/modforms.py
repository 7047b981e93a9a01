"""Named modular forms and the ring relations between them.

The registry holds, at one truncation bound, the ten even theta constants,
the five Igusa generators y0..y4 of the even-weight level-2 ring, the
extra weight-2 form y5 (the product of the four theta constants with upper
characteristic zero), the doubled-argument generators f1..f4 and their
symmetric combinations F1..F6, the fifteen weight-3 sextuple products, and
the weight-5 product of all ten theta constants.

Every relation is stored with the declared weight of both sides and with a
deliberately broken variant (one perturbed coefficient) used as a
falsification control: the suite must see a zero residual on the genuine
relation and a nonzero residual on the mutation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .characteristics import (
    Char,
    STANDARD_SEXTUPLE,
    all_sextuples,
    complement_sextuple,
    even_characteristics,
    is_syzygetic,
)
from .qseries import QSeries, product, second_kind_qexp, theta_qexp_cached, vanishing_order

THETA_FOURTH_00_11 = Char(0, 0, 1, 1)
THETA_FOURTH_00_01 = Char(0, 0, 0, 1)
THETA_FOURTH_00_00 = Char(0, 0, 0, 0)
THETA_FOURTH_00_10 = Char(0, 0, 1, 0)
THETA_FOURTH_10_00 = Char(1, 0, 0, 0)
THETA_FOURTH_10_01 = Char(1, 0, 0, 1)

#: the four theta constants with upper characteristic zero, in the order
#: entering the weight-2 product form
PRODUCT_FORM_CHARS = (
    THETA_FOURTH_00_01,
    THETA_FOURTH_00_00,
    THETA_FOURTH_00_10,
    THETA_FOURTH_00_11,
)

#: ordering of the doubled-argument characteristics behind f1..f4
SECOND_KIND_ORDER = ((0, 0), (1, 0), (0, 1), (1, 1))


class FormRegistry:
    """All named series at one truncation bound, built once and shared."""

    def __init__(self, truncation: int, cache_dir: str | None = None) -> None:
        if truncation < 4:
            raise ValueError("registry needs truncation at least 4")
        self.truncation = truncation
        self.theta = {m: theta_qexp_cached(m, truncation, cache_dir)
                      for m in even_characteristics()}
        th = self.theta
        self.y = [
            th[THETA_FOURTH_00_11] ** 4,
            th[THETA_FOURTH_00_01] ** 4,
            th[THETA_FOURTH_00_00] ** 4,
            -(th[THETA_FOURTH_10_00] ** 4) - th[THETA_FOURTH_00_11] ** 4,
            -(th[THETA_FOURTH_10_01] ** 4) - th[THETA_FOURTH_00_11] ** 4,
            product(th[m] for m in PRODUCT_FORM_CHARS),
        ]
        self.f = [second_kind_qexp(a, truncation) for a in SECOND_KIND_ORDER]
        f1, f2, f3, f4 = self.f
        self.F = [
            f1 ** 4 + f2 ** 4 + f3 ** 4 + f4 ** 4,
            f1 ** 2 * f2 ** 2 + f3 ** 2 * f4 ** 2,
            f1 ** 2 * f3 ** 2 + f2 ** 2 * f4 ** 2,
            f1 ** 2 * f4 ** 2 + f2 ** 2 * f3 ** 2,
            f1 * f2 * f3 * f4,
            self.y[5],
        ]
        self.sextuple_products = {
            s: product(th[m] for m in sorted(s)) for s in all_sextuples()
        }
        self.chi5 = product(th[m] for m in even_characteristics())

    @property
    def theta_product(self) -> QSeries:
        """The weight-2 form y5 = F6, product of the four a = 0 thetas."""
        return self.y[5]

    def cusp_form(self, sextuple=STANDARD_SEXTUPLE) -> QSeries:
        return self.sextuple_products[frozenset(sextuple)]


def sextuple_form(sextuple, registry: FormRegistry) -> QSeries:
    """Product of the six theta expansions of a complementary sextuple."""
    key = frozenset(sextuple)
    if key not in registry.sextuple_products:
        raise ValueError("not a sextuple complementary to a syzygetic quadruple")
    return registry.sextuple_products[key]


# -- relations ------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    weight: Fraction  # declared weight of both sides
    sides: Callable[[FormRegistry], tuple[QSeries, QSeries]]
    mutated: Callable[[FormRegistry], tuple[QSeries, QSeries]]
    mutation_note: str


def _igusa_quartic(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    y0, y1, y2, y3, y4, _ = reg.y
    lhs = (y0 * y1 + y0 * y2 + y1 * y2 - y3 * y4) ** 2
    rhs = c * (y0 * y1 * y2 * (y0 + y1 + y2 + y3 + y4))
    return lhs, rhs


def _product_quadric(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    th = reg.theta
    squares = product(th[m] ** 2 for m in PRODUCT_FORM_CHARS)
    y0, y1, y2, y3, y4, _ = reg.y
    return c * squares, y0 * y1 + y0 * y2 + y1 * y2 - y3 * y4


def _y_quartic(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    y0, y1, y2, y3, y4, y5 = reg.y
    return c * (y5 ** 4), y0 * y1 * y2 * (y0 + y1 + y2 + y3 + y4)


def _y_quadric(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    y0, y1, y2, y3, y4, y5 = reg.y
    return c * (y5 ** 2), y0 * y1 + y0 * y2 + y1 * y2 - y3 * y4


def classical_relation_sides(reg: FormRegistry, m: Char,
                             scale: int = 1) -> tuple[QSeries, QSeries]:
    """theta[m]^2 against the signed sum of doubled-argument products.

    For odd m the left side is the zero series, so the relation asserts
    that the alternating sum of f-products cancels.
    """
    lhs = scale * (theta_qexp_cached(m, reg.truncation, None) ** 2
                   if m not in reg.theta else reg.theta[m] ** 2)
    rhs = QSeries.zero(reg.truncation)
    index = {a: i for i, a in enumerate(SECOND_KIND_ORDER)}
    for x in SECOND_KIND_ORDER:
        ax = ((m.a1 + x[0]) % 2, (m.a2 + x[1]) % 2)
        term = reg.f[index[ax]] * reg.f[index[x]]
        sign = (-1) ** (m.b1 * x[0] + m.b2 * x[1])
        rhs = rhs + (term if sign > 0 else -term)
    return lhs, rhs


def classical_residuals(reg: FormRegistry) -> dict[Char, QSeries]:
    """Residual of the square relation for each of the 16 characteristics."""
    from .characteristics import all_characteristics

    out = {}
    for m in all_characteristics():
        lhs, rhs = classical_relation_sides(reg, m)
        out[m] = lhs - rhs
    return out


def _classical_all(reg: FormRegistry, scale: int) -> tuple[QSeries, QSeries]:
    # single-series convenience view: the per-characteristic residuals are
    # each zero (checked separately), so the plain sums must agree; the
    # mutation doubles one square and is caught immediately
    lhs_total = QSeries.zero(reg.truncation)
    rhs_total = QSeries.zero(reg.truncation)
    from .characteristics import all_characteristics

    for k, m in enumerate(all_characteristics()):
        lhs, rhs = classical_relation_sides(reg, m, scale if k == 0 else 1)
        lhs_total = lhs_total + lhs
        rhs_total = rhs_total + rhs
    return lhs_total, rhs_total


def _second_kind_quartic(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    # c perturbs the F1*F2*F3*F4 coefficient: the 16*F5^4 term only starts
    # at combined weight 32, so a mutation there would be invisible at any
    # practical truncation, while this one shows up from weight 16 on
    F1, F2, F3, F4, F5, _ = reg.F
    lhs = 16 * (F5 ** 4)
    rhs = (-(F1 ** 2 * F5 ** 2) + c * (F1 * F2 * F3 * F4)
           - F2 ** 2 * F3 ** 2 - F2 ** 2 * F4 ** 2 + 4 * (F2 ** 2 * F5 ** 2)
           - F3 ** 2 * F4 ** 2 + 4 * (F3 ** 2 * F5 ** 2) + 4 * (F4 ** 2 * F5 ** 2))
    return lhs, rhs


def _f6_quadric(reg: FormRegistry, c: int) -> tuple[QSeries, QSeries]:
    F1, F2, F3, F4, F5, F6 = reg.F
    rhs = (F1 ** 2 - 4 * (F2 ** 2) - 4 * (F3 ** 2) - 4 * (F4 ** 2)
           + c * (F5 ** 2))
    return F6 ** 2, rhs


def _chi5_product(reg: FormRegistry, sign: int) -> tuple[QSeries, QSeries]:
    t_std = reg.cusp_form()
    return sign * (t_std * reg.theta_product), reg.chi5


RELATIONS: dict[str, Relation] = {
    r.name: r
    for r in [
        Relation("igusa_quartic", Fraction(8),
                 lambda reg: _igusa_quartic(reg, 4),
                 lambda reg: _igusa_quartic(reg, 5),
                 "quartic coefficient 4 -> 5"),
        Relation("product_quadric", Fraction(4),
                 lambda reg: _product_quadric(reg, 2),
                 lambda reg: _product_quadric(reg, 3),
                 "product coefficient 2 -> 3"),
        Relation("y_quartic", Fraction(8),
                 lambda reg: _y_quartic(reg, 1),
                 lambda reg: _y_quartic(reg, 2),
                 "left side doubled"),
        Relation("y_quadric", Fraction(4),
                 lambda reg: _y_quadric(reg, 2),
                 lambda reg: _y_quadric(reg, 3),
                 "quadric coefficient 2 -> 3"),
        Relation("classical_squares", Fraction(1),
                 lambda reg: _classical_all(reg, 1),
                 lambda reg: _classical_all(reg, 2),
                 "one square doubled"),
        Relation("second_kind_quartic", Fraction(8),
                 lambda reg: _second_kind_quartic(reg, 1),
                 lambda reg: _second_kind_quartic(reg, 2),
                 "four-fold product coefficient 1 -> 2"),
        Relation("f6_quadric", Fraction(4),
                 lambda reg: _f6_quadric(reg, 32),
                 lambda reg: _f6_quadric(reg, 33),
                 "quadric coefficient 32 -> 33"),
        Relation("chi5_product", Fraction(5),
                 lambda reg: _chi5_product(reg, 1),
                 lambda reg: _chi5_product(reg, -1),
                 "product sign flipped"),
    ]
}


def relation_names() -> list[str]:
    return list(RELATIONS)


def verify_identity(name: str, registry: FormRegistry, mutated: bool = False) -> QSeries:
    """Residual series (left minus right); identically zero on success."""
    if name not in RELATIONS:
        raise KeyError(f"unknown relation {name!r}")
    relation = RELATIONS[name]
    lhs, rhs = (relation.mutated if mutated else relation.sides)(registry)
    return lhs - rhs


# -- substitution actions on the weight-2 generators -------------------------

#: the five substitutions: three integer translations and two unimodular
#: index remaps
SUBSTITUTIONS: tuple[tuple[str, str, tuple], ...] = (
    ("translate_z0", "translate", ((1, 0), (0, 0))),
    ("translate_offdiag", "translate", ((0, 1), (1, 0))),
    ("translate_z2", "translate", ((0, 0), (0, 1))),
    ("swap_moduli", "unimodular", ((0, 1), (1, 0))),
    ("shear", "unimodular", ((1, 1), (0, 1))),
)

#: tabulated signed permutations of (F1..F5); an entry
#: (sign, j) at position i means the i-th generator is carried to sign * F_j
TABULATED_SUBSTITUTION_TABLE: dict[str, tuple[tuple[int, int], ...]] = {
    "translate_z0": ((1, 1), (-1, 2), (1, 3), (-1, 4), (1, 5)),
    "translate_offdiag": ((1, 1), (1, 2), (1, 3), (1, 4), (-1, 5)),
    "translate_z2": ((1, 1), (1, 2), (-1, 3), (-1, 4), (1, 5)),
    "swap_moduli": ((1, 1), (1, 3), (1, 2), (1, 4), (1, 5)),
    "shear": ((1, 1), (1, 2), (1, 4), (1, 3), (1, 5)),
}


def measured_substitution_table(compare_at: int = 12,
                                internal: int = 32) -> dict[str, tuple]:
    """Identify each transformed generator among +-F_j on expansions.

    The generators are built at a deeper internal truncation because the
    shear remap lowers the completeness bound; every comparison then runs
    at exactly `compare_at`.  An entry is None when the image matches no
    signed generator (which would signal a broken action).
    """
    from .qseries import translate_action, unimodular_action

    registry = FormRegistry(internal)
    fs = [registry.F[i].restrict(compare_at) if registry.F[i].truncation > compare_at
          else registry.F[i] for i in range(5)]
    table: dict[str, tuple] = {}
    for name, kind, matrix in SUBSTITUTIONS:
        row = []
        for i in range(5):
            source = registry.F[i]
            image = (translate_action(source, matrix) if kind == "translate"
                     else unimodular_action(source, matrix))
            if image.truncation < compare_at:
                raise ValueError("internal truncation too small for the remap")
            image = image.restrict(compare_at)
            found = None
            for j in range(5):
                if image == fs[j]:
                    found = (1, j + 1)
                    break
                if image == -fs[j]:
                    found = (-1, j + 1)
                    break
            row.append(found)
        table[name] = tuple(row)
    return table


# -- boundary orders ---------------------------------------------------------

@dataclass(frozen=True)
class BoundaryOrders:
    """Vanishing orders of the weight-3 differential form along q_nu = 0."""

    k0: int
    k1: int
    k2: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k0, self.k1, self.k2)


def _axis_bit(m: Char, axis: int) -> int:
    if axis == 0:
        return m.a1
    if axis == 2:
        return m.a2
    return m.a1 + m.a2 - 2 * m.a1 * m.a2


def boundary_orders(sextuple, registry: FormRegistry) -> BoundaryOrders:
    """Form orders from the characteristic bits, cross-checked on the series.

    On the level-8 grid the product of six thetas vanishes along q_nu to
    the summed bit order; that sum is even, halving moves to the level-4
    grid of the weight-3 form, and the differential form loses one more.
    A formula/series mismatch raises: it would mean an unexpected
    cancellation in the product expansion.
    """
    key = frozenset(sextuple)
    if not is_syzygetic([m for m in even_characteristics() if m not in key]):
        raise ValueError("not a sextuple complementary to a syzygetic quadruple")
    series = registry.sextuple_products[key]
    ks = []
    for axis in (0, 1, 2):
        bit_sum = sum(_axis_bit(m, axis) for m in key)
        measured = vanishing_order(series, axis)
        if measured != bit_sum:
            raise ArithmeticError(
                f"series order {measured} along axis {axis} disagrees with "
                f"bit sum {bit_sum}")
        if measured % 2 != 0:
            raise ArithmeticError("level-8 order is odd; level-4 rescaling invalid")
        ks.append(measured // 2 - 1)
    return BoundaryOrders(*ks)


def boundary_distribution(registry: FormRegistry) -> Counter:
    """Multiset of order triples over all 15 sextuples."""
    return Counter(boundary_orders(s, registry).as_tuple() for s in all_sextuples())


EXPECTED_BOUNDARY_DISTRIBUTION = Counter({
    (0, 0, 0): 8,
    (1, 1, 1): 1,
    (0, 0, 1): 2,
    (0, 1, 0): 2,
    (1, 0, 0): 2,
})


def q_parity_check(sextuple, axis: int, registry: FormRegistry) -> bool:
    """With form order one along the axis, the level-4 exponents are all even.

    On the level-8 grid that says every stored exponent on the axis is
    divisible by 4; the series is then invariant under negating that
    coordinate on the level-4 grid.
    """
    orders = boundary_orders(sextuple, registry)
    if orders.as_tuple()[axis] != 1:
        raise ValueError(f"axis {axis} does not have form order one")
    series = registry.sextuple_products[frozenset(sextuple)]
    return all(n[axis] % 4 == 0 for n in series.terms)
