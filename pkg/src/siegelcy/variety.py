"""The projective threefold cut out by the quartic/quadric pair, its
signed-monomial symmetry group, the distinguished rational 3-form, the 15
singular curves, and the symbolic Jacobian identities.

Two coordinate systems are carried: the y-system from the even-weight ring
generators and the x-system from the doubled-argument generators, linked by
an explicit integer matrix (y5 = x5).  All checks are exact: ideal
membership by graded linear algebra, form pullbacks by the chain rule on
rational functions, curve singularity by identical vanishing of every 2x2
minor of the Jacobian along a parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .mpoly import (
    MPoly,
    MembershipCertificate,
    RatFn,
    ThreeForm,
    graded_membership,
    mpoly_determinant,
    rational_jacobian,
    threeform_pullback,
)

Y_VARS = ("y0", "y1", "y2", "y3", "y4", "y5")
X_VARS = ("x0", "x1", "x2", "x3", "x4", "x5")


@dataclass(frozen=True)
class Presentation:
    variables: tuple[str, ...]
    quartic: MPoly
    quadric: MPoly

    def gens(self) -> list[MPoly]:
        return [self.quartic, self.quadric]


def presentation_y() -> Presentation:
    y0, y1, y2, y3, y4, y5 = MPoly.ring(Y_VARS)
    quartic = y5 ** 4 - y0 * y1 * y2 * (y0 + y1 + y2 + y3 + y4)
    quadric = 2 * y5 ** 2 - (y0 * y1 + y0 * y2 + y1 * y2 - y3 * y4)
    return Presentation(Y_VARS, quartic, quadric)


def presentation_x() -> Presentation:
    x0, x1, x2, x3, x4, x5 = MPoly.ring(X_VARS)
    quartic = (16 * x4 ** 4 + x0 ** 2 * x4 ** 2
               + x1 ** 2 * x2 ** 2 + x1 ** 2 * x3 ** 2 + x2 ** 2 * x3 ** 2
               - x0 * x1 * x2 * x3 - 4 * x4 ** 2 * (x1 ** 2 + x2 ** 2 + x3 ** 2))
    quadric = x5 ** 2 - (x0 ** 2 - 4 * x1 ** 2 - 4 * x2 ** 2 - 4 * x3 ** 2
                         + 32 * x4 ** 2)
    return Presentation(X_VARS, quartic, quadric)


#: y = COORD_MATRIX * x on the first five coordinates, y5 = x5
COORD_MATRIX: tuple[tuple[int, ...], ...] = (
    (1, -2, -2, 2, 0, 0),
    (1, -2, 2, -2, 0, 0),
    (1, 2, 2, 2, 0, 0),
    (-1, 2, -2, -2, -8, 0),
    (-1, 2, -2, -2, 8, 0),
    (0, 0, 0, 0, 0, 1),
)


def _invert_fraction_matrix(rows) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def coord_matrix_det() -> Fraction:
    mat = [[MPoly.const(("t",), COORD_MATRIX[i][j]) for j in range(6)] for i in range(6)]
    det = mpoly_determinant(mat)
    return det.coefficient((0,))


def substitute_linear(f: MPoly, matrix, source_vars, target_vars) -> MPoly:
    """Compose f(source) with source_i = sum_j matrix[i][j] * target_j."""
    gens = MPoly.ring(target_vars)
    assignment = {}
    for i, v in enumerate(source_vars):
        expr = MPoly.zero(target_vars)
        for j in range(len(target_vars)):
            if matrix[i][j]:
                expr = expr + Fraction(matrix[i][j]) * gens[j]
        assignment[v] = expr
    return f.substitute(assignment)


@dataclass(frozen=True)
class CoordinateChangeReport:
    quadric_scalar: Fraction
    quartic_certificate: MembershipCertificate
    inverse_quadric_scalar: Fraction
    inverse_quartic_certificate: MembershipCertificate
    matrix_determinant: Fraction


def coordinate_change_check() -> CoordinateChangeReport:
    """Both presentations define the same ideal under the tabulated matrix.

    The y-quadric lands exactly on a rational multiple of the x-quadric
    (the scalar is pinned by the x5^2 coefficient); the y-quartic lands in
    the degree-4 piece of the x-ideal, and both statements hold in the
    inverse direction with the inverse matrix.
    """
    pres_y = presentation_y()
    pres_x = presentation_x()

    sub_quadric = substitute_linear(pres_y.quadric, COORD_MATRIX, Y_VARS, X_VARS)
    x5_sq = tuple(2 if v == "x5" else 0 for v in X_VARS)
    scalar = sub_quadric.coefficient(x5_sq) / pres_x.quadric.coefficient(x5_sq)
    if sub_quadric != scalar * pres_x.quadric or scalar == 0:
        raise ArithmeticError("substituted quadric is not a scalar multiple")

    sub_quartic = substitute_linear(pres_y.quartic, COORD_MATRIX, Y_VARS, X_VARS)
    cert = graded_membership(sub_quartic, pres_x.gens())
    if cert is None:
        raise ArithmeticError("substituted quartic is not in the target ideal")

    inverse = _invert_fraction_matrix(COORD_MATRIX)
    inv_quadric = substitute_linear(pres_x.quadric, inverse, X_VARS, Y_VARS)
    y5_sq = tuple(2 if v == "y5" else 0 for v in Y_VARS)
    inv_scalar = inv_quadric.coefficient(y5_sq) / pres_y.quadric.coefficient(y5_sq)
    if inv_quadric != inv_scalar * pres_y.quadric or inv_scalar == 0:
        raise ArithmeticError("inverse-substituted quadric is not a scalar multiple")

    inv_quartic = substitute_linear(pres_x.quartic, inverse, X_VARS, Y_VARS)
    inv_cert = graded_membership(inv_quartic, pres_y.gens())
    if inv_cert is None:
        raise ArithmeticError("inverse-substituted quartic is not in the source ideal")

    return CoordinateChangeReport(scalar, cert, inv_scalar, inv_cert, coord_matrix_det())


# -- signed monomial maps ---------------------------------------------------

@dataclass(frozen=True)
class SignedMonomialMap:
    """x_i -> sign[i] * x_perm[i], acting on polynomials by substitution."""

    perm: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.sign) != n:
            raise ValueError("not a signed permutation")
        if any(s not in (1, -1) for s in self.sign):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int = 6) -> SignedMonomialMap:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_cycle(cls, n: int, *cycle: int, signs=None) -> SignedMonomialMap:
        perm = list(range(n))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a] = b
        sign = list(signs) if signs else [1] * n
        return cls(tuple(perm), tuple(sign))

    @classmethod
    def sign_flip(cls, n: int, *indices: int) -> SignedMonomialMap:
        sign = [1] * n
        for i in indices:
            sign[i] = -1
        return cls(tuple(range(n)), tuple(sign))

    def __mul__(self, other: SignedMonomialMap) -> SignedMonomialMap:
        # composition of substitutions: applying other, then self
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        sign = tuple(other.sign[i] * self.sign[other.perm[i]] for i in range(len(self.perm)))
        return SignedMonomialMap(perm, sign)

    def inverse(self) -> SignedMonomialMap:
        n = len(self.perm)
        inv_perm = [0] * n
        for i, p in enumerate(self.perm):
            inv_perm[p] = i
        sign = tuple(self.sign[inv_perm[i]] for i in range(n))
        return SignedMonomialMap(tuple(inv_perm), sign)

    def perm_parity_on(self, indices: tuple[int, ...]) -> int:
        """Sign of the permutation restricted to an invariant index set."""
        parity = 1
        seen: set[int] = set()
        for start in indices:
            if start in seen:
                continue
            length = 0
            j = start
            while j not in seen:
                seen.add(j)
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                parity = -parity
        return parity

    def negate_all(self) -> SignedMonomialMap:
        return SignedMonomialMap(self.perm, tuple(-s for s in self.sign))

    def apply(self, f: MPoly) -> MPoly:
        """Substitute x_i -> sign[i] * x_perm[i]; the pullback f o sigma."""
        gens = MPoly.ring(f.vars)
        assignment = {
            v: Fraction(self.sign[i]) * gens[self.perm[i]]
            for i, v in enumerate(f.vars)
        }
        return f.substitute(assignment)

    def move_point(self, point: tuple) -> tuple:
        """sigma(point) for the coordinate map sigma behind the substitution."""
        return tuple(self.sign[i] * point[self.perm[i]] for i in range(len(point)))


def group_closure(generators: list[SignedMonomialMap],
                  bound: int = 10_000) -> set[SignedMonomialMap]:
    seen = {SignedMonomialMap.identity(len(generators[0].perm))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                p = g * h
                if p not in seen:
                    if len(seen) >= bound:
                        raise RuntimeError(f"closure exceeded the safety bound {bound}")
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def symmetry_generators() -> list[SignedMonomialMap]:
    """The three families: coordinate swaps of x1..x3 compensated by the
    last coordinate's sign on odd permutations, double sign flips inside
    x1..x3, and the sign flip of x4."""
    swap12 = SignedMonomialMap((0, 2, 1, 3, 4, 5), (1, 1, 1, 1, 1, -1))
    cycle = SignedMonomialMap((0, 2, 3, 1, 4, 5), (1,) * 6)
    flip12 = SignedMonomialMap.sign_flip(6, 1, 2)
    flip23 = SignedMonomialMap.sign_flip(6, 2, 3)
    flip4 = SignedMonomialMap.sign_flip(6, 4)
    return [swap12, cycle, flip12, flip23, flip4]


def ambient_group() -> set[SignedMonomialMap]:
    """Permutations of x1..x3 combined with all sign changes of x1..x5."""
    swap12 = SignedMonomialMap((0, 2, 1, 3, 4, 5), (1,) * 6)
    cycle = SignedMonomialMap((0, 2, 3, 1, 4, 5), (1,) * 6)
    flips = [SignedMonomialMap.sign_flip(6, i) for i in range(1, 6)]
    return group_closure([swap12, cycle] + flips)


def equation_invariance(g: SignedMonomialMap, pres: Presentation):
    """Signs (quartic, quadric) when g fixes both up to sign, else None."""
    signs = []
    for f in pres.gens():
        image = g.apply(f)
        if image == f:
            signs.append(1)
        elif image == -f:
            signs.append(-1)
        else:
            return None
    return tuple(signs)


# -- the distinguished 3-form ------------------------------------------------

OMEGA_CHART = ("u0", "u1", "u2", "u3", "u5")


def omega_form() -> ThreeForm:
    """The rational 3-form in the affine chart dividing by the 5th coordinate.

    The homogeneous expression has degree zero, so the chart loses nothing:
    with u_i = x_i / x_4 the coefficient is 1 / ((u1*u2*u3 - 2*u0) * u5).
    """
    u0, u1, u2, u3, u5 = MPoly.ring(OMEGA_CHART)
    coeff = RatFn(MPoly.const(OMEGA_CHART, 1), (u1 * u2 * u3 - 2 * u0) * u5)
    return ThreeForm(OMEGA_CHART, coeff, ("u1", "u2", "u3"))


_CHART_INDEX = {0: "u0", 1: "u1", 2: "u2", 3: "u3", 5: "u5"}


def chart_substitution(g: SignedMonomialMap) -> dict[str, RatFn]:
    """The induced substitution on the affine chart (requires x4 -> ±x4)."""
    if g.perm[4] != 4:
        raise ValueError("map must fix the 5th coordinate up to sign")
    s4 = g.sign[4]
    subs = {}
    for i, name in _CHART_INDEX.items():
        target = g.perm[i]
        if target not in _CHART_INDEX:
            raise ValueError("map mixes chart variables with the 5th coordinate")
        factor = Fraction(g.sign[i] * s4)
        subs[name] = RatFn(factor * MPoly.var(OMEGA_CHART, _CHART_INDEX[target]))
    return subs


def omega_pullback_sign(g: SignedMonomialMap) -> int:
    omega = omega_form()
    pulled = threeform_pullback(omega, chart_substitution(g), OMEGA_CHART)
    if pulled == omega:
        return 1
    if pulled == -omega:
        return -1
    raise ArithmeticError("pullback is not proportional to the form")


@dataclass(frozen=True)
class OmegaStabilizerReport:
    ambient_order: int
    equation_fixing_order: int
    stabilizer_order: int
    contains_swap_generators: bool
    contains_double_flip_generators: bool
    x4_flip_sign: int
    x4_x5_flip_sign: int
    x4_coset_description: str
    projective_order: int
    stabilizer: frozenset[SignedMonomialMap]


def omega_stabilizer() -> OmegaStabilizerReport:
    """Exhaustive scan of the ambient signed-permutation group.

    The subgroup fixing both defining equations has order 96; the pullback
    sign on the 3-form is a character of it whose kernel has order 48.
    The sign-flip of the 5th coordinate alone negates the form; composed
    with the last coordinate's flip it preserves it.
    """
    pres = presentation_x()
    ambient = ambient_group()
    fixing = [g for g in ambient if equation_invariance(g, pres) == (1, 1)]
    stab = [g for g in fixing if omega_pullback_sign(g) == 1]

    swap12 = SignedMonomialMap((0, 2, 1, 3, 4, 5), (1, 1, 1, 1, 1, -1))
    cycle = SignedMonomialMap((0, 2, 3, 1, 4, 5), (1,) * 6)
    flips = [SignedMonomialMap.sign_flip(6, 1, 2), SignedMonomialMap.sign_flip(6, 2, 3),
             SignedMonomialMap.sign_flip(6, 1, 3)]
    stab_set = set(stab)
    contains_swaps = swap12 in stab_set and cycle in stab_set
    contains_flips = all(f in stab_set for f in flips)

    x4_flip = SignedMonomialMap.sign_flip(6, 4)
    x4_x5_flip = SignedMonomialMap.sign_flip(6, 4, 5)

    # in the x4-flip coset of the stabilizer the 5th-coordinate sign always
    # compensates the permutation parity
    coset = [g for g in stab if g.sign[4] == -1]
    compensated = all(
        g.sign[5] == -g.perm_parity_on((1, 2, 3)) for g in coset
    )
    description = ("every stabilizer element flipping the 4th coordinate also "
                   "flips the 5th relative to the permutation parity"
                   if compensated else "no uniform description found")

    neg_id = SignedMonomialMap.identity(6).negate_all()
    projective_order = len(stab) // 2 if neg_id in stab_set else len(stab)

    return OmegaStabilizerReport(
        ambient_order=len(ambient),
        equation_fixing_order=len(fixing),
        stabilizer_order=len(stab),
        contains_swap_generators=contains_swaps,
        contains_double_flip_generators=contains_flips,
        x4_flip_sign=omega_pullback_sign(x4_flip),
        x4_x5_flip_sign=omega_pullback_sign(x4_x5_flip),
        x4_coset_description=description,
        projective_order=projective_order,
        stabilizer=frozenset(stab),
    )


# -- singular curves -----------------------------------------------------------

PARAM_VARS = ("t", "u")


@dataclass(frozen=True)
class CurveRep:
    """Ideal generators plus a two-parameter polynomial parametrization."""

    name: str
    ideal: tuple[MPoly, ...]
    param: tuple[MPoly, ...]


def quadric_curve_y() -> CurveRep:
    y0, y1, y2, y3, y4, y5 = MPoly.ring(Y_VARS)
    t, u = MPoly.ring(PARAM_VARS)
    ideal = (y0 + y4, y1 + y4, y3 - y4, y2 * y4 + y5 ** 2)
    param = (-(t ** 2), -(t ** 2), -(u ** 2), t ** 2, t ** 2, t * u)
    return CurveRep("quadric", ideal, param)


def line_curve_y() -> CurveRep:
    y0, y1, y2, y3, y4, y5 = MPoly.ring(Y_VARS)
    t, u = MPoly.ring(PARAM_VARS)
    ideal = (y0, y2, y3, y5)
    zero = MPoly.zero(PARAM_VARS)
    param = (zero, t, zero, zero, u, zero)
    return CurveRep("line", ideal, param)


def curve_to_x(curve: CurveRep) -> CurveRep:
    """Transport a y-curve to x-coordinates through the tabulated matrix."""
    ideal = tuple(substitute_linear(f, COORD_MATRIX, Y_VARS, X_VARS)
                  for f in curve.ideal)
    inverse = _invert_fraction_matrix(COORD_MATRIX)
    param = []
    for i in range(6):
        expr = MPoly.zero(PARAM_VARS)
        for j in range(6):
            if inverse[i][j]:
                expr = expr + inverse[i][j] * curve.param[j]
        param.append(expr)
    return CurveRep(curve.name, ideal, tuple(param))


def act_on_curve(g: SignedMonomialMap, curve: CurveRep) -> CurveRep:
    """Image curve: V(f o sigma_g) carries the points sigma_g^-1(P)."""
    ginv = g.inverse()
    ideal = tuple(g.apply(f) for f in curve.ideal)
    param = tuple(
        Fraction(ginv.sign[i]) * curve.param[ginv.perm[i]] for i in range(6)
    )
    return CurveRep(curve.name, ideal, param)


def _rref(rows: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0])
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        mat[row] = [v / pv for v in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        row += 1
    return tuple(tuple(r) for r in mat[:row] if any(v != 0 for v in r))


def canonical_curve_key(curve: CurveRep):
    """Hashable invariant of the curve's ideal: reduced row echelon form of
    the linear part plus the non-linear generator reduced modulo it."""
    linear = [f for f in curve.ideal if f.total_degree() == 1]
    higher = [f for f in curve.ideal if f.total_degree() > 1]
    variables = curve.ideal[0].vars
    rows = [[f.coefficient(tuple(int(k == i) for k in range(6))) for i in range(6)]
            for f in linear]
    rref = _rref(rows)
    if not higher:
        return (rref, None)
    if len(higher) != 1:
        raise ValueError("expected at most one non-linear generator")
    # eliminate pivot variables from the quadric
    gens = MPoly.ring(variables)
    assignment = {v: gens[i] for i, v in enumerate(variables)}
    for r in rref:
        pivot = next(i for i, v in enumerate(r) if v != 0)
        expr = MPoly.zero(variables)
        for j in range(pivot + 1, 6):
            if r[j]:
                expr = expr - r[j] * gens[j]
        assignment[variables[pivot]] = expr
    reduced = higher[0].substitute(assignment)
    if reduced.is_zero():
        return (rref, None)
    lead = min(reduced.terms)
    normalized = reduced * (1 / reduced.terms[lead])
    return (rref, tuple(sorted(normalized.terms.items())))


@dataclass(frozen=True)
class CurveCheckReport:
    name: str
    param_satisfies_ideal: bool
    equations_in_ideal: bool
    minors_vanish: bool

    def all_ok(self) -> bool:
        return (self.param_satisfies_ideal and self.equations_in_ideal
                and self.minors_vanish)


def jacobian_rows(pres: Presentation) -> list[list[MPoly]]:
    return [[f.partial(v) for v in pres.variables] for f in pres.gens()]


def curve_checks(curve: CurveRep, pres: Presentation) -> CurveCheckReport:
    """Containment and singularity certificates along one curve."""
    assignment = {v: curve.param[i] for i, v in enumerate(pres.variables)}
    param_ok = all(f.substitute(assignment).is_zero() for f in curve.ideal)
    member_ok = all(
        graded_membership(f, list(curve.ideal)) is not None for f in pres.gens()
    )
    rows = jacobian_rows(pres)
    minors_ok = True
    for i, j in combinations(range(6), 2):
        minor = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
        if not minor.substitute(assignment).is_zero():
            minors_ok = False
            break
    return CurveCheckReport(curve.name, param_ok, member_ok, minors_ok)


def curve_orbits(group: frozenset[SignedMonomialMap] | set[SignedMonomialMap],
                 seeds: list[CurveRep]) -> list[list[CurveRep]]:
    """Orbit decomposition of the seed curves, keyed by canonical ideals."""
    orbits: list[list[CurveRep]] = []
    seen: set = set()
    for seed in seeds:
        orbit: dict = {}
        for g in group:
            image = act_on_curve(g, seed)
            key = canonical_curve_key(image)
            if key not in orbit:
                orbit[key] = image
        keys = set(orbit)
        if keys & seen:
            raise ArithmeticError("orbits are not disjoint")
        seen |= keys
        orbits.append(list(orbit.values()))
    return orbits


#: a smooth rational point of the intersection, used as a rank-2 control
SMOOTH_CONTROL_POINT_Y = (
    Fraction(1), Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(0), Fraction(1),
)


def jacobian_rank_at(pres: Presentation, point) -> int:
    values = {v: point[i] for i, v in enumerate(pres.variables)}
    rows = [[f.partial(v).evaluate(values) for v in pres.variables]
            for f in pres.gens()]
    rref = _rref(rows)
    return len(rref)


def point_on_variety(pres: Presentation, point) -> bool:
    values = {v: point[i] for i, v in enumerate(pres.variables)}
    return all(f.evaluate(values) == 0 for f in pres.gens())


# -- rational-map Jacobian identities --------------------------------------

G_VARS = ("g1", "g2", "g3")


def nested_radical_maps() -> list[RatFn]:
    """The three symmetric combinations driving the coordinate change."""
    g1, g2, g3 = (RatFn.var(G_VARS, v) for v in G_VARS)
    return [
        g1 * g2 / g3 + g3 / (g1 * g2),
        g1 * g3 / g2 + g2 / (g1 * g3),
        g2 * g3 / g1 + g1 / (g2 * g3),
    ]


def jacobian_closed_form(scale: int = 4) -> RatFn:
    g1, g2, g3 = MPoly.ring(G_VARS)
    num = (scale * (g3 ** 2 - g1 ** 2 * g2 ** 2)
           * (g2 ** 2 - g1 ** 2 * g3 ** 2)
           * (g1 ** 2 - g2 ** 2 * g3 ** 2))
    den = (g1 * g2 * g3) ** 4
    return RatFn(num, den)


def jacobian_identity_check(scale: int = 4) -> bool:
    jac = rational_jacobian(nested_radical_maps(), list(G_VARS))
    return jac == jacobian_closed_form(scale)


H_VARS = ("f1", "f2", "f3", "f4",
          "d01", "d02", "d03", "d04",
          "d11", "d12", "d13", "d14",
          "d21", "d22", "d23", "d24")


def _bordered_and_affine() -> tuple[MPoly, MPoly, MPoly]:
    """The bordered 4x4 determinant (functions in the top row), the
    numerator determinant of the affine Jacobian, and the f4 symbol.

    With quotient-rule entries (d_ij*f4 - f_j*d_i4)/f4^2 the affine
    Jacobian is affine_num / f4^6, so the comparison below is between
    bordered * f4^2 and a signed multiple of affine_num.
    """
    gens = {v: MPoly.var(H_VARS, v) for v in H_VARS}
    f = [gens[f"f{j}"] for j in range(1, 5)]
    d = [[gens[f"d{i}{j}"] for j in range(1, 5)] for i in range(3)]
    bordered = mpoly_determinant([
        [f[0], f[1], f[2], f[3]],
        [d[0][0], d[0][1], d[0][2], d[0][3]],
        [d[1][0], d[1][1], d[1][2], d[1][3]],
        [d[2][0], d[2][1], d[2][2], d[2][3]],
    ])
    f4 = f[3]
    numerators = [[d[i][j] * f4 - f[j] * d[i][3] for j in range(3)] for i in range(3)]
    return bordered, mpoly_determinant(numerators), f4


def bordered_jacobian_sign() -> int | None:
    """Exact scalar s with bordered = s * f4^4 * affine Jacobian, else None.

    Expanding the bordered determinant along its function row shows
    s = -1 for this row placement (moving the function row below the
    partials, an odd rearrangement in four rows, flips it to +1).
    """
    bordered, affine_num, f4 = _bordered_and_affine()
    lhs = bordered * f4 ** 2
    if lhs == affine_num:
        return 1
    if lhs == -affine_num:
        return -1
    return None


def homogeneous_jacobian_identity() -> bool:
    """Literal check of 'bordered = f4^4 * affine Jacobian' with the
    function row on top; see bordered_jacobian_sign for the measured sign."""
    return bordered_jacobian_sign() == 1


def homogeneous_jacobian_specialization_sign() -> int | None:
    """Scalar relating the bordered determinant to the plain 3x3 Jacobian
    after setting f4 = 1 with vanishing partials."""
    gens = {v: MPoly.var(H_VARS, v) for v in H_VARS}
    one = MPoly.const(H_VARS, 1)
    zero = MPoly.zero(H_VARS)
    f = [gens["f1"], gens["f2"], gens["f3"], one]
    d = [[gens[f"d{i}{j}"] for j in range(1, 4)] + [zero] for i in range(3)]
    bordered = mpoly_determinant([f, d[0], d[1], d[2]])
    plain = mpoly_determinant([[d[i][j] for j in range(3)] for i in range(3)])
    if bordered == plain:
        return 1
    if bordered == -plain:
        return -1
    return None


# -- blow-up charts -----------------------------------------------------------

Z_VARS = ("z1", "z2", "z3")

SignVector = tuple[int, int, int]


@dataclass(frozen=True)
class BlowupChart:
    name: str
    target_vars: tuple[str, str, str]
    #: substitution expressing the source coordinates on the blow-up chart
    substitution_monomials: dict[str, tuple[int, ...]]
    expected_zero_divisors: tuple[str, ...]
    group: tuple[SignVector, ...]
    #: how a sign vector on (z1, z2, z3) transports to the chart
    transform: str  # "first_ratio" (w = z1/z2) or "double_ratio" (w = z1/(z2 z3))
    expected_transformed: frozenset[SignVector]


def case1_chart() -> BlowupChart:
    return BlowupChart(
        name="line_blowup",
        target_vars=("w1", "z2", "z3"),
        substitution_monomials={"z1": (1, 1, 0), "z2": (0, 1, 0), "z3": (0, 0, 1)},
        expected_zero_divisors=("z2",),
        group=((1, 1, 1), (-1, -1, 1)),
        transform="first_ratio",
        expected_transformed=frozenset({(1, 1, 1), (1, -1, 1)}),
    )


def case3_chart() -> BlowupChart:
    return BlowupChart(
        name="axis_blowup",
        target_vars=("u1", "z2", "z3"),
        substitution_monomials={"z1": (1, 1, 1), "z2": (0, 1, 0), "z3": (0, 0, 1)},
        expected_zero_divisors=("z2", "z3"),
        group=((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)),
        transform="double_ratio",
        expected_transformed=frozenset({(1, 1, 1), (1, -1, 1), (1, 1, -1), (1, -1, -1)}),
    )


@dataclass(frozen=True)
class BlowupReport:
    name: str
    pullback_matches: bool
    zero_divisors: tuple[str, ...]
    transformed_group_matches: bool
    inverted_identity_holds: bool


def blowup_chart_check(chart: BlowupChart) -> BlowupReport:
    """Chain-rule pullback of dz1^dz2^dz3 and the transported group action.

    Also checks the inverted reading of the chart identity (the divisor
    coefficient moved to the source side), which the chain rule refutes;
    the report records that it fails rather than silently fixing it.
    """
    source = ThreeForm(Z_VARS, RatFn.from_const(Z_VARS, 1), Z_VARS)
    tv = chart.target_vars
    gens = MPoly.ring(tv)
    subs = {}
    for zname, expo in chart.substitution_monomials.items():
        mono = MPoly(tv, {tuple(expo): Fraction(1)})
        subs[zname] = RatFn(mono)
    pulled = threeform_pullback(source, subs, tv)
    divisor = MPoly.const(tv, 1)
    for name in chart.expected_zero_divisors:
        divisor = divisor * MPoly.var(tv, name)
    expected = ThreeForm(tv, RatFn(divisor), tv)
    matches = pulled == expected
    inverted = ThreeForm(tv, RatFn(MPoly.const(tv, 1), divisor), tv)
    inverted_holds = pulled == inverted

    transformed = set()
    for s1, s2, s3 in chart.group:
        if chart.transform == "first_ratio":
            transformed.add((s1 * s2, s2, s3))
        else:
            transformed.add((s1 * s2 * s3, s2, s3))
    group_ok = transformed == set(chart.expected_transformed)
    return BlowupReport(chart.name, matches, chart.expected_zero_divisors,
                        group_ok, inverted_holds)
