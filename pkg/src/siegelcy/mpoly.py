"""Sparse multivariate polynomials over Q, rational functions, and 3-forms.

A polynomial fixes an ordered tuple of variable names and maps exponent
tuples to nonzero Fractions.  Rational functions are unreduced quotients
(equality by cross-multiplication); in every computation done here the
denominators stay monomial-like, so the missing gcd never hurts.  Ideal
membership is decided degree by degree with dense exact linear algebra,
which covers everything needed in a 6-variable ring up to degree 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

Exponent = tuple[int, ...]


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> None:
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> MPoly:
        return cls(variables, {})

    @classmethod
    def const(cls, variables: tuple[str, ...], value: int | Fraction) -> MPoly:
        c = Fraction(value)
        if c == 0:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: tuple[str, ...], name: str) -> MPoly:
        idx = variables.index(name)
        e = [0] * len(variables)
        e[idx] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    @classmethod
    def ring(cls, variables: tuple[str, ...]) -> list[MPoly]:
        """The generators of Q[variables], in order."""
        return [cls.var(variables, v) for v in variables]

    # -- ring operations ----------------------------------------------

    def _check_ring(self, other: MPoly) -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: MPoly | int | Fraction) -> MPoly:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        self._check_ring(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly | int | Fraction) -> MPoly:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other: int | Fraction) -> MPoly:
        return MPoly.const(self.vars, other) + (-self)

    def __mul__(self, other: MPoly | int | Fraction) -> MPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check_ring(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        if not self.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        return self.total_degree()

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def used_variables(self) -> set[str]:
        used: set[str] = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.vars[i])
        return used

    # -- calculus and substitution --------------------------------------

    def partial(self, name: str) -> MPoly:
        idx = self.vars.index(name)
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[idx] == 0:
                continue
            new_e = list(e)
            new_e[idx] -= 1
            key = tuple(new_e)
            terms[key] = terms.get(key, Fraction(0)) + c * e[idx]
        return MPoly(self.vars, terms)

    def substitute(self, assignment: dict[str, MPoly]) -> MPoly:
        """Substitute a polynomial for every variable that occurs in self.

        All assigned values must live in one common target ring.  An
        occurring variable without an assignment is an error, named.
        """
        for name in sorted(self.used_variables()):
            if name not in assignment:
                raise KeyError(f"no assignment for variable {name!r}")
        target_vars = None
        for value in assignment.values():
            if target_vars is None:
                target_vars = value.vars
            elif value.vars != target_vars:
                raise ValueError("assignment values live in different rings")
        if target_vars is None:
            target_vars = self.vars
        result = MPoly.zero(target_vars)
        for e, c in self.terms.items():
            term = MPoly.const(target_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * (assignment[self.vars[i]] ** k)
            result = result + term
        return result

    def evaluate(self, values: dict[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(values[v]) for v in self.vars]
        for e, c in self.terms.items():
            prod = c
            for i, k in enumerate(e):
                if k:
                    prod *= vals[i] ** k
            total += prod
        return total

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({self.vars!r}, {self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            factors = [f"{self.vars[i]}^{k}" if k > 1 else self.vars[i]
                       for i, k in enumerate(e) if k]
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        return " + ".join(parts).replace("+ -", "- ")


def monomials_of_degree(variables: tuple[str, ...], degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, lexicographic."""
    n = len(variables)
    if degree < 0:
        return []
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, pos + 1)

    if n == 0:
        return [()] if degree == 0 else []
    rec([], degree, 0)
    return out


def solve_exact(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Solve sum_j c_j * columns[j] = target over Q; None if inconsistent.

    Plain Gauss elimination on the augmented matrix; returns one solution
    with free coefficients set to zero.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if aug[r][ncols] != 0:
            return None
    solution = [Fraction(0)] * ncols
    for r, c in pivots:
        solution[c] = aug[r][ncols]
    return solution


@dataclass(frozen=True)
class MembershipCertificate:
    """Cofactors q_i with f = sum q_i * g_i, all in one graded degree."""

    cofactors: tuple[MPoly, ...]

    def reexpand(self, gens: list[MPoly]) -> MPoly:
        total = MPoly.zero(gens[0].vars)
        for q, g in zip(self.cofactors, gens):
            total = total + q * g
        return total


def graded_membership(f: MPoly, gens: list[MPoly]) -> MembershipCertificate | None:
    """Decide membership of f in the ideal (gens) within f's graded degree.

    All inputs must be homogeneous.  The degree-d piece of the ideal is
    spanned by {g_i * m : m monomial of degree d - deg g_i}; membership is
    an exact linear solve against that span.  Returns the combination on
    success, None if f is not a member.
    """
    if not f.is_homogeneous():
        raise ValueError("membership input is not homogeneous")
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("ideal generator is not homogeneous")
        if g.vars != f.vars:
            raise ValueError("generator lives in a different ring")
    if f.is_zero():
        return MembershipCertificate(tuple(MPoly.zero(f.vars) for _ in gens))
    d = f.homogeneous_degree()
    rows = monomials_of_degree(f.vars, d)
    row_index = {e: i for i, e in enumerate(rows)}
    columns: list[list[Fraction]] = []
    labels: list[tuple[int, Exponent]] = []
    for gi, g in enumerate(gens):
        if g.is_zero():
            continue
        dg = g.homogeneous_degree()
        if dg > d:
            continue
        for mono in monomials_of_degree(f.vars, d - dg):
            col = [Fraction(0)] * len(rows)
            for e, c in g.terms.items():
                shifted = tuple(a + b for a, b in zip(e, mono))
                col[row_index[shifted]] = c
            columns.append(col)
            labels.append((gi, mono))
    target = [f.terms.get(e, Fraction(0)) for e in rows]
    solution = solve_exact(columns, target)
    if solution is None:
        return None
    cofactors = [MPoly.zero(f.vars) for _ in gens]
    for coeff, (gi, mono) in zip(solution, labels):
        if coeff != 0:
            cofactors[gi] = cofactors[gi] + MPoly(f.vars, {mono: coeff})
    return MembershipCertificate(tuple(cofactors))


class RatFn:
    """Quotient of two polynomials in one ring; denominator nonzero.

    Not kept in lowest terms by design: equality is decided by
    cross-multiplication, which is exact and avoids multivariate gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None) -> None:
        if den is None:
            den = MPoly.const(num.vars, 1)
        if num.vars != den.vars:
            raise ValueError("numerator and denominator in different rings")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.const(num.vars, 1)
        self.num = num
        self.den = den

    @classmethod
    def from_const(cls, variables: tuple[str, ...], value: int | Fraction) -> RatFn:
        return cls(MPoly.const(variables, value))

    @classmethod
    def var(cls, variables: tuple[str, ...], name: str) -> RatFn:
        return cls(MPoly.var(variables, name))

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        if isinstance(other, RatFn):
            return other
        if isinstance(other, MPoly):
            return RatFn(other)
        return RatFn.from_const(self.vars, other)

    def __add__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        o = self._coerce(other)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFn:
        return RatFn(-self.num, self.den)

    def __sub__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        return self + (-self._coerce(other))

    def __rsub__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        return self._coerce(other) + (-self)

    def __mul__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        o = self._coerce(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: RatFn | MPoly | int | Fraction) -> RatFn:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> RatFn:
        if n < 0:
            return RatFn.from_const(self.vars, 1) / (self ** (-n))
        return RatFn(self.num ** n, self.den ** n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (MPoly, int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:  # pragma: no cover - unreduced forms hash poorly
        raise TypeError("RatFn is unhashable (equality is by cross-multiplication)")

    def partial(self, name: str) -> RatFn:
        """Quotient-rule derivative, denominator squared (no reduction)."""
        dn = self.num.partial(name)
        dd = self.den.partial(name)
        return RatFn(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, values: dict[str, Fraction | int]) -> Fraction:
        den = self.den.evaluate(values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(values) / den

    def __repr__(self) -> str:
        return f"({self.num}) / ({self.den})"


def substitute_ratfn(f: MPoly, assignment: dict[str, RatFn]) -> RatFn:
    """Compose a polynomial with rational functions of a new chart."""
    for name in sorted(f.used_variables()):
        if name not in assignment:
            raise KeyError(f"no assignment for variable {name!r}")
    target_vars = None
    for value in assignment.values():
        if target_vars is None:
            target_vars = value.vars
        elif value.vars != target_vars:
            raise ValueError("assignment values live in different rings")
    if target_vars is None:
        target_vars = f.vars
    result = RatFn.from_const(target_vars, 0)
    for e, c in f.terms.items():
        term = RatFn.from_const(target_vars, c)
        for i, k in enumerate(e):
            if k:
                term = term * (assignment[f.vars[i]] ** k)
        result = result + term
    return result


def ratfn_determinant(matrix: list[list[RatFn]]) -> RatFn:
    """Exact determinant by permutation expansion (intended for n <= 4)."""
    n = len(matrix)
    variables = matrix[0][0].vars
    total = RatFn.from_const(variables, 0)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = RatFn.from_const(variables, sign)
        for i in range(n):
            prod = prod * matrix[i][perm[i]]
        total = total + prod
    return total


def mpoly_determinant(matrix: list[list[MPoly]]) -> MPoly:
    n = len(matrix)
    variables = matrix[0][0].vars
    total = MPoly.zero(variables)
    for perm in permutations(range(n)):
        prod = MPoly.const(variables, _perm_sign(perm))
        for i in range(n):
            prod = prod * matrix[i][perm[i]]
        total = total + prod
    return total


def rational_jacobian(maps: list[RatFn], variables: list[str]) -> RatFn:
    """Determinant of the 3x3 matrix of partials d maps[i] / d variables[j]."""
    if len(maps) != 3 or len(variables) != 3:
        raise ValueError("expected three maps and three variables")
    for m in maps:
        if set(variables) != set(m.vars):
            raise ValueError("maps must be rational functions of exactly the given variables")
    rows = [[m.partial(v) for v in variables] for m in maps]
    return ratfn_determinant(rows)


class ThreeForm:
    """A single-term rational 3-form f * dv_a ^ dv_b ^ dv_c on a chart.

    The wedge order is normalized to the chart's variable order; permuting
    it multiplies the coefficient by the permutation sign, and a repeated
    differential collapses the form to zero.
    """

    __slots__ = ("vars", "coeff", "wedge", "degenerate")

    def __init__(self, variables: tuple[str, ...], coeff: RatFn,
                 wedge: tuple[str, str, str], degenerate: bool = False) -> None:
        if coeff.vars != tuple(variables):
            raise ValueError("coefficient lives in a different chart")
        order = {v: i for i, v in enumerate(variables)}
        for w in wedge:
            if w not in order:
                raise ValueError(f"wedge variable {w!r} is not a chart variable")
        if len(set(wedge)) < 3:
            coeff = RatFn.from_const(tuple(variables), 0)
            wedge = tuple(sorted(set(wedge) | set(variables), key=order.get)[:3])  # type: ignore[assignment]
        else:
            idx = [order[w] for w in wedge]
            sorted_idx = sorted(idx)
            perm = tuple(sorted_idx.index(i) for i in idx)
            coeff = coeff * _perm_sign(perm)
            wedge = tuple(variables[i] for i in sorted_idx)  # type: ignore[assignment]
        self.vars = tuple(variables)
        self.coeff = coeff
        self.wedge = wedge
        self.degenerate = degenerate

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreeForm):
            return NotImplemented
        return (self.vars == other.vars and self.wedge == other.wedge
                and self.coeff == other.coeff)

    def __neg__(self) -> ThreeForm:
        return ThreeForm(self.vars, -self.coeff, self.wedge)

    def __repr__(self) -> str:
        d = " [degenerate]" if self.degenerate else ""
        return f"({self.coeff!r}) d{self.wedge[0]}^d{self.wedge[1]}^d{self.wedge[2]}{d}"


def threeform_pullback(omega: ThreeForm, substitution: dict[str, RatFn],
                       target_vars: tuple[str, ...]) -> ThreeForm:
    """Pull a 3-form back along a chart substitution.

    Each source chart variable must be assigned a rational function of the
    target chart.  The coefficient is composed with the substitution and
    each wedge differential is expanded by the chain rule.  The expansion
    must collapse to a single wedge term on the target chart (true for all
    charts used here); a substitution with identically zero Jacobian yields
    the zero form flagged as degenerate rather than an error.
    """
    for v in omega.vars:
        if v not in substitution:
            raise KeyError(f"no substitution for chart variable {v!r}")
        if substitution[v].vars != tuple(target_vars):
            raise ValueError("substitution values must live on the target chart")
    num = substitute_ratfn(omega.coeff.num, substitution)
    den = substitute_ratfn(omega.coeff.den, substitution)
    if den.is_zero():
        raise ZeroDivisionError("substitution collapses the coefficient denominator")
    coeff = num / den
    differentials = [
        {v: substitution[w].partial(v) for v in target_vars}
        for w in omega.wedge
    ]
    components: dict[tuple[str, str, str], RatFn] = {}
    tv = list(target_vars)
    for i, j, k in combinations(range(len(tv)), 3):
        sub = [[differentials[r][tv[c]] for c in (i, j, k)] for r in range(3)]
        det = ratfn_determinant(sub)
        if not det.is_zero():
            components[(tv[i], tv[j], tv[k])] = det
    if not components:
        zero = RatFn.from_const(tuple(target_vars), 0)
        wedge = tuple(tv[:3])
        return ThreeForm(tuple(target_vars), zero, wedge, degenerate=not omega.is_zero())
    if len(components) > 1:
        raise ValueError("pullback does not collapse to a single wedge term")
    (wedge, jac), = components.items()
    return ThreeForm(tuple(target_vars), coeff * jac, wedge)
