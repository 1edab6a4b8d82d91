"""Rational and degree-2 algebraic solutions of u' + u^2 = r, r = -R/2.

This implements the first two cases of Kovacic's algorithm for
psi'' = r psi, plus the order screen of the third, working exactly over
Q and single quadratic extensions Q(sqrt(m)).

The local data at each pole c of r and at infinity produces candidate
exponents; sign families whose degree count d comes out a nonnegative
integer yield an ansatz

    u = theta + P'/P

with P monic of degree d found by an undetermined-coefficients linear
solve.  Every returned certificate is re-verified by exact substitution,
so a positive answer is unconditional.  A ``None`` answer is equally
unconditional: candidate sets are finite and are exhausted with exact
integrality tests (square roots of distinct squarefree integers are
linearly independent over Q, so surd cancellations are decided exactly).

Situations that would require leaving Q(sqrt(m)) raise
``UnsupportedField``: pole places of degree >= 3, exponents in nested or
biquadratic extensions, and certificates whose coefficients are not
rational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NecessaryConditionFail, UnsupportedField
from .linalg import solve_linear
from .linear_ode import riccati_of
from .ratfunc import (Polynomial, QuadRat, RationalFunction, order_at_infinity,
                      poly_gcd, quadrat_sqrt, rf_sqrt, scalar_conjugate,
                      squarefree_and_roots)


def riccati_normal(R: RationalFunction) -> RationalFunction:
    """The right-hand side r = -R/2 of u' + u^2 = r."""
    return -R * Fraction(1, 2)


# ----------------------------------------------------------------------
# exponents with a tracked surd part
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Alpha:
    """Candidate exponent rat + coef*sqrt(m); m = 0 for rational values."""

    rat: Fraction
    coef: Fraction
    m: int

    @staticmethod
    def of(value) -> "Alpha":
        if isinstance(value, QuadRat):
            return Alpha(value.rat, value.coef, value.disc)
        return Alpha(Fraction(value), Fraction(0), 0)

    def value(self):
        return QuadRat.make(self.rat, self.coef, self.m) if self.m else self.rat


def _alpha_pair_from_b(b) -> tuple[Alpha, Alpha]:
    """alpha = (1 +- sqrt(1+4b)) / 2, exactly."""
    root = quadrat_sqrt(1 + 4 * b)
    if root is None:
        raise UnsupportedField("local exponent leaves the quadratic field")
    plus = (1 + root) * Fraction(1, 2)
    minus = (1 - root) * Fraction(1, 2)
    return Alpha.of(plus), Alpha.of(minus)


# ----------------------------------------------------------------------
# local data at poles and infinity
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleData:
    """Case data at one split pole of r."""

    point: object            # Fraction | QuadRat
    order: int
    laurent: tuple           # coefficients of (x-c)^(-order), (x-c)^(-order+1), ...
    sqrt_part: RationalFunction | None   # [sqrt r]_c, None when unused
    alphas: tuple | None     # (Alpha plus, Alpha minus), None if case 1 impossible here
    e_set: tuple             # case 2 candidate integers


@dataclass(frozen=True)
class InfinityData:
    order: int
    sqrt_part: RationalFunction | None
    sqrt_lead: object | None
    alphas: tuple | None
    e_set: tuple


@dataclass(frozen=True)
class LocalExponentData:
    """All local exponent data of r = -R/2 used by the case searches."""

    r: RationalFunction
    poles: tuple
    infinity: InfinityData


def _split_pole_points(r: RationalFunction) -> list[tuple[object, int]]:
    points = []
    for sf in squarefree_and_roots(r.den):
        if sf.roots is None:
            raise UnsupportedField(
                f"pole place of degree {sf.factor.degree} cannot be split over Q(sqrt(d))")
        for root in sf.roots:
            points.append((root, sf.multiplicity))
    return points


def _pole_case1(point, order: int, laurent) -> tuple[RationalFunction | None, tuple | None]:
    """[sqrt r]_c and the exponent pair, or (None, None) if order is odd > 1."""
    x = Polynomial.x()
    if order == 1:
        one = Alpha(Fraction(1), Fraction(0), 0)
        return RationalFunction(Polynomial()), (one, one)
    if order == 2:
        return RationalFunction(Polynomial()), _alpha_pair_from_b(laurent[0])
    if order % 2:
        return None, None
    nu = order // 2
    lead = quadrat_sqrt(laurent[0])
    if lead is None:
        raise UnsupportedField("Laurent square root leaves the quadratic field")
    # u[i] is the coefficient of (x-c)^(-i), i = nu..2, matched top down
    u = {nu: lead}
    for k in range(1, nu - 1):
        # coefficient of (x-c)^(-2 nu + k) in [sqrt r]^2 must equal laurent[k]
        acc = 0
        for i in range(nu - k + 1, nu):
            j = 2 * nu - k - i
            if nu >= j >= 2:
                acc = acc + u[i] * u[j]
        u[nu - k] = (laurent[k] - acc) / (2 * lead)
    # b is the (x-c)^(-(nu+1)) coefficient of r - [sqrt r]^2
    sq_coeff = 0
    for i in range(2, nu + 1):
        j = nu + 1 - i
        if nu >= j >= 2:
            sq_coeff = sq_coeff + u[i] * u[j]
    b = laurent[order - nu - 1] - sq_coeff
    ratio = b / lead
    plus = (ratio + nu) * Fraction(1, 2)
    minus = (-ratio + nu) * Fraction(1, 2)
    sqrt_part = RationalFunction(Polynomial())
    for i in range(2, nu + 1):
        sqrt_part = sqrt_part + RationalFunction(Polynomial([u[i]]),
                                                 Polynomial([-point, 1]) ** i)
    return sqrt_part, (Alpha.of(plus), Alpha.of(minus))


def _pole_e_set(order: int, laurent) -> tuple:
    if order == 1:
        return (4,)
    if order == 2:
        entries = {2}
        root = quadrat_sqrt(1 + 4 * laurent[0])
        if isinstance(root, Fraction):
            for k in (2, -2):
                v = 2 + k * root
                if v.denominator == 1:
                    entries.add(int(v))
        return tuple(sorted(entries))
    return (order,)


def _infinity_data(r: RationalFunction) -> InfinityData:
    o = order_at_infinity(r)
    if o > 2:
        return InfinityData(o, None, None,
                            (Alpha(Fraction(0), Fraction(0), 0), Alpha(Fraction(1), Fraction(0), 0)),
                            (0, 2, 4))
    if o == 2:
        _, coeffs = r.expansion_at_infinity(1)
        b = coeffs[0]
        entries = {2}
        root = quadrat_sqrt(1 + 4 * b)
        if isinstance(root, Fraction):
            for k in (2, -2):
                v = 2 + k * root
                if v.denominator == 1:
                    entries.add(int(v))
        return InfinityData(o, None, None, _alpha_pair_from_b(b), tuple(sorted(entries)))
    # order < 2: case 1 needs it even, case 2 keeps the bare order
    if o % 2 == 0:
        dinf = -o
        nu = dinf // 2
        top, coeffs = r.expansion_at_infinity(dinf + 2)
        assert top == dinf
        lead = quadrat_sqrt(coeffs[0])
        if lead is None:
            raise UnsupportedField("sqrt part at infinity leaves the quadratic field")
        # u[i] is the x^i coefficient of [sqrt r]_inf, i = nu..0
        u = {nu: lead}
        for k in range(1, nu + 1):
            acc = 0
            for i in range(nu - k + 1, nu + 1):
                j = 2 * nu - k - i
                if 0 <= j <= nu and j in u and i in u:
                    acc = acc + u[i] * u[j]
            u[nu - k] = (coeffs[k] - acc) / (2 * lead)
        sqrt_poly = Polynomial([u[i] for i in range(0, nu + 1)])
        diff = r - RationalFunction(sqrt_poly * sqrt_poly)
        b = _coeff_at_infinity(diff, nu - 1)
        ratio = b / lead
        plus = (ratio - nu) * Fraction(1, 2)
        minus = (-ratio - nu) * Fraction(1, 2)
        return InfinityData(o, RationalFunction(sqrt_poly), lead,
                            (Alpha.of(plus), Alpha.of(minus)), (o,))
    return InfinityData(o, None, None, None, (o,))


def _coeff_at_infinity(rf: RationalFunction, power: int):
    """Coefficient of x^power in the expansion of rf at infinity."""
    if rf.is_zero():
        return Fraction(0)
    top, coeffs = rf.expansion_at_infinity(max(1, top_terms := (rf.num.degree - rf.den.degree) - power + 1))
    if top < power:
        return Fraction(0)
    idx = top - power
    return coeffs[idx] if idx < len(coeffs) else Fraction(0)


def local_exponent_data(R: RationalFunction) -> LocalExponentData:
    """Split poles of r = -R/2 and collect all local candidate data."""
    r = riccati_normal(R)
    if r.is_zero():
        raise NecessaryConditionFail("r = 0 has the trivial solution u = 0")
    poles = []
    for point, order in _split_pole_points(r):
        start, laurent = r.local_expansion(point, order)
        assert start == -order
        sqrt_part, alphas = _pole_case1(point, order, tuple(laurent))
        poles.append(PoleData(point, order, tuple(laurent), sqrt_part, alphas,
                              _pole_e_set(order, laurent)))
    return LocalExponentData(r, tuple(poles), _infinity_data(r))


# ----------------------------------------------------------------------
# polynomial ansatz solver
# ----------------------------------------------------------------------

def _poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return ((a * b) // poly_gcd(a, b)).monic()


def _monic_poly_solution(coeff_rfs: list[RationalFunction], d: int) -> Polynomial | None:
    """Monic P of degree d with sum_k coeff_rfs[k] * P^(k) = 0, or None."""
    den = Polynomial([1])
    for c in coeff_rfs:
        den = _poly_lcm(den, c.den)
    mults = [c.num * (den // c.den) for c in coeff_rfs]

    def column(i: int) -> Polynomial:
        out = Polynomial()
        for k, mk in enumerate(mults):
            if i - k < 0:
                continue
            fall = 1
            for t in range(k):
                fall *= i - t
            if fall:
                out = out + mk * Polynomial([0] * (i - k) + [fall])
        return out

    cols = [column(i) for i in range(d + 1)]
    nrows = max((c.degree for c in cols), default=-1) + 1
    if nrows == 0:
        return Polynomial([0] * d + [1])
    rows = [[cols[i].coeff(s) for i in range(d)] for s in range(nrows)]
    rhs = [-cols[d].coeff(s) for s in range(nrows)]
    if d == 0:
        return Polynomial([1]) if all(v == 0 for v in rhs) else None
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return Polynomial(sol + [1])


# ----------------------------------------------------------------------
# case 1: rational solutions
# ----------------------------------------------------------------------

def _case1_conditions(data: LocalExponentData) -> bool:
    for p in data.poles:
        if p.order != 1 and p.order % 2:
            return False
    o = data.infinity.order
    return o > 2 or o % 2 == 0


def _rational_or_none(rf: RationalFunction) -> RationalFunction | None:
    if any(isinstance(c, QuadRat) for c in (*rf.num.coeffs, *rf.den.coeffs)):
        return None
    return rf


def case1_search(R: RationalFunction) -> RationalFunction | None:
    """A rational solution of u' + u^2 + R/2 = 0, or an exhaustive None.

    Candidates follow the classical local analysis: sign choices at each
    pole and at infinity whose exponent count d is a nonnegative integer
    give theta and a linear solve for the monic polynomial part.  Raises
    UnsupportedField when the search would need an unsupported extension
    of Q, including the case of a verified certificate that is not
    expressible over Q.
    """
    r = riccati_normal(R)
    if r.is_zero():
        return RationalFunction(Polynomial())
    try:
        data = local_exponent_data(R)
    except NecessaryConditionFail:
        return RationalFunction(Polynomial())
    if not _case1_conditions(data):
        return None
    x = Polynomial.x()
    riccati = riccati_of(R)
    surd_certificate = False
    choices = list(itertools.product((0, 1), repeat=len(data.poles) + 1))
    for pick in choices:
        alpha_inf = data.infinity.alphas[pick[-1]]
        rat = alpha_inf.rat
        surd: dict[int, Fraction] = {}
        if alpha_inf.m:
            surd[alpha_inf.m] = surd.get(alpha_inf.m, Fraction(0)) + alpha_inf.coef
        for p, s in zip(data.poles, pick):
            a = p.alphas[s]
            rat -= a.rat
            if a.m:
                surd[a.m] = surd.get(a.m, Fraction(0)) - a.coef
        if any(v != 0 for v in surd.values()):
            continue
        if rat.denominator != 1 or rat < 0:
            continue
        d = int(rat)
        theta = RationalFunction(Polynomial())
        sign_inf = 1 if pick[-1] == 0 else -1
        if data.infinity.sqrt_part is not None:
            theta = theta + sign_inf * data.infinity.sqrt_part
        for p, s in zip(data.poles, pick):
            sign = 1 if s == 0 else -1
            if p.sqrt_part is not None and not p.sqrt_part.is_zero():
                theta = theta + sign * p.sqrt_part
            theta = theta + RationalFunction(Polynomial([p.alphas[s].value()]),
                                             Polynomial([-p.point, 1]))
        W = theta.derivative() + theta * theta - r
        P = _monic_poly_solution([W, 2 * theta, RationalFunction.const(1)], d)
        if P is None:
            continue
        u = theta + RationalFunction(P.derivative()) / RationalFunction(P)
        if not riccati.is_solution(u):
            continue
        rational = _rational_or_none(u)
        if rational is not None:
            return rational
        surd_certificate = True
    if surd_certificate:
        raise UnsupportedField(
            "a Riccati solution exists over a quadratic extension of Q(lambda) "
            "but no rational certificate was found")
    return None


# ----------------------------------------------------------------------
# case 2: degree-2 algebraic solutions
# ----------------------------------------------------------------------

def case2_search(R: RationalFunction) -> tuple[RationalFunction, RationalFunction] | None:
    """Monic quadratic minimal polynomial u^2 + p u + q of a Riccati pair.

    Returns (p, q) over Q(lambda) with the exact elimination identities
    p' = p^2 - 2q - 2r and q' = pq - pr, certifying that both roots
    solve u' + u^2 = r; or an exhaustive None.  Run after case 1 has
    returned None.
    """
    r = riccati_normal(R)
    if r.is_zero():
        return None
    data = local_exponent_data(R)
    if not any(p.order == 2 or (p.order % 2 and p.order > 2) for p in data.poles):
        return None
    x = Polynomial.x()
    surd_certificate = False
    e_sets = [p.e_set for p in data.poles] + [data.infinity.e_set]
    for pick in itertools.product(*e_sets):
        d2 = pick[-1] - sum(pick[:-1])
        if d2 % 2 or d2 < 0:
            continue
        d = d2 // 2
        theta = RationalFunction(Polynomial())
        for p, e in zip(data.poles, pick):
            theta = theta + RationalFunction(Polynomial([Fraction(e, 2)]),
                                             Polynomial([-p.point, 1]))
        t1 = theta.derivative()
        t2 = t1.derivative()
        c0 = t2 + 3 * theta * t1 + theta**3 - 4 * r * theta - 2 * r.derivative()
        c1 = 3 * theta * theta + 3 * t1 - 4 * r
        c2 = 3 * theta
        P = _monic_poly_solution([c0, c1, c2, RationalFunction.const(1)], d)
        if P is None:
            continue
        phi = theta + RationalFunction(P.derivative()) / RationalFunction(P)
        p_rf = -phi
        q_rf = phi.derivative() * Fraction(1, 2) + phi * phi * Fraction(1, 2) - r
        if not _elimination_identities_hold(p_rf, q_rf, r):
            continue
        if rf_sqrt(p_rf * p_rf - 4 * q_rf) is not None:
            # the quadratic factors rationally; its roots belong to case 1
            continue
        if _rational_or_none(p_rf) is None or _rational_or_none(q_rf) is None:
            surd_certificate = True
            continue
        return p_rf, q_rf
    if surd_certificate:
        raise UnsupportedField(
            "a dihedral certificate exists but its minimal polynomial is not "
            "defined over Q(lambda)")
    return None


def _elimination_identities_hold(p: RationalFunction, q: RationalFunction,
                                 r: RationalFunction) -> bool:
    """Exact resultant-style check that both roots of u^2+pu+q solve the Riccati."""
    return (p.derivative() == p * p - 2 * q - 2 * r
            and q.derivative() == p * q - p * r)


# ----------------------------------------------------------------------
# case 3 screen
# ----------------------------------------------------------------------

def case3_screen(R: RationalFunction) -> str:
    """'impossible' when the order conditions rule case 3 out, else 'possible'.

    A pole of r of order above 2 or order at infinity below 2 is
    incompatible with a finite Galois group; the screen is only
    necessary, never sufficient.
    """
    r = riccati_normal(R)
    if r.is_zero():
        return "possible"
    if order_at_infinity(r) < 2:
        return "impossible"
    for sf in squarefree_and_roots(r.den):
        if sf.multiplicity > 2:
            return "impossible"
    return "possible"
