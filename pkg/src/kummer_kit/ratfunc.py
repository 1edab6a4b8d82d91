"""Exact arithmetic in Q(lambda) and its quadratic extensions.

Polynomials are dense, lowest-degree-first tuples of exact scalars.  A
scalar is a ``Fraction`` or, when a computation genuinely leaves Q, a
``QuadRat`` value a + b*sqrt(d) over a single squarefree discriminant d
(d = -1 gives the Gaussian rationals).  Mixing two different
discriminants raises ``UnsupportedField`` rather than approximating.

Rational functions are kept canonical at all times: numerator and
denominator coprime, denominator monic and nonzero.  Equality is
structural on the canonical form, so symbolic identities can be asserted
exactly with ``==``.

All values are immutable; every operation returns a new value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BothZero, DivisionByZero, UnsupportedField, ZeroInput

Scalar = Union[Fraction, "QuadRat"]


# ----------------------------------------------------------------------
# integer helpers
# ----------------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division plus Pollard rho."""
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100_000:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += increments[i % 8]
        i += 1
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if _is_probable_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.append(d)
            stack.append(m // d)
    return factors


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = k^2 * m with m squarefree; return (k, m)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    k, m = 1, sign
    for p, e in _factorize(n).items():
        k *= p ** (e // 2)
        if e % 2:
            m *= p
    return k, m


def fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative Fraction, or None."""
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# ----------------------------------------------------------------------
# quadratic extension scalars
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class QuadRat:
    """Element a + b*sqrt(disc) of Q(sqrt(disc)), with b != 0.

    ``disc`` is a squarefree integer other than 0 and 1; negative values
    (in particular -1) give imaginary quadratic fields.  Values whose
    surd part cancels are returned as plain ``Fraction``, so a QuadRat
    instance always has a nonzero irrational part.
    """

    rat: Fraction
    coef: Fraction
    disc: int

    @staticmethod
    def make(rat, coef, disc: int) -> Scalar:
        rat = Fraction(rat)
        coef = Fraction(coef)
        if coef == 0 or disc == 0:
            return rat
        k, m = squarefree_part(disc)
        coef *= k
        if m == 1:
            return rat + coef
        return QuadRat(rat, coef, m)

    def conjugate(self) -> "QuadRat":
        return QuadRat(self.rat, -self.coef, self.disc)

    def _coerce(self, other) -> tuple[Fraction, Fraction] | None:
        if isinstance(other, QuadRat):
            if other.disc != self.disc:
                raise UnsupportedField(
                    f"cannot mix sqrt({self.disc}) with sqrt({other.disc})")
            return other.rat, other.coef
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return complex(self) + other
        return QuadRat.make(self.rat + parts[0], self.coef + parts[1], self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.rat, -self.coef, self.disc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return complex(self) * other
        a, b = self.rat, self.coef
        c, d = parts
        return QuadRat.make(a * c + b * d * self.disc, a * d + b * c, self.disc)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        # 1/(a + b s) = (a - b s) / (a^2 - b^2 d)
        norm = self.rat * self.rat - self.coef * self.coef * self.disc
        if norm == 0:
            raise DivisionByZero("zero element of quadratic field")
        return QuadRat.make(self.rat / norm, -self.coef / norm, self.disc)

    def __truediv__(self, other):
        parts = self._coerce(other)
        if parts is None:
            return complex(self) / other
        if parts[1] == 0:
            if parts[0] == 0:
                raise DivisionByZero("division by zero")
            return QuadRat.make(self.rat / parts[0], self.coef / parts[0], self.disc)
        return self * QuadRat(parts[0], parts[1], self.disc).inverse()

    def __rtruediv__(self, other):
        inv = self.inverse()
        if isinstance(inv, QuadRat):
            return inv * other
        return other * inv

    def __pow__(self, n: int):
        if n < 0:
            base = self.inverse()
            n = -n
        else:
            base = self
        out: Scalar = Fraction(1)
        for _ in range(n):
            out = base * out
        return out

    def __eq__(self, other):
        if isinstance(other, QuadRat):
            return (self.rat, self.coef, self.disc) == (other.rat, other.coef, other.disc)
        if isinstance(other, (int, Fraction)):
            return False  # coef != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.rat, self.coef, self.disc))

    def __complex__(self) -> complex:
        root = complex(0, math.sqrt(-self.disc)) if self.disc < 0 else complex(math.sqrt(self.disc))
        return complex(self.rat) + complex(self.coef) * root

    def __str__(self):
        return f"({self.rat}{'+' if self.coef >= 0 else '-'}{abs(self.coef)}*sqrt({self.disc}))"

    __repr__ = __str__


def quadrat_sqrt(x: Scalar) -> Scalar | None:
    """Square root of x inside Q or the quadratic field of x, or None.

    For rational x the root is rational or lands in Q(sqrt(m)) with m the
    squarefree part of x.  For x = s + t*sqrt(d) a root p + q*sqrt(d) is
    searched by solving p^2 + q^2 d = s, 2pq = t exactly.
    """
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        r = fraction_sqrt(x)
        if r is not None:
            return r
        if x == 0:
            return Fraction(0)
        # sqrt(n/d) = sqrt(n d)/d
        k, m = squarefree_part(x.numerator * x.denominator)
        return QuadRat.make(0, Fraction(k, x.denominator), m)
    s, t, d = x.rat, x.coef, x.disc
    # p^2 is a root of z^2 - s z + t^2 d / 4 = 0
    disc = s * s - t * t * d
    rdisc = fraction_sqrt(disc)
    if rdisc is None:
        return None
    for p2 in ((s + rdisc) / 2, (s - rdisc) / 2):
        p = fraction_sqrt(p2)
        if p is not None and p != 0:
            q = t / (2 * p)
            if p * p + q * q * d == s:
                return QuadRat.make(p, q, d)
    return None


def scalar_conjugate(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, QuadRat) else x


def to_complex(x) -> complex:
    """Numeric value of a Fraction, QuadRat or plain number."""
    if isinstance(x, QuadRat):
        return complex(x)
    return complex(x)


# ----------------------------------------------------------------------
# polynomials
# ----------------------------------------------------------------------

def _as_scalar(c):
    return Fraction(c) if isinstance(c, int) else c


class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple.  Coefficients may
    be Fraction or QuadRat (a single discriminant per expression).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def const(c) -> "Polynomial":
        return Polynomial([c])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial([0, 1])

    @staticmethod
    def from_roots(roots: Sequence) -> "Polynomial":
        p = Polynomial([1])
        for r in roots:
            p = p * Polynomial([-r, 1])
        return p

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q = rem[i] / lead
            quot[i - d] = q
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = rem[i - d + j] - q * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadRat)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- calculus and evaluation ---------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift(self, a) -> "Polynomial":
        """Compose with (x + a): returns p(x + a)."""
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * Polynomial([a, 1]) + Polynomial([c])
        return out

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading
        return Polynomial([c / lead for c in self.coeffs])

    def map_coeffs(self, fn) -> "Polynomial":
        return Polynomial([fn(c) for c in self.coeffs])

    # -- printing -------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if isinstance(c, QuadRat):
                cstr, neg = str(c), False
            else:
                neg = c < 0
                cstr = str(abs(c))
            if i == 0:
                term = cstr
            else:
                var = "l" if i == 1 else f"l^{i}"
                term = var if cstr == "1" else f"{cstr}*{var}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _coerce_poly(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction, QuadRat)):
        return Polynomial([v])
    raise TypeError(f"cannot coerce {type(v).__name__} to Polynomial")


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_extended_gcd(a: Polynomial, b: Polynomial):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = Polynomial([1]), Polynomial()
    t0, t1 = Polynomial(), Polynomial([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.leading
    inv = 1 / lead if not isinstance(lead, QuadRat) else lead.inverse()
    return r0.monic(), s0 * inv, t0 * inv


def poly_sqrt(p: Polynomial) -> Polynomial | None:
    """Exact polynomial square root, or None if p is not a square."""
    if p.is_zero():
        return Polynomial()
    if p.degree % 2:
        return None
    lead_root = quadrat_sqrt(p.leading)
    if lead_root is None:
        return None
    if isinstance(lead_root, QuadRat) and not isinstance(p.leading, QuadRat):
        return None  # the root would leave the coefficient field of p
    half = p.degree // 2
    root = [Fraction(0)] * (half + 1)
    root[half] = lead_root
    for k in range(half - 1, -1, -1):
        # coefficient of x^(half + k) in root^2 must match p
        acc = Fraction(0)
        for j in range(k + 1, half):
            acc = acc + root[j] * root[half + k - j]
        root[k] = (p.coeff(half + k) - acc) / (2 * root[half])
    cand = Polynomial(root)
    return cand if cand * cand == p else None


# ----------------------------------------------------------------------
# rational functions
# ----------------------------------------------------------------------

class RationalFunction:
    """Canonical quotient of polynomials: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Polynomial([1])):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            den = Polynomial([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lead = den.leading
            if lead != 1:
                num = num.map_coeffs(lambda c: c / lead)
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Polynomial([c]))

    @staticmethod
    def x() -> "RationalFunction":
        return RationalFunction(Polynomial.x())

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n) if not self.is_zero() else _raise_div0()
        out = RationalFunction(Polynomial([1]))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce_rf(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus -----------------------------------------------------------

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def __call__(self, x):
        den = self.den(x)
        if isinstance(x, (Fraction, int, QuadRat)) and den == 0:
            raise DivisionByZero(f"pole at {x}")
        return self.num(x) / den

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """self(inner(lambda)) as an exact rational function."""
        num = RationalFunction(Polynomial())
        for c in reversed(self.num.coeffs):
            num = num * inner + RationalFunction.const(c)
        den = RationalFunction(Polynomial())
        for c in reversed(self.den.coeffs):
            den = den * inner + RationalFunction.const(c)
        if den.is_zero():
            raise DivisionByZero("composition hits a pole identically")
        return num / den

    def local_expansion(self, c, n_terms: int) -> tuple[int, list]:
        """Laurent data at the finite point c: (start, coefficients).

        Returns the leading order ``start`` (negative at a pole) and the
        first ``n_terms`` Laurent coefficients from that order upward.
        """
        if self.is_zero():
            return 0, [Fraction(0)] * n_terms
        num = self.num.shift(c)
        den = self.den.shift(c)
        vn = _valuation(num)
        vd = _valuation(den)
        start = vn - vd
        ncs = list(num.coeffs[vn:])
        dcs = list(den.coeffs[vd:])
        out = []
        acc = ncs + [Fraction(0)] * max(0, n_terms - len(ncs))
        for k in range(n_terms):
            v = acc[k] / dcs[0]
            out.append(v)
            for j in range(1, min(len(dcs), n_terms - k)):
                if k + j < len(acc):
                    acc[k + j] = acc[k + j] - v * dcs[j]
                else:
                    acc.append(-v * dcs[j])
        return start, out

    def expansion_at_infinity(self, n_terms: int) -> tuple[int, list]:
        """Expansion in descending powers of lambda: (top_degree, coeffs)."""
        if self.is_zero():
            return 0, [Fraction(0)] * n_terms
        top = self.num.degree - self.den.degree
        ncs = list(reversed(self.num.coeffs))
        dcs = list(reversed(self.den.coeffs))
        out = []
        acc = ncs + [Fraction(0)] * max(0, n_terms - len(ncs))
        for k in range(n_terms):
            v = acc[k] / dcs[0]
            out.append(v)
            for j in range(1, min(len(dcs), n_terms - k)):
                if k + j < len(acc):
                    acc[k + j] = acc[k + j] - v * dcs[j]
                else:
                    acc.append(-v * dcs[j])
        return top, out

    def __str__(self):
        if self.den == Polynomial([1]):
            return str(self.num)
        num = str(self.num)
        if self.num.degree > 0 or "/" in num or num.startswith("-"):
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _raise_div0():
    raise DivisionByZero("0^negative")


def _coerce_rf(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, (int, Fraction, QuadRat, Polynomial)):
        return RationalFunction(_coerce_poly(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to RationalFunction")


def _valuation(p: Polynomial) -> int:
    for i, c in enumerate(p.coeffs):
        if c != 0:
            return i
    return 0


def order_at_infinity(a: RationalFunction) -> int:
    """deg(den) - deg(num); the order of vanishing at infinity."""
    if a.is_zero():
        raise ZeroInput("order at infinity of 0 is undefined")
    return a.den.degree - a.num.degree


def rf_sqrt(a: RationalFunction) -> RationalFunction | None:
    """Exact square root in the same rational function field, or None."""
    if a.is_zero():
        return RationalFunction(Polynomial())
    num = poly_sqrt(a.num)
    den = poly_sqrt(a.den)
    if num is None or den is None:
        return None
    return RationalFunction(num, den)


# ----------------------------------------------------------------------
# squarefree factorization, roots, pole data
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SquarefreeFactor:
    """One squarefree piece of a factorization.

    ``roots`` lists exact locations when the factor has degree <= 2
    (Fraction or QuadRat values); it is None for an unsplit factor of
    degree >= 3.
    """

    factor: Polynomial
    multiplicity: int
    roots: tuple | None


def _rational_roots(p: Polynomial) -> list[Fraction]:
    """All rational roots of p (with the corresponding linear factors removed by the caller)."""
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)  # root at 0 handled separately by caller
    if not ints:
        return []
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = []
    for r in _divisors(a0):
        for s in _divisors(an):
            if math.gcd(r, s) != 1:
                continue
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if p(cand) == 0:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in _factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(set(out))


def _quadratic_roots(p: Polynomial) -> tuple:
    """Exact roots of a degree-2 polynomial, as Fraction or QuadRat."""
    c, b, a = p.coeff(0), p.coeff(1), p.coeff(2)
    disc = b * b - 4 * a * c
    if isinstance(disc, QuadRat):
        raise UnsupportedField("quadratic over a quadratic extension")
    half = Fraction(1, 2) / a
    r = fraction_sqrt(disc)
    if r is not None:
        return ((-b + r) * half, (-b - r) * half)
    k, m = squarefree_part(disc.numerator * disc.denominator)
    surd = Fraction(k, disc.denominator)
    return (QuadRat.make(-b * half, surd * half, m),
            QuadRat.make(-b * half, -surd * half, m))


def squarefree_and_roots(p: Polynomial) -> list[SquarefreeFactor]:
    """Squarefree factorization with exact roots where degree permits.

    Yun's algorithm gives the multiplicity structure; each squarefree
    piece is then split into rational linear factors plus, if what
    remains is quadratic, its surd roots.  Remaining factors of degree
    >= 3 are returned unsplit (roots=None).
    """
    if p.is_zero():
        raise ZeroInput("squarefree decomposition of 0")
    out: list[SquarefreeFactor] = []
    if p.degree == 0:
        return out
    p = p.monic()
    # Yun's algorithm
    dp = p.derivative()
    g = poly_gcd(p, dp)
    b = p // g
    c = dp // g
    d = c - b.derivative()
    mult = 1
    while b.degree > 0:
        a = poly_gcd(b, d) if not d.is_zero() else b.monic()
        if a.degree > 0:
            out.extend(_split_factor(a, mult))
        b = b // a
        c = d // a if not d.is_zero() else Polynomial()
        d = c - b.derivative()
        mult += 1
    return out


def _split_factor(a: Polynomial, mult: int) -> list[SquarefreeFactor]:
    pieces: list[SquarefreeFactor] = []
    rest = a.monic()
    # roots at zero
    v = _valuation(rest)
    if v > 0 and rest.coeff(0) == 0:
        pieces.append(SquarefreeFactor(Polynomial.x(), mult, (Fraction(0),)))
        rest = Polynomial(rest.coeffs[1:])
    for r in sorted(set(_rational_roots(rest))):
        pieces.append(SquarefreeFactor(Polynomial([-r, 1]), mult, (r,)))
        rest = rest // Polynomial([-r, 1])
    if rest.degree == 1:
        # leftover linear factor (root already found unless numerically missed)
        r = -rest.coeff(0)
        pieces.append(SquarefreeFactor(rest, mult, (r,)))
    elif rest.degree == 2:
        pieces.append(SquarefreeFactor(rest, mult, _quadratic_roots(rest)))
    elif rest.degree >= 3:
        pieces.append(SquarefreeFactor(rest, mult, None))
    return pieces


@dataclass(frozen=True)
class PoleDatum:
    """A pole place: an exact point or an unsplit irreducible polynomial."""

    location: object  # Fraction | QuadRat | Polynomial
    order: int

    @property
    def is_split(self) -> bool:
        return not isinstance(self.location, Polynomial)


# ----------------------------------------------------------------------
# partial fractions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleTerm:
    """A pole with its coefficient ladder.

    For a split place the ladder entries are scalars: ladder[j-1] is the
    coefficient of 1/(lambda - c)^j.  For an unsplit place of minimal
    polynomial q the entries are polynomials of degree < deg q, with
    ladder[j-1] the numerator over q^j.
    """

    datum: PoleDatum
    ladder: tuple


def partial_fractions(a: RationalFunction, split: bool = True
                      ) -> tuple[Polynomial, list[PoleTerm]]:
    """Exact partial fraction decomposition of a.

    Returns the polynomial part and one ladder per pole.  With
    ``split=True`` (default), places of degree <= 2 are split into exact
    points (surd coordinates for irreducible quadratics) and a place of
    degree >= 3 raises UnsupportedField.  With ``split=False`` every
    place keeps a polynomial ladder over its minimal polynomial.

    Recomposition reproduces a exactly; see ``recompose``.
    """
    poly_part, rem = divmod(a.num, a.den)
    terms: list[PoleTerm] = []
    if rem.is_zero():
        return poly_part, terms
    residue = RationalFunction(rem, a.den)
    for sf in squarefree_and_roots(a.den):
        q, m = sf.factor, sf.multiplicity
        if sf.roots is not None and split:
            for root in sf.roots:
                ladder = _point_ladder(residue, root, m)
                terms.append(PoleTerm(PoleDatum(root, m), tuple(ladder)))
        elif sf.roots is None and split:
            raise UnsupportedField(
                f"pole place of degree {q.degree} needs splitting beyond Q(sqrt(d))")
        else:
            ladder = _place_ladder(rem, a.den, q, m)
            terms.append(PoleTerm(PoleDatum(q, m), tuple(ladder)))
    return poly_part, terms


def _point_ladder(a: RationalFunction, c, m: int) -> list:
    """Scalar ladder at a split pole c of order m: h = a*(x-c)^m expanded."""
    h = a * RationalFunction(Polynomial([-c, 1])) ** m
    start, coeffs = h.local_expansion(c, m)
    # h is regular at c, so start >= 0; pad to align absolute orders 0..m-1
    vals = [Fraction(0)] * start + coeffs
    return [vals[m - j] for j in range(1, m + 1)]


def _place_ladder(rem: Polynomial, den: Polynomial, q: Polynomial, m: int) -> list:
    """Polynomial ladder over q^j via inverse modulo q^m and q-adic digits."""
    qm = q**m
    other = den // qm
    _, s, _ = poly_extended_gcd(other, qm)
    n = (rem * s) % qm
    digits = []
    for _ in range(m):
        n, d0 = divmod(n, q)
        digits.append(d0)
    # digits[i] is the coefficient of q^i; numerator over q^j is digits[m-j]
    return [digits[m - j] for j in range(1, m + 1)]


def recompose(poly_part: Polynomial, terms: list[PoleTerm]) -> RationalFunction:
    """Reassemble a partial fraction decomposition exactly."""
    out = RationalFunction(poly_part)
    for term in terms:
        if term.datum.is_split:
            base = RationalFunction(Polynomial([1]), Polynomial([-term.datum.location, 1]))
        else:
            base = RationalFunction(Polynomial([1]), term.datum.location)
        for j, cj in enumerate(term.ladder, start=1):
            out = out + _coerce_rf(cj) * base**j
    return out


# ----------------------------------------------------------------------
# text grammar
# ----------------------------------------------------------------------

class ParseError(ValueError):
    """Malformed rational function text."""


def parse_rational(text: str) -> RationalFunction:
    """Parse the expression grammar over 'l'/'lambda' into Q(lambda).

    Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
    factor)*; factor := atom ('^' uint)?; atom := 'l' | 'lambda' |
    integer | '(' expr ')'.  Whitespace is ignored; a single unary minus
    is allowed at the head of an expression.
    """
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        t = peek()
        pos[0] += 1
        return t

    def parse_expr() -> RationalFunction:
        negate = False
        if peek() == "-":
            take()
            negate = True
        value = parse_term()
        if negate:
            value = -value
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term() -> RationalFunction:
        value = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero in expression")
                value = value / rhs
        return value

    def parse_factor() -> RationalFunction:
        value = parse_atom()
        if peek() == "^":
            take()
            e = take()
            if not isinstance(e, int) or e < 0:
                raise ParseError("exponent must be a nonnegative integer")
            value = value**e
        return value

    def parse_atom() -> RationalFunction:
        t = take()
        if t == "(":
            value = parse_expr()
            if take() != ")":
                raise ParseError("missing closing parenthesis")
            return value
        if t == "l":
            return RationalFunction.x()
        if isinstance(t, int):
            return RationalFunction.const(t)
        raise ParseError(f"unexpected token {t!r}")

    value = parse_expr()
    if pos[0] != len(tokens):
        raise ParseError(f"trailing input at token {tokens[pos[0]]!r}")
    return value


def _tokenize(text: str) -> list:
    tokens: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif text.startswith("lambda", i):
            tokens.append("l")
            i += 6
        elif ch == "l":
            tokens.append("l")
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}")
    if not tokens:
        raise ParseError("empty expression")
    return tokens
