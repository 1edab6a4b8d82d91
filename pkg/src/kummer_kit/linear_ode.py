"""Monic linear ODEs over Q(lambda) and truncated power series solutions.

The central players: the second order operator psi'' = -R/2 psi attached
to a potential R, its companion system, its second symmetric power (the
third order operator whose solution space is spanned by products of
solutions), and the Riccati equation u' + u^2 + R/2 = 0 satisfied by
logarithmic derivatives of solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BasePointSingular, NonTraceFree, WrongOrder
from .ratfunc import Polynomial, RationalFunction, to_complex
from .series import pad, series_mul, taylor_to_derivs


@dataclass(frozen=True)
class LinearODE:
    """y^(n) + a_{n-1} y^(n-1) + ... + a_0 y = 0, coefficients in Q(lambda).

    ``coeffs`` stores (a_0, ..., a_{n-1}); the operator is monic by
    construction.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs",
            tuple(c if isinstance(c, RationalFunction) else RationalFunction(Polynomial([c]))
                  for c in self.coeffs))
        if not self.coeffs:
            raise WrongOrder("an ODE needs order at least 1")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, j: int) -> RationalFunction:
        """Coefficient of y^(j); 1 for j = order."""
        if j == self.order:
            return RationalFunction.const(1)
        return self.coeffs[j]

    def __str__(self):
        def fname(j):
            return "f" + ("'" * j if j <= 3 else f"^({j})")

        parts = [fname(self.order)]
        for j in range(self.order - 1, -1, -1):
            a = self.coeffs[j]
            if a.is_zero():
                continue
            s = str(a)
            if any(ch in s[1:] for ch in "+- ") and not (s.startswith("(") and s.endswith(")")):
                s = f"({s})"
            parts.append(f"{s}*{fname(j)}")
        return " + ".join(parts) + " = 0"

    def __repr__(self):
        return f"LinearODE({self})"


@dataclass(frozen=True)
class RiccatiEq:
    """u' + u^2 + R/2 = 0, the equation of logarithmic derivatives."""

    R: RationalFunction

    def residual(self, u: RationalFunction) -> RationalFunction:
        return u.derivative() + u * u + self.R * Fraction(1, 2)

    def is_solution(self, u: RationalFunction) -> bool:
        return self.residual(u).is_zero()


def from_potential(R: RationalFunction) -> LinearODE:
    """The trace-free second order operator psi'' + (R/2) psi = 0."""
    return LinearODE((R * Fraction(1, 2), RationalFunction.const(0)))


def companion(ode: LinearODE):
    """First-order system matrix for an order-2 operator: [[0,1],[-a0,-a1]]."""
    if ode.order != 2:
        raise WrongOrder("companion matrix implemented for order 2")
    zero = RationalFunction.const(0)
    one = RationalFunction.const(1)
    return ((zero, one), (-ode.coeffs[0], -ode.coeffs[1]))


def symmetric_power_2(ode: LinearODE) -> LinearODE:
    """Second symmetric power of a trace-free order-2 operator.

    For psi'' = -(R/2) psi, squares f = psi^2 satisfy f''' + 2R f' +
    R' f = 0, obtained by differentiating f three times and eliminating
    psi'' with the original equation; any series solution squared
    satisfies the result to truncation order.
    """
    if ode.order != 2:
        raise WrongOrder("symmetric power implemented for order 2")
    if not ode.coeffs[1].is_zero():
        raise NonTraceFree("operator must have no first-derivative term")
    R = 2 * ode.coeffs[0]
    zero = RationalFunction.const(0)
    return LinearODE((R.derivative(), 2 * R, zero))


def riccati_of(R: RationalFunction) -> RiccatiEq:
    """Attach the Riccati equation u' + u^2 + R/2 = 0 to the potential."""
    return RiccatiEq(R)


# ----------------------------------------------------------------------
# series solutions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSolution:
    """Truncated solution around a base point, Taylor coefficients."""

    base: object
    coeffs: tuple  # taylor coefficients c_0 .. c_N

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def taylor(self) -> list:
        return list(self.coeffs)

    def derivs(self, upto: int) -> list:
        """Derivative values [f, f', ..., f^(upto)] at the base point."""
        return taylor_to_derivs(list(self.coeffs))[: upto + 1] + \
            [Fraction(0)] * max(0, upto + 1 - len(self.coeffs))

    def eval_at(self, x):
        t = x - self.base
        out = 0
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def derivative(self) -> "SeriesSolution":
        cs = [(i + 1) * c for i, c in enumerate(self.coeffs[1:], start=0)]
        return SeriesSolution(self.base, tuple(cs))

    def __mul__(self, other: "SeriesSolution") -> "SeriesSolution":
        if self.base != other.base:
            raise ValueError("series must share a base point")
        n = min(len(self.coeffs), len(other.coeffs))
        return SeriesSolution(self.base, tuple(series_mul(self.coeffs, other.coeffs, n)))

    def __add__(self, other: "SeriesSolution") -> "SeriesSolution":
        if self.base != other.base:
            raise ValueError("series must share a base point")
        n = min(len(self.coeffs), len(other.coeffs))
        return SeriesSolution(self.base, tuple(a + b for a, b in
                                               zip(pad(self.coeffs, n), pad(other.coeffs, n))))

    def __sub__(self, other: "SeriesSolution") -> "SeriesSolution":
        n = min(len(self.coeffs), len(other.coeffs))
        return SeriesSolution(self.base, tuple(a - b for a, b in
                                               zip(pad(self.coeffs, n), pad(other.coeffs, n))))

    def scale(self, s) -> "SeriesSolution":
        return SeriesSolution(self.base, tuple(s * c for c in self.coeffs))


def coefficient_series(rf: RationalFunction, base, n: int) -> list:
    """Taylor coefficients of rf at an ordinary point base."""
    exact = not isinstance(base, (float, complex))
    den_at = rf.den(base)
    if exact and den_at == 0:
        raise BasePointSingular(f"coefficient has a pole at {base}")
    if not exact and abs(to_complex(den_at)) < 1e-14:
        raise BasePointSingular(f"coefficient has a pole near {base}")
    start, cs = rf.local_expansion(base, n)
    if start < 0:
        raise BasePointSingular(f"coefficient has a pole at {base}")
    return pad([Fraction(0)] * start + cs, n)


def series_solve(ode: LinearODE, base, initial, n: int) -> SeriesSolution:
    """Unique truncated solution with given derivative values at base.

    ``initial`` lists y(base), y'(base), ..., y^(order-1)(base).  The
    base point must be ordinary for every coefficient.  The residual of
    the ODE on the result is O((lambda-base)^(n-order+1)).
    """
    order = ode.order
    if len(initial) != order:
        raise ValueError(f"need {order} initial values")
    aseries = [coefficient_series(ode.coeffs[j], base, n + 1) for j in range(order)]
    fact = [1] * (n + 2)
    for i in range(1, n + 2):
        fact[i] = fact[i - 1] * i
    c = [Fraction(0)] * (n + 1)
    for j, v in enumerate(initial):
        if j <= n:
            c[j] = Fraction(v, fact[j]) if isinstance(v, int) else v / fact[j]
    for s in range(0, n + 1 - order):
        # coefficient of t^s in y^(order) + sum a_j y^(j) must vanish
        acc = Fraction(0)
        for j in range(order):
            aj = aseries[j]
            for i in range(0, s + 1):
                t = s - i
                # y^(j) has t^t coefficient c[t+j] (t+j)!/t!
                if t + j <= n and aj[i] != 0:
                    acc = acc + aj[i] * c[t + j] * (fact[t + j] // fact[t])
        c[s + order] = -acc / (fact[s + order] // fact[s])
    return SeriesSolution(base, tuple(c))


def ode_residual_series(ode: LinearODE, sol: SeriesSolution, n: int) -> list:
    """Truncated residual of the ODE applied to a series solution."""
    order = ode.order
    derivs = [sol.taylor()]
    for _ in range(order):
        last = derivs[-1]
        derivs.append([(i + 1) * c for i, c in enumerate(last[1:], start=0)])
    out = pad(derivs[order], n)
    for j in range(order):
        aj = coefficient_series(ode.coeffs[j], sol.base, n)
        out = [o + p for o, p in zip(out, series_mul(aj, derivs[j], n))]
    return out
