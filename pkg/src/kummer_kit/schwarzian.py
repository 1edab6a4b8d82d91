"""Schwarzian derivative, Moebius actions, and the Kummer equation.

The Schwarzian S(f) = (f''/f')' - (f''/f')^2 / 2 vanishes exactly on
Moebius maps.  For a potential R the Kummer equation

    S(phi) + R(phi) phi'^2 - R(lambda) = 0

cuts out the symmetries of the projective structure with curvature R;
its solutions are stable under composition and inversion.  This module
builds the equation as a differential expression, its linearization at
the identity, and the second symmetric power it must coincide with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diffexpr import (DiffExpr, Lam, Num, Phi, Pow, RatOf,
                       linearize_at_identity)
from .errors import ConstantInput, OrderTooLow, PoleOfMobius
from .jets import Jet, jet_compose
from .linear_ode import LinearODE, from_potential, symmetric_power_2
from .ratfunc import Polynomial, RationalFunction


# ----------------------------------------------------------------------
# Schwarzian derivative
# ----------------------------------------------------------------------

def schwarzian_rf(f: RationalFunction) -> RationalFunction:
    """Exact Schwarzian derivative of a nonconstant rational function."""
    df = f.derivative()
    if df.is_zero():
        raise ConstantInput("Schwarzian of a constant is undefined")
    w = df.derivative() / df
    return w.derivative() - w * w * Fraction(1, 2)


def schwarzian_jet(j: Jet):
    """Value of S = phi'''/phi' - (3/2)(phi''/phi')^2 at a jet of order >= 3."""
    if j.order < 3:
        raise OrderTooLow(f"Schwarzian needs a 3-jet, got order {j.order}")
    c1, c2, c3 = j.coeffs[0], j.coeffs[1], j.coeffs[2]
    ratio = c2 / c1
    return c3 / c1 - Fraction(3, 2) * ratio * ratio


def schwarzian_expr() -> DiffExpr:
    """S as a differential expression on third order jets."""
    return Phi(3) / Phi(1) - Num(Fraction(3, 2)) * Pow(Phi(2) / Phi(1), 2)


def chain_rule_check(tau: RationalFunction, phi: RationalFunction) -> RationalFunction:
    """Residual of the Schwarzian cocycle identity; identically zero.

    Returns S(tau o phi) - (S(tau) o phi) phi'^2 - S(phi) computed
    exactly, which must be the zero rational function.
    """
    if tau.derivative().is_zero() or phi.derivative().is_zero():
        raise ConstantInput("cocycle check needs nonconstant inputs")
    lhs = schwarzian_rf(tau.compose(phi))
    rhs = schwarzian_rf(tau).compose(phi) * phi.derivative() ** 2 + schwarzian_rf(phi)
    return lhs - rhs


# ----------------------------------------------------------------------
# Moebius transformations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Mobius:
    """Projective transformation t -> (a t + b)/(c t + e), up to scale.

    The representative is normalized so the first nonzero entry of
    (a, b, c, e) equals 1.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    e: Fraction

    def __post_init__(self):
        entries = [Fraction(v) if isinstance(v, int) else v
                   for v in (self.a, self.b, self.c, self.e)]
        if entries[0] * entries[3] - entries[1] * entries[2] == 0:
            raise ValueError("degenerate Moebius matrix")
        scale = next(v for v in entries if v != 0)
        a, b, c, e = (v / scale for v in entries)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @property
    def det(self):
        return self.a * self.e - self.b * self.c

    def __call__(self, t):
        den = self.c * t + self.e
        if den == 0:
            raise PoleOfMobius(f"pole of Moebius transformation at {t}")
        return (self.a * t + self.b) / den

    def as_rf(self) -> RationalFunction:
        return RationalFunction(Polynomial([self.b, self.a]), Polynomial([self.e, self.c]))

    def jet_at(self, point, order: int) -> Jet:
        """Jet of the transformation at a point away from its pole."""
        den = self.c * point + self.e
        if den == 0:
            raise PoleOfMobius(f"pole of Moebius transformation at {point}")
        target = (self.a * point + self.b) / den
        derivs = []
        sign, fact, cpow, dpow = 1, 1, Fraction(1), den * den
        for n in range(1, order + 1):
            derivs.append(sign * fact * cpow * self.det / dpow)
            sign, fact = -sign, fact * (n + 1)
            cpow, dpow = cpow * self.c, dpow * den
        return Jet(point, target, tuple(derivs))


def mobius_apply_jet(m: Mobius, j: Jet) -> Jet:
    """Jet of m o phi for a jet of phi; Schwarzian-invariant postcomposition."""
    return jet_compose(m.jet_at(j.target, j.order), j)


# ----------------------------------------------------------------------
# the Kummer equation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class KummerSystem:
    """The Kummer equation for a potential, with derived linear data.

    ``residual`` is S(phi) + R(phi) phi'^2 - R(lambda); ``cleared`` is
    the same multiplied through by phi'^2, polynomial in the jet
    coordinates and better behaved for numeric residual checks.  The
    linearization at identity jets coincides coefficient-wise with the
    second symmetric power of psi'' = -(R/2) psi.
    """

    R: RationalFunction
    residual: DiffExpr
    cleared: DiffExpr
    linearized: LinearODE
    sympow: LinearODE


def kummer_residual(R: RationalFunction) -> DiffExpr:
    """S(phi) + R(phi) phi'^2 - R(lambda) as a differential expression."""
    expr = schwarzian_expr()
    if not R.is_zero():
        expr = expr + RatOf(R, True) * Pow(Phi(1), 2) - RatOf(R, False)
    return expr


def kummer_residual_cleared(R: RationalFunction) -> DiffExpr:
    """The Kummer residual multiplied by phi'^2 (denominators cleared)."""
    expr = Phi(3) * Phi(1) - Num(Fraction(3, 2)) * Pow(Phi(2), 2)
    if not R.is_zero():
        expr = expr + RatOf(R, True) * Pow(Phi(1), 4) - RatOf(R, False) * Pow(Phi(1), 2)
    return expr


def kummer_build(R: RationalFunction) -> KummerSystem:
    """Assemble the Kummer equation and check it against the symmetric power."""
    residual = kummer_residual(R)
    cleared = kummer_residual_cleared(R)
    linearized = linearize_at_identity(residual)
    sympow = symmetric_power_2(from_potential(R))
    if linearized != sympow:
        raise AssertionError(
            "linearization disagrees with the symmetric power; "
            f"{linearized} vs {sympow}")
    return KummerSystem(R, residual, cleared, linearized, sympow)


def foliation_rhs(R: RationalFunction) -> DiffExpr:
    """Determined third order form of the nonlinear Schwarzian flow.

    In jet coordinates for the map tau -> lambda(tau) this is
    lambda''' = (3/2) lambda''^2 / lambda' + lambda'^3 R(lambda); the
    potential is applied to the dependent variable.
    """
    expr = Num(Fraction(3, 2)) * Pow(Phi(2), 2) / Phi(1)
    if not R.is_zero():
        expr = expr + Pow(Phi(1), 3) * RatOf(R, True)
    return expr
