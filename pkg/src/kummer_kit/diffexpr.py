"""Differential rational expressions in lambda, phi, phi', ..., phi^(k).

``DiffExpr`` trees combine the base variable, jet coordinates, rational
function coefficients (applied to lambda or to phi) and field operations.
They are deliberately *not* a differential polynomial ring: normalization
is only what evaluation and coefficient extraction need, and symbolic
simplification happens after substitution into exact Q(lambda)
arithmetic.

The module provides the total derivative

    d/dlambda = d/dlambda + phi' d/dphi + phi'' d/dphi' + ...

partial derivatives with respect to jet coordinates, evaluation on jets,
restriction to identity jets, linearization of a determined equation at
the identity, and prolongation of jets through a determined equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (NotVanishingOnIdentity, OrderTooLow, SingularLocus)
from .linear_ode import LinearODE
from .ratfunc import RationalFunction, to_complex


class DiffExpr:
    """Base class; nodes are immutable and combine with +, -, *, /, **."""

    def __add__(self, other):
        return Add(self, _coerce(other))

    def __radd__(self, other):
        return Add(_coerce(other), self)

    def __sub__(self, other):
        return Add(self, Neg(_coerce(other)))

    def __rsub__(self, other):
        return Add(_coerce(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, _coerce(other))

    def __rmul__(self, other):
        return Mul(_coerce(other), self)

    def __truediv__(self, other):
        return Div(self, _coerce(other))

    def __rtruediv__(self, other):
        return Div(_coerce(other), self)

    def __pow__(self, n: int):
        return Pow(self, n)

    def __neg__(self):
        return Neg(self)


@dataclass(frozen=True)
class Num(DiffExpr):
    value: Fraction

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Lam(DiffExpr):
    def __str__(self):
        return "l"


@dataclass(frozen=True)
class Phi(DiffExpr):
    """Jet coordinate phi^(order); order 0 is phi itself."""

    order: int

    def __str__(self):
        if self.order <= 3:
            return "phi" + "'" * self.order
        return f"phi^({self.order})"


@dataclass(frozen=True)
class RatOf(DiffExpr):
    """A rational function coefficient applied to lambda or to phi."""

    rf: RationalFunction
    on_phi: bool

    def __str__(self):
        return f"[{self.rf}]({'phi' if self.on_phi else 'l'})"


@dataclass(frozen=True)
class Add(DiffExpr):
    a: DiffExpr
    b: DiffExpr

    def __str__(self):
        return f"({self.a} + {self.b})"


@dataclass(frozen=True)
class Neg(DiffExpr):
    a: DiffExpr

    def __str__(self):
        return f"(-{self.a})"


@dataclass(frozen=True)
class Mul(DiffExpr):
    a: DiffExpr
    b: DiffExpr

    def __str__(self):
        return f"{self.a}*{self.b}"


@dataclass(frozen=True)
class Div(DiffExpr):
    a: DiffExpr
    b: DiffExpr

    def __str__(self):
        return f"{self.a}/({self.b})"


@dataclass(frozen=True)
class Pow(DiffExpr):
    base: DiffExpr
    n: int

    def __str__(self):
        return f"{self.base}^{self.n}"


def _coerce(v) -> DiffExpr:
    if isinstance(v, DiffExpr):
        return v
    if isinstance(v, (int, Fraction)):
        return Num(Fraction(v))
    if isinstance(v, RationalFunction):
        return RatOf(v, False)
    raise TypeError(f"cannot use {type(v).__name__} in a DiffExpr")


_ZERO = Num(Fraction(0))
_ONE = Num(Fraction(1))


def _is_zero(e) -> bool:
    return isinstance(e, Num) and e.value == 0


def _is_one(e) -> bool:
    return isinstance(e, Num) and e.value == 1


def _add(a, b):
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    return Add(a, b)


def _mul(a, b):
    if _is_zero(a) or _is_zero(b):
        return _ZERO
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    return Mul(a, b)


# ----------------------------------------------------------------------
# structure queries
# ----------------------------------------------------------------------

def expr_order(e: DiffExpr) -> int:
    """Highest jet coordinate order appearing in e; -1 if none."""
    if isinstance(e, Phi):
        return e.order
    if isinstance(e, RatOf):
        return 0 if e.on_phi else -1
    if isinstance(e, (Add, Mul, Div)):
        return max(expr_order(e.a), expr_order(e.b))
    if isinstance(e, Neg):
        return expr_order(e.a)
    if isinstance(e, Pow):
        return expr_order(e.base)
    return -1


# ----------------------------------------------------------------------
# derivations
# ----------------------------------------------------------------------

def total_derivative(e: DiffExpr) -> DiffExpr:
    """The derivation d/dlambda on jet coordinates.

    Evaluating the result on the (k+1)-jet of any map equals the lambda
    derivative of e evaluated along the k-jet of that map.
    """
    if isinstance(e, Num):
        return _ZERO
    if isinstance(e, Lam):
        return _ONE
    if isinstance(e, Phi):
        return Phi(e.order + 1)
    if isinstance(e, RatOf):
        d = RatOf(e.rf.derivative(), e.on_phi)
        return _mul(d, Phi(1)) if e.on_phi else d
    if isinstance(e, Add):
        return _add(total_derivative(e.a), total_derivative(e.b))
    if isinstance(e, Neg):
        return Neg(total_derivative(e.a))
    if isinstance(e, Mul):
        return _add(_mul(total_derivative(e.a), e.b), _mul(e.a, total_derivative(e.b)))
    if isinstance(e, Div):
        num = _add(_mul(total_derivative(e.a), e.b), Neg(_mul(e.a, total_derivative(e.b))))
        return Div(num, Pow(e.b, 2))
    if isinstance(e, Pow):
        d = total_derivative(e.base)
        if _is_zero(d):
            return _ZERO
        return _mul(_mul(Num(Fraction(e.n)), Pow(e.base, e.n - 1)), d)
    raise TypeError(f"unknown node {type(e).__name__}")


def partial_phi(e: DiffExpr, j: int) -> DiffExpr:
    """Partial derivative with respect to the coordinate phi^(j)."""
    if isinstance(e, (Num, Lam)):
        return _ZERO
    if isinstance(e, Phi):
        return _ONE if e.order == j else _ZERO
    if isinstance(e, RatOf):
        if e.on_phi and j == 0:
            return RatOf(e.rf.derivative(), True)
        return _ZERO
    if isinstance(e, Add):
        return _add(partial_phi(e.a, j), partial_phi(e.b, j))
    if isinstance(e, Neg):
        return Neg(partial_phi(e.a, j))
    if isinstance(e, Mul):
        return _add(_mul(partial_phi(e.a, j), e.b), _mul(e.a, partial_phi(e.b, j)))
    if isinstance(e, Div):
        num = _add(_mul(partial_phi(e.a, j), e.b), Neg(_mul(e.a, partial_phi(e.b, j))))
        return Div(num, Pow(e.b, 2))
    if isinstance(e, Pow):
        d = partial_phi(e.base, j)
        if _is_zero(d):
            return _ZERO
        return _mul(_mul(Num(Fraction(e.n)), Pow(e.base, e.n - 1)), d)
    raise TypeError(f"unknown node {type(e).__name__}")


# ----------------------------------------------------------------------
# evaluation and identity restriction
# ----------------------------------------------------------------------

def evaluate(e: DiffExpr, lam_value, phi_values) -> object:
    """Evaluate with phi_values[j] the value of phi^(j); exact or numeric."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Lam):
        return lam_value
    if isinstance(e, Phi):
        if e.order >= len(phi_values):
            raise OrderTooLow(f"evaluation needs phi^({e.order})")
        return phi_values[e.order]
    if isinstance(e, RatOf):
        return e.rf(phi_values[0] if e.on_phi else lam_value)
    if isinstance(e, Add):
        return evaluate(e.a, lam_value, phi_values) + evaluate(e.b, lam_value, phi_values)
    if isinstance(e, Neg):
        return -evaluate(e.a, lam_value, phi_values)
    if isinstance(e, Mul):
        return evaluate(e.a, lam_value, phi_values) * evaluate(e.b, lam_value, phi_values)
    if isinstance(e, Div):
        return evaluate(e.a, lam_value, phi_values) / evaluate(e.b, lam_value, phi_values)
    if isinstance(e, Pow):
        return evaluate(e.base, lam_value, phi_values) ** e.n
    raise TypeError(f"unknown node {type(e).__name__}")


def evaluate_on_jet(e: DiffExpr, jet) -> object:
    """Evaluate on a groupoid jet: lambda = source, phi^(j) = jet data."""
    return evaluate(e, jet.source, (jet.target, *jet.coeffs))


def at_identity(e: DiffExpr) -> RationalFunction:
    """Restrict to identity jets: phi -> lambda, phi' -> 1, higher -> 0."""
    x = RationalFunction.x()
    one = RationalFunction.const(1)
    zero = RationalFunction.const(0)

    def rec(node) -> RationalFunction:
        if isinstance(node, Num):
            return RationalFunction.const(node.value)
        if isinstance(node, Lam):
            return x
        if isinstance(node, Phi):
            return (x, one, zero)[min(node.order, 2)]
        if isinstance(node, RatOf):
            return node.rf
        if isinstance(node, Add):
            return rec(node.a) + rec(node.b)
        if isinstance(node, Neg):
            return -rec(node.a)
        if isinstance(node, Mul):
            return rec(node.a) * rec(node.b)
        if isinstance(node, Div):
            return rec(node.a) / rec(node.b)
        if isinstance(node, Pow):
            return rec(node.base) ** node.n
        raise TypeError(f"unknown node {type(node).__name__}")

    return rec(e)


def linearize_at_identity(e: DiffExpr) -> LinearODE:
    """Linear equation on vector field coefficients tangent to {e = 0}.

    The coefficient of f^(j) is the partial of e by phi^(j) restricted to
    identity jets; the equation is returned monic.  Requires e to vanish
    identically on identity jets.
    """
    if not at_identity(e).is_zero():
        raise NotVanishingOnIdentity("expression does not vanish on identity jets")
    k = expr_order(e)
    if k < 1:
        raise OrderTooLow("expression has no jet coordinates of positive order")
    coeffs = [at_identity(partial_phi(e, j)) for j in range(k + 1)]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) <= 1:
        raise OrderTooLow("linearization is not a differential equation")
    top = coeffs[-1]
    return LinearODE(tuple(c / top for c in coeffs[:-1]))


# ----------------------------------------------------------------------
# prolongation
# ----------------------------------------------------------------------

def prolong(e: DiffExpr, start, m: int):
    """Extend a jet through the determined equation e = 0 up to order m.

    ``start`` is a Jet of order k-1 (k the order of e), or a
    (source, target) pair when k = 1.  Each new coefficient is obtained
    by solving e, or its next total derivative, for the top jet
    coordinate; the dependence must be affine, which holds for any
    determined equation of the form considered here.
    """
    from .jets import Jet  # local import to keep module layering acyclic

    k = expr_order(e)
    if k < 1:
        raise OrderTooLow("prolongation needs an equation of positive order")
    if isinstance(start, Jet):
        source, target = start.source, start.target
        values = [target, *start.coeffs]
    else:
        source, target = (Fraction(v) if isinstance(v, int) else v for v in start)
        values = [target]
    if len(values) != k:
        raise OrderTooLow(f"equation of order {k} expects a jet of order {k - 1}")
    if m < k:
        raise OrderTooLow(f"target order {m} below equation order {k}")
    exact = all(not isinstance(v, (float, complex)) for v in (source, *values))
    cur = e
    for t in range(k, m + 1):
        g0 = evaluate(cur, source, values + [Fraction(0)])
        g1 = evaluate(cur, source, values + [Fraction(1)])
        slope = g1 - g0
        if slope == 0 or (not exact and abs(to_complex(slope)) < 1e-300):
            raise SingularLocus(f"determined form is singular at order {t}")
        top = -g0 / slope
        if exact:
            check = evaluate(cur, source, values + [top])
            if check != 0:
                raise ValueError("equation is not affine in its top derivative")
        values.append(top)
        cur = total_derivative(cur)
    return Jet(source, values[0], tuple(values[1:]))
