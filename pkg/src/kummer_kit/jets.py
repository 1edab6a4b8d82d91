"""Jets of local biholomorphisms and their groupoid operations.

A ``Jet`` records a source point, a target point and the derivatives
c1..ck of a map germ at the source (c1 != 0 for a biholomorphism).
Composition is exact Faa di Bruno, implemented through truncated series
composition on the Taylor tails; inversion is series reversion.

Jets are tagged exact when every stored value is an int, Fraction or
QuadRat; any float or complex entry makes the jet numeric, and mixed
arithmetic promotes to numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvertible, OrderTooLow, SourceTargetMismatch
from .ratfunc import QuadRat, to_complex
from .series import derivs_to_taylor, series_compose, series_reverse, taylor_to_derivs

_EXACT_TYPES = (int, Fraction, QuadRat)

_MATCH_TOL = 1e-8


def _is_exact(v) -> bool:
    return isinstance(v, _EXACT_TYPES)


def _exactify(v):
    return Fraction(v) if isinstance(v, int) else v


@dataclass(frozen=True)
class Jet:
    """k-jet of a local biholomorphism: source, target, derivatives c1..ck."""

    source: object
    target: object
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise OrderTooLow("a jet needs at least the first derivative")
        # ints become Fractions so that exact jets never hit int/int -> float
        object.__setattr__(self, "source", _exactify(self.source))
        object.__setattr__(self, "target", _exactify(self.target))
        object.__setattr__(self, "coeffs", tuple(_exactify(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for v in (self.source, self.target, *self.coeffs))

    def coeff(self, j: int):
        """The j-th derivative at the source; j = 0 gives the target value."""
        if j == 0:
            return self.target
        if j > self.order:
            raise OrderTooLow(f"jet of order {self.order} has no derivative {j}")
        return self.coeffs[j - 1]

    def truncate(self, k: int) -> "Jet":
        if k > self.order:
            raise OrderTooLow(f"cannot extend order {self.order} to {k} by truncation")
        return Jet(self.source, self.target, self.coeffs[:k])

    def taylor_tail(self) -> list:
        """Taylor coefficients [0, c1, c2/2!, ...] of the source-centered tail."""
        return derivs_to_taylor([Fraction(0), *self.coeffs])

    def to_json_dict(self) -> dict:
        return {
            "source": _json_value(self.source),
            "target": _json_value(self.target),
            "coeffs": [_json_value(c) for c in self.coeffs],
            "exact": self.exact,
        }

    def __str__(self):
        cs = ", ".join(str(c) for c in self.coeffs)
        return f"Jet({self.source} -> {self.target}; {cs})"


def _json_value(v):
    if isinstance(v, (int, Fraction, QuadRat)):
        return str(v)
    z = complex(v)
    return [z.real, z.imag]


def identity_jet(point, order: int) -> Jet:
    return Jet(point, point, (Fraction(1),) + (Fraction(0),) * (order - 1))


def _points_match(a, b) -> bool:
    if _is_exact(a) and _is_exact(b):
        return a == b
    za, zb = to_complex(a), to_complex(b)
    return abs(za - zb) <= _MATCH_TOL * (1.0 + max(abs(za), abs(zb)))


def jet_compose(g: Jet, f: Jet) -> Jet:
    """Jet of g o f at f.source; orders are truncated to the smaller one."""
    if not _points_match(g.source, f.target):
        raise SourceTargetMismatch(
            f"inner target {f.target} does not match outer source {g.source}")
    k = min(f.order, g.order)
    n = k + 1
    tail_f = derivs_to_taylor([Fraction(0), *f.coeffs[:k]])
    tail_g = derivs_to_taylor([Fraction(0), *g.coeffs[:k]])
    comp = series_compose(tail_g, tail_f, n)
    derivs = taylor_to_derivs(comp)[1:]
    return Jet(f.source, g.target, tuple(derivs))


def jet_invert(f: Jet) -> Jet:
    """Groupoid inverse: the jet of the inverse germ at f.target."""
    c1 = f.coeffs[0]
    if c1 == 0 or (not _is_exact(c1) and abs(to_complex(c1)) < 1e-300):
        raise NotInvertible("first derivative vanishes")
    n = f.order + 1
    tail = derivs_to_taylor([Fraction(0), *f.coeffs])
    rev = series_reverse(tail, n)
    derivs = taylor_to_derivs(rev)[1:]
    return Jet(f.target, f.source, tuple(derivs))


def jet_of_polynomial(coeffs, point, order: int) -> Jet:
    """Jet at ``point`` of the polynomial map with the given coefficients."""
    derivs = []
    cs = list(coeffs)
    for _ in range(order + 1):
        value = Fraction(0)
        for c in reversed(cs):
            value = value * point + c
        derivs.append(value)
        cs = [i * c for i, c in enumerate(cs)][1:]
    return Jet(point, derivs[0], tuple(derivs[1:]))


@dataclass(frozen=True)
class JetVectorField:
    """k-jet of a vector field coefficient: f(x), f'(x), ..., f^(k)(x)."""

    base: object
    derivs: tuple

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    def deriv(self, j: int):
        if j >= len(self.derivs):
            raise OrderTooLow(f"vector field jet stores derivatives up to {self.order}")
        return self.derivs[j]
