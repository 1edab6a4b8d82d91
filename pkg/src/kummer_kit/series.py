"""Truncated power series on plain coefficient lists.

Series are lists ``[a0, a1, ...]`` in a local variable t; short lists are
implicitly zero-padded.  The routines are generic over the coefficient
type: Fraction and QuadRat give exact results, float/complex give
floating point ones.  Everything returns a list of exactly ``n`` terms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero, NotInvertible


def pad(a, n):
    out = list(a[:n])
    while len(out) < n:
        out.append(0 * out[0] if out else Fraction(0))
    return out


def series_add(a, b, n):
    a, b = pad(a, n), pad(b, n)
    return [x + y for x, y in zip(a, b)]


def series_scale(a, s, n):
    return [s * x for x in pad(a, n)]


def series_mul(a, b, n):
    a, b = pad(a, n), pad(b, n)
    out = [0 * (a[0] * b[0])] * n if n else []
    out = list(out)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(n - i):
            if b[j] == 0:
                continue
            out[i + j] = out[i + j] + x * b[j]
    return out


def series_div(a, b, n):
    a, b = pad(a, n), pad(b, n)
    if b[0] == 0:
        raise DivisionByZero("series division by a series with zero constant term")
    out = []
    acc = list(a)
    for k in range(n):
        v = acc[k] / b[0]
        out.append(v)
        for j in range(1, n - k):
            acc[k + j] = acc[k + j] - v * b[j]
    return out


def series_pow(a, m, n):
    out = pad([1], n)
    for _ in range(m):
        out = series_mul(out, a, n)
    return out


def series_compose(outer, inner, n):
    """outer(inner(t)) truncated; requires inner constant term zero."""
    inner = pad(inner, n)
    if inner[0] != 0:
        raise ValueError("inner series must have zero constant term")
    out = pad([], n)
    # Horner from the top coefficient down
    for c in reversed(pad(outer, n)):
        out = series_mul(out, inner, n)
        out[0] = out[0] + c
    return out


def series_reverse(a, n):
    """Compositional inverse: b with b(a(t)) = t; a = a1 t + ..., a1 != 0."""
    a = pad(a, n)
    if a[0] != 0:
        raise ValueError("series must have zero constant term")
    if a[1] == 0:
        raise NotInvertible("series with vanishing linear term")
    b = pad([], n)
    if n > 1:
        b[1] = 1 / a[1]
    for k in range(2, n):
        # coefficient of t^k in b(a(t)) must vanish; with b[k] still zero the
        # composition is short exactly by the b[k]*a1^k contribution
        comp = series_compose(b[: k + 1], a, k + 1)
        b[k] = -comp[k] * (b[1] ** k)
    return b


def series_deriv(a, n):
    a = pad(a, n + 1)
    return [(i + 1) * a[i + 1] for i in range(n)]


def series_sqrt(a, n, root0=None):
    """Square root of a series with a[0] != 0.

    ``root0`` optionally supplies the square root of the constant term
    (needed for exact arithmetic); floats use math/cmath.
    """
    a = pad(a, n)
    if a[0] == 0:
        raise ValueError("series sqrt needs nonzero constant term")
    if root0 is None:
        v = complex(a[0])
        root0 = v**0.5 if v.imag or v.real < 0 else math.sqrt(v.real)
    out = [root0] + [0 * root0] * (n - 1)
    for k in range(1, n):
        acc = a[k]
        for j in range(1, k):
            acc = acc - out[j] * out[k - j]
        out[k] = acc / (2 * root0)
    return out


def taylor_to_derivs(taylor):
    """[a0, a1, a2, ...] -> [f, f', f'', ...] via factorials."""
    fact = 1
    out = []
    for j, a in enumerate(taylor):
        if j:
            fact *= j
        out.append(a * fact)
    return out


def derivs_to_taylor(derivs):
    fact = 1
    out = []
    for j, d in enumerate(derivs):
        if j:
            fact *= j
        out.append(d / fact if not isinstance(d, int) else Fraction(d, fact))
    return out
