"""Exact rational scalars and small vector helpers.

All geometry in this package runs over ``Q`` (gmpy2's ``mpq`` when available,
``fractions.Fraction`` otherwise).  Nothing is ever rounded.
"""
from __future__ import annotations

import re
from math import gcd

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str):
    """Parse ``p`` or ``p/q`` (no inner whitespace) into an exact rational."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text:
        p, d = text.split("/")
        if int(d) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Q(int(p), int(d))
    return Q(int(text))


def as_rational(x):
    if isinstance(x, str):
        return parse_rational(x)
    return Q(x)


def fmt(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def vec(xs) -> tuple:
    return tuple(as_rational(x) for x in xs)


def dot(a, b):
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def primitive(values) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers.

    The zero vector maps to itself.
    """
    values = [Q(v) for v in values]
    den = 1
    for v in values:
        d = int(v.denominator)
        den = den * d // gcd(den, d)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def primitive_int(values) -> tuple[int, ...]:
    """Like :func:`primitive` but for integer input (no denominators)."""
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return tuple(values)
    if g <= 1:
        return tuple(values)
    return tuple(v // g for v in values)


def fmt_vec(v) -> str:
    return " ".join(fmt(x) for x in v)
