"""Exact rationals with the p-adic valuation.

Rationals are plain :class:`fractions.Fraction` values.  Valuations live in
the extended set ``Fraction | INF`` where :data:`INF` is an absorbing,
maximal element, so hull code can treat vanishing coefficients uniformly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

import gmpy2

__all__ = [
    "INF",
    "ExtVal",
    "PlusInfinity",
    "format_rat",
    "is_prime",
    "parse_rat",
    "vp",
    "vp_factorial",
    "vp_int",
]


@total_ordering
class PlusInfinity:
    """The valuation of zero. Singleton; use :data:`INF`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padic_radii.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF is undefined")
        return self

    def __neg__(self):
        raise ArithmeticError("-INF is not an extended valuation")

    def __reduce__(self):
        return (PlusInfinity, ())


INF = PlusInfinity()

ExtVal = Union[Fraction, PlusInfinity]


def is_prime(p: int) -> bool:
    return isinstance(p, int) and p >= 2 and bool(gmpy2.is_prime(p))


def vp_int(n: int, p: int) -> Union[int, PlusInfinity]:
    """Valuation of a nonzero integer; ``INF`` for zero."""
    if n == 0:
        return INF
    return int(gmpy2.remove(n, p)[1])


def vp(x, p: int) -> ExtVal:
    """p-adic valuation of a rational.

    Examples:
        >>> vp(Fraction(9, 10), 3), vp(Fraction(9, 10), 5)
        (Fraction(2, 1), Fraction(-1, 1))
        >>> vp(0, 5)
        INF
    """
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(vp_int(x.numerator, p) - vp_int(x.denominator, p))


def vp_factorial(n: int, p: int) -> int:
    """Legendre's formula: the exponent of ``p`` in ``n!``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(text) -> Fraction:
    """Parse the literal syntax ``a`` or ``a/b`` (ints pass through)."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RAT_RE.match(str(text))
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rat(x) -> str:
    if x is INF:
        return "+inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
