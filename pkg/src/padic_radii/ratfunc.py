"""Polynomials and rational functions over Q in one variable ``T``.

Arithmetic is delegated to FLINT's ``fmpq_poly``; this module adds the
canonical form (coprime, monic denominator), the degree cap, Gauss
valuations at the point ``|.|_rho`` centred at 0, and the text grammar used
by every input file.

All valuations are in ``-log_p`` units: ``|f|_rho = p ** (-V(f))``.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import gmpy2
from flint import fmpq, fmpq_poly

from .scalars import INF, ExtVal, format_rat, is_prime

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DegreeCapExceeded",
    "ExpressionSyntaxError",
    "PointSpec",
    "Poly",
    "RatFunc",
    "T",
    "degree_cap",
    "derivative",
    "gauss_val",
    "gauss_val_poly",
    "get_degree_cap",
    "parse_expr",
]

DEFAULT_DEGREE_CAP = 512

_degree_cap = contextvars.ContextVar("degree_cap", default=DEFAULT_DEGREE_CAP)


class DegreeCapExceeded(ArithmeticError):
    """A rational function grew beyond the active degree cap."""

    def __init__(self, degree, cap):
        super().__init__(f"degree {degree} exceeds the cap {cap}")
        self.degree = degree
        self.cap = cap


def get_degree_cap() -> int:
    return _degree_cap.get()


@contextlib.contextmanager
def degree_cap(cap: int) -> Iterator[int]:
    """Temporarily set the degree cap enforced by :class:`RatFunc`."""
    if cap < 1:
        raise ValueError("degree cap must be positive")
    token = _degree_cap.set(cap)
    try:
        yield cap
    finally:
        _degree_cap.reset(token)


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class Poly:
    """Immutable dense polynomial with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, fmpq_poly):
            self._p = coeffs
        else:
            self._p = fmpq_poly([_to_fmpq(c) for c in coeffs])

    @classmethod
    def _wrap(cls, p: fmpq_poly) -> "Poly":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def flint(self) -> fmpq_poly:
        return self._p

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return self._p.degree()

    @property
    def coeffs(self) -> tuple:
        return tuple(_to_fraction(c) for c in self._p.coeffs())

    def __getitem__(self, i: int) -> Fraction:
        return _to_fraction(self._p[i])

    def is_zero(self) -> bool:
        return self._p.degree() < 0

    def leading(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self[self.degree]

    def _coerce(self, other) -> fmpq_poly:
        if isinstance(other, Poly):
            return other._p
        return fmpq_poly([_to_fmpq(other)])

    def __add__(self, other):
        return Poly._wrap(self._p + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Poly._wrap(self._p - self._coerce(other))

    def __rsub__(self, other):
        return Poly._wrap(self._coerce(other) - self._p)

    def __mul__(self, other):
        return Poly._wrap(self._p * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Poly._wrap(-self._p)

    def __pow__(self, n: int):
        return Poly._wrap(self._p ** n)

    def divrem(self, other: "Poly"):
        """Euclidean division; raises ``ZeroDivisionError`` for a zero divisor."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = divmod(self._p, other._p)
        return Poly._wrap(q), Poly._wrap(r)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero only when both inputs are zero)."""
        if self.is_zero() and other.is_zero():
            raise ZeroDivisionError("gcd(0, 0) is undefined")
        return Poly._wrap(self._p.gcd(other._p))

    def derivative(self) -> "Poly":
        return Poly._wrap(self._p.derivative())

    def inflate(self, p: int) -> "Poly":
        """Substitute ``T -> T**p``."""
        coeffs = self._p.coeffs()
        out = [0] * (len(coeffs) - 1) * p + [0] if coeffs else []
        for i, c in enumerate(coeffs):
            out[i * p] = c
        return Poly(out)

    def __call__(self, x):
        if isinstance(x, Poly):
            return Poly._wrap(self._p(x._p))
        return _to_fraction(self._p(_to_fmpq(x)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._p == other._p
        if isinstance(other, (int, Fraction)):
            return self._p == fmpq_poly([_to_fmpq(other)])
        return NotImplemented

    def __hash__(self):
        return hash(tuple((int(c.p), int(c.q)) for c in self._p.coeffs()))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _format_poly(self)


def _format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = format_rat(a)
        else:
            mono = "T" if k == 1 else f"T^{k}"
            body = mono if a == 1 else f"{format_rat(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RatFunc:
    """Reduced fraction ``num/den`` with ``den`` monic and coprime to ``num``.

    Construction canonicalizes and enforces the active degree cap.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFunc):
            if not (isinstance(den, int) and den == 1):
                num = num / RatFunc(den)
            self._num, self._den = num._num, num._den
            return
        n = num._p if isinstance(num, Poly) else (
            num if isinstance(num, fmpq_poly) else fmpq_poly([_to_fmpq(num)]))
        d = den._p if isinstance(den, Poly) else (
            den if isinstance(den, fmpq_poly) else fmpq_poly([_to_fmpq(den)]))
        self._num, self._den = _canonical(n, d)

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._num, obj._den = num, den
        return obj

    @property
    def num(self) -> Poly:
        return Poly._wrap(self._num)

    @property
    def den(self) -> Poly:
        return Poly._wrap(self._den)

    def is_zero(self) -> bool:
        return self._num.degree() < 0

    def is_one(self) -> bool:
        return self._den.degree() == 0 and self._num == 1

    def is_polynomial(self) -> bool:
        return self._den.degree() == 0

    def is_constant(self) -> bool:
        return self._den.degree() == 0 and self._num.degree() <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self._num[0])

    @property
    def degree(self) -> int:
        """max(deg num, deg den), the size measure the cap applies to."""
        return max(self._num.degree(), self._den.degree())

    @staticmethod
    def _lift(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, fmpq)):
            return RatFunc._raw(fmpq_poly([_to_fmpq(other)]), fmpq_poly([1]))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._den == other._den:
            return _build(self._num + other._num, self._den)
        return _build(self._num * other._den + other._num * self._den,
                      self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self._num, self._den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ZERO
        if other.is_constant():
            return RatFunc._raw(self._num * other._num[0], self._den)
        if self.is_constant():
            return RatFunc._raw(other._num * self._num[0], other._den)
        # cross-cancel before multiplying keeps intermediate degrees small
        g1 = self._num.gcd(other._den)
        g2 = other._num.gcd(self._den)
        n = (self._num / g1) * (other._num / g2)
        d = (self._den / g2) * (other._den / g1)
        return _build(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return _build(self._den, self._num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return _build(self._num ** n, self._den ** n)

    def derivative(self) -> "RatFunc":
        if self._den.degree() == 0:
            return _build(self._num.derivative(), self._den)
        n, d = self._num, self._den
        return _build(n.derivative() * d - n * d.derivative(), d * d)

    def inflate(self, p: int) -> "RatFunc":
        """Substitute ``T -> T**p``."""
        return _build(Poly._wrap(self._num).inflate(p)._p,
                      Poly._wrap(self._den).inflate(p)._p)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((Poly._wrap(self._num), Poly._wrap(self._den)))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self._den.degree() == 0:
            return _format_poly(self.num)
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"


def _canonical(n: fmpq_poly, d: fmpq_poly):
    if d.degree() < 0:
        raise ZeroDivisionError("rational function with zero denominator")
    if n.degree() < 0:
        return fmpq_poly([]), fmpq_poly([1])
    if d.degree() > 0:
        g = n.gcd(d)
        if g.degree() > 0:
            n = n / g
            d = d / g
    lc = d[d.degree()]
    if lc != 1:
        n = n / lc
        d = d / lc
    cap = _degree_cap.get()
    deg = max(n.degree(), d.degree())
    if deg > cap:
        raise DegreeCapExceeded(deg, cap)
    return n, d


def _build(n: fmpq_poly, d: fmpq_poly) -> RatFunc:
    return RatFunc._raw(*_canonical(n, d))


ZERO = RatFunc._raw(fmpq_poly([]), fmpq_poly([1]))
ONE = RatFunc._raw(fmpq_poly([1]), fmpq_poly([1]))
T = RatFunc._raw(fmpq_poly([0, 1]), fmpq_poly([1]))


def derivative(f) -> RatFunc:
    """d/dT of a rational function (or anything coercible to one)."""
    return RatFunc._lift(f).derivative()


@dataclass(frozen=True)
class PointSpec:
    """The Gauss point of radius ``rho = p**t`` centred at 0.

    Attributes:
        p: the residue characteristic.
        t: ``log_p(rho)``, an exact rational.
    """

    p: int
    t: Fraction

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p!r} is not prime")
        object.__setattr__(self, "t", Fraction(self.t))

    @property
    def omega_shift(self) -> Fraction:
        """``-log_p(omega) = 1/(p-1)``."""
        return Fraction(1, self.p - 1)

    @property
    def cutoff(self) -> Fraction:
        """``log_p(omega*rho)``; slopes strictly below it are visible."""
        return self.t - self.omega_shift

    @property
    def junk(self) -> Fraction:
        """``log_p(omega**p * rho**p)``, the filler slope of a push-forward."""
        return self.p * self.t - Fraction(self.p, self.p - 1)

    def pushed(self) -> "PointSpec":
        return PointSpec(self.p, self.p * self.t)


def _vp_fmpq(c: fmpq, p: int) -> int:
    num = int(c.p)
    den = int(c.q)
    v = int(gmpy2.remove(num, p)[1])
    if den != 1:
        v -= int(gmpy2.remove(den, p)[1])
    return v


def _gauss_val_flint(f: fmpq_poly, p: int, t: Fraction) -> ExtVal:
    best = INF
    for i, c in enumerate(f.coeffs()):
        if c == 0:
            continue
        v = _vp_fmpq(c, p) - i * t
        if best is INF or v < best:
            best = v
    return best


def gauss_val_poly(f, pt: PointSpec) -> ExtVal:
    """``V(f) = min_i vp(a_i) - i*t``, i.e. ``|f|_rho = max |a_i| rho**i``; ``INF`` for 0."""
    if not isinstance(f, Poly):
        f = Poly(f) if not isinstance(f, (int, Fraction)) else Poly.constant(f)
    v = _gauss_val_flint(f.flint, pt.p, pt.t)
    return v if v is INF else Fraction(v)


def gauss_val(f, pt: PointSpec) -> ExtVal:
    """Gauss valuation of a rational function, ``V(num) - V(den)``."""
    f = RatFunc._lift(f)
    if f.is_zero():
        return INF
    v = (_gauss_val_flint(f._num, pt.p, pt.t)
         - _gauss_val_flint(f._den, pt.p, pt.t))
    return Fraction(v)


# -- expression grammar -------------------------------------------------------
#
# expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
# factor := unary ('^' uint)? ; unary := ('+'|'-')* atom
# atom := integer | 'T' | '(' expr ')'
#
# ``a/b`` literals fall out of the '/' operator.  Leading signs are accepted
# so that negative coefficients can be written directly.


class ExpressionSyntaxError(ValueError):
    """Malformed rational-function expression; ``position`` is 0-based."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.text = text
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(self._tokenize(text))
        self.i = 0

    def _tokenize(self, text):
        j = 0
        while j < len(text):
            ch = text[j]
            if ch.isspace():
                j += 1
            elif ch.isdigit():
                k = j
                while k < len(text) and text[k].isdigit():
                    k += 1
                yield ("int", int(text[j:k]), j)
                j = k
            elif ch in "+-*/^()T":
                yield (ch, ch, j)
                j += 1
            else:
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, j)
        yield ("end", None, len(text))

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        what = "end of input" if tok[0] == "end" else repr(str(tok[1]))
        raise ExpressionSyntaxError(f"{message}, found {what}", self.text, tok[2])

    def parse(self) -> RatFunc:
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionSyntaxError("division by zero", self.text, pos)
                value = value / rhs
        return value

    def factor(self):
        base = self.unary()
        if self.peek()[0] == "^":
            self.take()
            _, n, _ = self.take("int")
            base = base ** n
        return base

    def unary(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        value = self.atom()
        return -value if sign < 0 else value

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return RatFunc(val)
        if kind == "T":
            self.take()
            return T
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        self.fail("expected a number, 'T' or '('")


def parse_expr(text: str) -> RatFunc:
    """Parse a rational function written in the input-file grammar.

    >>> parse_expr("(2*T)/(T+4)")
    RatFunc((2*T)/(T + 4))
    """
    if not isinstance(text, str):
        return RatFunc._lift(text)
    return _Parser(text).parse()


def as_ratfunc(x) -> RatFunc:
    """Coerce strings, numbers and polynomials to :class:`RatFunc`."""
    if isinstance(x, str):
        return parse_expr(x)
    out = RatFunc._lift(x)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return out


def matrix_of(rows: Sequence[Sequence]) -> list:
    return [[as_ratfunc(x) for x in row] for row in rows]
