"""Exact scalars: rationals and univariate rational functions in ``k``.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions
are kept in a canonical reduced form so that equality is structural:

* numerator and denominator are coprime,
* the denominator is a primitive integer polynomial with positive leading
  coefficient,
* zero is ``0/1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""

    def __init__(self, value, kvalue):
        super().__init__(f"denominator of {value} vanishes at k = {kvalue}")
        self.kvalue = kvalue


class ScalarModeError(TypeError):
    """Fixed-k and symbolic-k scalars were mixed in one computation."""


# ---------------------------------------------------------------------------
# polynomials over Q


class Poly:
    """Dense univariate polynomial in ``k`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``k**i``; trailing zeros are trimmed.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def k(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(tuple(out))

    def scale(self, c: Number) -> "Poly":
        if not c:
            return Poly()
        return Poly._raw(tuple(x * c for x in self.coeffs))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c:
                quot[i - dq] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * y
        return Poly(quot), Poly(rem[:dq])

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # integer content helpers -------------------------------------------------

    def denominator_lcm(self) -> int:
        return _fold(lcm, (c.denominator for c in self.coeffs), 1)

    def integer_content(self) -> Fraction:
        """Rational ``c`` with ``self / c`` primitive over Z and positive leading coefficient."""
        if not self.coeffs:
            return Fraction(1)
        d = self.denominator_lcm()
        ints = [int(c * d) for c in self.coeffs]
        g = _fold(gcd, ints, 0)
        c = Fraction(g, d)
        return c if ints[-1] > 0 else -c

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (coefficient lists, low to high)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(a: list[int]) -> list[int]:
    g = _fold(gcd, a, 0)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor, primitive over Z with positive leading coefficient.

    Uses the primitive polynomial remainder sequence so that intermediate
    coefficients stay integral and small.
    """
    if p.is_zero():
        return Poly.constant(1) if q.is_zero() else _as_primitive_poly(q)
    if q.is_zero():
        return _as_primitive_poly(p)
    a = _primitive(_to_ints(p))
    b = _primitive(_to_ints(q))
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    if not b:
        return Poly(_primitive(a))
    return Poly.constant(1)


def _to_ints(p: Poly) -> list[int]:
    d = p.denominator_lcm()
    return [int(c * d) for c in p.coeffs]


def _as_primitive_poly(p: Poly) -> Poly:
    return Poly(_primitive(_to_ints(p)))


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Element of Q(k) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly | Number = 0, den: Poly | Number = 1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        n, d = _canonical(num, den)
        self.num, self.den = n, d
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RationalFunction":
        r = object.__new__(cls)
        r.num, r.den = num, den
        r._hash = None
        return r

    @classmethod
    def k(cls) -> "RationalFunction":
        return cls._raw(Poly.k(), Poly.constant(1))

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw(Poly.constant(x), _ONE_POLY)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # predicates -------------------------------------------------------------

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num(0)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num.coeffs:
            return self
        if not self.num.coeffs:
            return o
        if self.den == o.den:
            num = self.num + o.num
            if num.is_zero():
                return ZERO_RF
            if self.den.is_one():
                return RationalFunction._raw(num, self.den)
            return RationalFunction(num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO_RF
            return RationalFunction._raw(self.num.scale(other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO_RF
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num * other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunction._raw(self.num.scale(Fraction(1) / other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE_RF
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, kvalue: Number) -> Fraction:
        return evaluate(self, kvalue)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"RationalFunction({format_scalar(self)})"


_ONE_POLY = Poly.constant(1)


def _canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return Poly(), _ONE_POLY
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = divmod(num, g)[0]
            den = divmod(den, g)[0]
    c = den.integer_content()
    if c != 1:
        den = den.scale(1 / c)
        num = num.scale(1 / c)
    return num, den


ZERO_RF = RationalFunction._raw(Poly(), _ONE_POLY)
ONE_RF = RationalFunction._raw(Poly.constant(1), _ONE_POLY)
K = RationalFunction.k()

Scalar = Union[Fraction, RationalFunction]


def reduce(num: Poly | Sequence[Number], den: Poly | Sequence[Number]) -> RationalFunction:
    """Canonical reduced form of ``num/den`` (coefficient sequences are low-degree first)."""
    num = num if isinstance(num, Poly) else Poly(num)
    den = den if isinstance(den, Poly) else Poly(den)
    return RationalFunction(num, den)


def evaluate(s: Scalar | int, kvalue: Number) -> Fraction:
    """Substitute a rational value for ``k``."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    d = s.den(kvalue)
    if not d:
        raise PoleError(s, kvalue)
    return s.num(kvalue) / d


def is_symbolic(s) -> bool:
    return isinstance(s, RationalFunction)


# ---------------------------------------------------------------------------
# serialization


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """``c_d*k^d + ... + c_0`` with zero terms omitted; ``0`` for the zero polynomial."""
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            body = _format_coeff(abs(c))
        else:
            mon = "k" if i == 1 else f"k^{i}"
            body = mon if abs(c) == 1 else f"{_format_coeff(abs(c))}*{mon}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms)


def format_scalar(s: Scalar | int) -> str:
    """Canonical string form used in JSON output."""
    if isinstance(s, int):
        return str(s)
    if isinstance(s, Fraction):
        return _format_coeff(s)
    if s.den.is_one():
        return format_poly(s.num)
    # display with an integral numerator: 1/16 / k^2 prints as 1/(16*k^2)
    m = s.num.denominator_lcm()
    num_p, den_p = s.num.scale(m), s.den.scale(m)
    num = format_poly(num_p)
    if sum(1 for c in num_p.coeffs if c) > 1:
        num = f"({num})"
    return f"{num}/({format_poly(den_p)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(k)|(\*\*|[-+*/^()]))")


def parse_scalar(text: str, symbolic: bool | None = None) -> Scalar:
    """Parse a scalar string (the output of :func:`format_scalar`, or any
    arithmetic expression in integers and ``k`` with ``+ - * / ^ ( )``).

    Returns a Fraction when ``k`` does not occur and ``symbolic`` is not True.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar {text!r} at offset {pos}")
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    toks.append(None)
    i = 0
    uses_k = False

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take()
            w = unary()
            v = v * w if op == "*" else v / w
        return v

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        v = atom()
        if peek() in ("^", "**"):
            take()
            e = unary()
            if not isinstance(e, RationalFunction) or not e.is_constant() or e.constant_value().denominator != 1:
                raise ValueError(f"non-integer exponent in {text!r}")
            v = v ** int(e.constant_value())
        return v

    def atom():
        nonlocal uses_k
        t = take()
        if t is None:
            raise ValueError(f"unexpected end of scalar {text!r}")
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        if t == "k":
            uses_k = True
            return K
        if t.isdigit():
            return RationalFunction.coerce(int(t))
        raise ValueError(f"unexpected token {t!r} in {text!r}")

    value = expr()
    if peek() is not None:
        raise ValueError(f"trailing input in scalar {text!r}")
    if symbolic or (symbolic is None and uses_k):
        return value
    if uses_k:
        raise ScalarModeError(f"symbolic scalar {text!r} in fixed-k context")
    return value.constant_value()
