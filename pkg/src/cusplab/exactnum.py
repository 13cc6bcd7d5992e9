"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

A :class:`QuadIrr` is the number ``(p + q*sqrt(d)) / r`` read under the first
real embedding (``sqrt(d) > 0``); the second embedding sends ``sqrt(d)`` to
``-sqrt(d)``.  Every comparison is done with integer arithmetic only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt

from .errors import DomainError, IncompatibleFieldError
from .intmath import content, is_squarefree, sign, squarefree_part

Rational = int | Fraction


@total_ordering
@dataclass(frozen=True, eq=False)
class QuadIrr:
    p: int
    q: int
    r: int
    d: int

    def __post_init__(self):
        p, q, r, d = self.p, self.q, self.r, self.d
        if r == 0:
            raise DomainError("zero denominator")
        if d <= 1:
            raise DomainError(f"field label must be a squarefree integer > 1, got {d}")
        if r < 0:
            p, q, r = -p, -q, -r
        g = content(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    # -- construction -----------------------------------------------------

    @classmethod
    def rational(cls, x: Rational, d: int) -> QuadIrr:
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, d)

    @classmethod
    def sqrt(cls, d: int) -> QuadIrr:
        return cls(0, 1, 1, d)

    @classmethod
    def from_parts(cls, a: Rational, b: Rational, d: int) -> QuadIrr:
        """The number a + b*sqrt(d) for rationals a, b."""
        a, b = Fraction(a), Fraction(b)
        r = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        return cls(int(a * r), int(b * r), r, d)

    def _coerce(self, other) -> QuadIrr:
        if isinstance(other, QuadIrr):
            if other.d != self.d:
                raise IncompatibleFieldError(
                    f"Q(sqrt({self.d})) and Q(sqrt({other.d})) values cannot be mixed")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadIrr.rational(other, self.d)
        return NotImplemented

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadIrr(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r,
                       self.r * o.r, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr(-self.p, -self.q, self.r, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.d
        return QuadIrr(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p,
                       self.r * o.r, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadIrr:
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            # p^2 = d q^2 forces p = q = 0 for squarefree d > 1
            raise DomainError("division by zero")
        return QuadIrr(self.r * self.p, -self.r * self.q, n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadIrr:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = QuadIrr(1, 0, 1, self.d)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- invariants -------------------------------------------------------

    def conj(self) -> QuadIrr:
        return QuadIrr(self.p, -self.q, self.r, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    def trace(self) -> Fraction:
        return Fraction(2 * self.p, self.r)

    def is_rational(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if self.q:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def rational_parts(self) -> tuple[Fraction, Fraction]:
        """(a, b) with self = a + b*sqrt(d)."""
        return Fraction(self.p, self.r), Fraction(self.q, self.r)

    def sign(self, embedding: int = 1) -> int:
        if embedding not in (1, 2):
            raise DomainError("embedding must be 1 or 2")
        p = self.p
        q = self.q if embedding == 1 else -self.q
        sp, sq = sign(p), sign(q)
        if sp == 0 or sq == 0 or sp == sq:
            return sp or sq
        # opposite signs: whichever of p^2, q^2 d is larger wins
        return sp if p * p > q * q * self.d else sq

    def floor(self) -> int:
        if self.q == 0:
            return self.p // self.r
        t = isqrt(self.q * self.q * self.d)
        n = self.p + t if self.q > 0 else self.p - t - 1
        return n // self.r

    def ceil(self) -> int:
        if self.q == 0:
            return -((-self.p) // self.r)
        return self.floor() + 1

    def __float__(self) -> float:
        return self.approx(1)

    def approx(self, embedding: int = 1) -> float:
        s = 1 if embedding == 1 else -1
        try:
            return (self.p + s * self.q * math.sqrt(self.d)) / self.r
        except OverflowError:
            from decimal import Decimal, localcontext
            with localcontext() as ctx:
                ctx.prec = 50
                v = (Decimal(self.p) + s * Decimal(self.q) * Decimal(self.d).sqrt()) / Decimal(self.r)
            return float(v)

    # -- comparison (under the first embedding) ----------------------------

    def __eq__(self, other):
        if isinstance(other, QuadIrr):
            return (self.p, self.q, self.r, self.d) == (other.p, other.q, other.r, other.d)
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, self.r) == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (o - self).sign(1) > 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    # -- text -------------------------------------------------------------

    def __str__(self):
        op = "-" if self.q < 0 else "+"
        return f"({self.p}{op}{abs(self.q)}*sqrt({self.d}))/{self.r}"

    def __repr__(self):
        return f"QuadIrr('{self}')"


def qi_arith(x: QuadIrr, y: QuadIrr, op: str) -> QuadIrr:
    if x.d != y.d:
        raise IncompatibleFieldError(f"mismatched fields d={x.d} and d={y.d}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise DomainError(f"unknown operation {op!r}")


def qi_sign(x: QuadIrr, embedding: int) -> int:
    return x.sign(embedding)


def norm_trace_conj(x: QuadIrr) -> tuple[Fraction, Fraction, QuadIrr]:
    return x.norm(), x.trace(), x.conj()


def qi_floor_ceil(x: QuadIrr) -> tuple[int, int]:
    return x.floor(), x.ceil()


@dataclass(frozen=True)
class SurdValue:
    """The real number c*sqrt(n), n squarefree."""

    c: Fraction
    n: int = 1

    def __post_init__(self):
        c = Fraction(self.c)
        if self.n <= 0:
            raise DomainError("SurdValue radicand must be positive")
        n, f = squarefree_part(self.n)
        c *= f
        if c == 0:
            n = 1
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "n", n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdValue(self.c * other, self.n)
        if isinstance(other, SurdValue):
            return SurdValue(self.c * other.c, self.n * other.n)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> SurdValue:
        if self.c == 0:
            raise DomainError("division by zero")
        # 1/(c sqrt n) = sqrt(n) / (c n)
        return SurdValue(1 / (self.c * self.n), self.n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdValue(self.c / other, self.n)
        if isinstance(other, SurdValue):
            return self * other.inverse()
        return NotImplemented

    def __float__(self):
        return float(self.c) * math.sqrt(self.n)

    def __str__(self):
        if self.n == 1:
            return str(self.c)
        return f"{self.c}*sqrt({self.n})"


# -- parsing -------------------------------------------------------------

_TERM = re.compile(
    r"""\s*([+-]?)\s*
        (?:
            (?P<num>\d+)\s*(?:\*\s*sqrt\(\s*(?P<rad1>\d+)\s*\))?
          | sqrt\(\s*(?P<rad2>\d+)\s*\)
        )""",
    re.VERBOSE,
)


def _parse_sum(text: str, d: int | None):
    """Parse a signed sum of integer and integer*sqrt(n) terms."""
    a, b = 0, 0
    pos = 0
    text = text.strip()
    if not text:
        raise DomainError("empty number")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse quadratic irrational {text!r}")
        s = -1 if m.group(1) == "-" else 1
        rad = m.group("rad1") or m.group("rad2")
        coef = int(m.group("num")) if m.group("num") else 1
        if rad is None:
            a += s * coef
        else:
            n_sf, f = squarefree_part(int(rad))
            if n_sf == 1:
                a += s * coef * f
            else:
                if d is None:
                    d = n_sf
                elif d != n_sf:
                    raise IncompatibleFieldError(f"sqrt({rad}) does not lie in Q(sqrt({d}))")
                b += s * coef * f
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return a, b, d


def parse_quadirr(text: str, d: int | None = None) -> QuadIrr:
    """Parse forms like ``(p+q*sqrt(d))/r``, ``2-sqrt(3)``, ``1/2``, ``-3*sqrt(5)``."""
    s = text.strip().replace(" ", "")
    r = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", s) or re.fullmatch(r"([+-]?[^+-]+)/(\d+)", s)
    if m:
        s, r = m.group(1), int(m.group(2))
    a, b, d2 = _parse_sum(s, d)
    if d2 is None:
        raise DomainError(f"no field given for rational value {text!r}")
    if r == 0:
        raise DomainError("zero denominator")
    return QuadIrr(a, b, r, d2)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def is_valid_label(d: int) -> bool:
    return d > 1 and is_squarefree(d)
