"""Dedekind sums and the Rademacher functions on SL(2, Z).

Conventions (fixed so that the standard cusp of Q(sqrt(3)) has defect -1/3)::

    Phi(A) = b/d                                  if c == 0
    Phi(A) = (a + d)/c - 12 sign(c) s(d, |c|)     otherwise
    psi(A) = Phi(A) - 3 sign(c (a + d))           for |a + d| > 2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .intmath import sign


@dataclass(frozen=True)
class Monodromy:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(
                f"monodromy must have determinant 1, got {self.a * self.d - self.b * self.c}")

    @classmethod
    def from_rows(cls, rows) -> Monodromy:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2

    def __matmul__(self, o: Monodromy) -> Monodromy:
        return Monodromy(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                         self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> Monodromy:
        return Monodromy(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> Monodromy:
        return Monodromy(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> Monodromy:
        base = self if k >= 0 else self.inverse()
        out = Monodromy(1, 0, 0, 1)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def conjugate_by(self, u: Monodromy) -> Monodromy:
        """u A u^-1."""
        return u @ self @ u.inverse()

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def dedekind_sum(a: int, c: int) -> Fraction:
    """s(a, c) via the reciprocity law, O(log c) steps."""
    if c <= 0:
        raise DomainError("dedekind_sum needs c > 0")
    if gcd(a, c) != 1:
        raise DomainError(f"dedekind_sum needs gcd(a, c) = 1, got a={a}, c={c}")
    total = Fraction(0)
    s = 1
    a %= c
    # s(a,c) = -s(c,a) - 1/4 + (a/c + c/a + 1/(ac))/12, and s(c,a) = s(c mod a, a)
    while a:
        total += s * (Fraction(a * a + c * c + 1, 12 * a * c) - Fraction(1, 4))
        a, c = c % a, a
        s = -s
    return total


def dedekind_sum_direct(a: int, c: int) -> Fraction:
    """s(a, c) straight from the definition; O(c), kept as a cross-check."""
    if c <= 0 or gcd(a, c) != 1:
        raise DomainError("dedekind_sum_direct needs c > 0 and gcd(a, c) = 1")
    # ((k/c)) = (2k - c)/(2c) for 0 < k < c; ka is never divisible by c here
    num = sum((2 * k - c) * (2 * (k * a % c) - c) for k in range(1, c))
    return Fraction(num, 4 * c * c)


def rademacher_phi(A: Monodromy) -> Fraction:
    if A.c == 0:
        phi = Fraction(A.b, A.d)
    else:
        phi = Fraction(A.a + A.d, A.c) - 12 * sign(A.c) * dedekind_sum(A.d, abs(A.c))
    assert phi.denominator == 1, f"Rademacher Phi not integral for {A}"
    return phi


def rademacher_psi(A: Monodromy) -> int:
    if not A.is_hyperbolic():
        raise DomainError(f"psi needs a hyperbolic matrix (|trace| > 2), got trace {A.trace}")
    return int(rademacher_phi(A)) - 3 * sign(A.c * A.trace)
