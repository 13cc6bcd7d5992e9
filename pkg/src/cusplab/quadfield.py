"""Field-level invariants of real quadratic fields k = Q(sqrt(d))."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, isqrt

from .errors import DomainError
from .exactnum import QuadIrr
from .intmath import is_squarefree, squarefree_part

__all__ = [
    "FieldData", "field_data", "squarefree_part", "tp_unit_generator", "class_number",
    "reduced_forms", "rho", "form_cycles", "integral_basis",
]


def integral_basis(d: int) -> tuple[int, QuadIrr]:
    """(disc, omega) with O_k = Z + Z*omega."""
    if d % 4 == 1:
        return d, QuadIrr(1, 1, 2, d)
    return 4 * d, QuadIrr(0, 1, 1, d)


def _pell_unit(d: int) -> QuadIrr:
    # Continued fraction of omega written as (P + sqrt(d))/Q; the complete
    # quotients x_1..x_l over one period multiply to the fundamental unit.
    P, Q = (1, 2) if d % 4 == 1 else (0, 1)
    s = isqrt(d)
    a = (P + s) // Q
    P = a * Q - P
    Q = (d - P * P) // Q
    start = (P, Q)
    eps = QuadIrr(1, 0, 1, d)
    while True:
        eps = eps * QuadIrr(P, 1, Q, d)
        a = (P + s) // Q
        P = a * Q - P
        Q = (d - P * P) // Q
        if (P, Q) == start:
            return eps


@dataclass(frozen=True)
class FieldData:
    d: int
    disc: int
    omega: QuadIrr
    eps0: QuadIrr
    eps0_norm: int
    eps_plus: QuadIrr

    @cached_property
    def h_plus(self) -> int:
        return len(form_cycles(self.disc))

    @cached_property
    def h(self) -> int:
        return self.h_plus if self.eps0_norm == -1 else self.h_plus // 2

    def one(self) -> QuadIrr:
        return QuadIrr(1, 0, 1, self.d)

    def to_basis(self, x: QuadIrr):
        """Rational coordinates (u, v) of x = u + v*omega."""
        a, b = x.rational_parts()
        if self.d % 4 == 1:
            return a - b, 2 * b
        return a, b

    def from_basis(self, u, v) -> QuadIrr:
        return u + v * self.omega if v else QuadIrr.rational(u, self.d)

    def is_integral(self, x: QuadIrr) -> bool:
        u, v = self.to_basis(x)
        return u.denominator == 1 and v.denominator == 1


@lru_cache(maxsize=4096)
def field_data(d: int) -> FieldData:
    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"d must be a squarefree integer > 1, got {d}")
    disc, omega = integral_basis(d)
    eps0 = _pell_unit(d)
    n = eps0.norm()
    eps_plus = eps0 * eps0 if n == -1 else eps0
    return FieldData(d, disc, omega, eps0, int(n), eps_plus)


def tp_unit_generator(fd: FieldData) -> QuadIrr:
    return fd.eps_plus


def class_number(fd: FieldData) -> tuple[int, int]:
    return fd.h, fd.h_plus


# -- indefinite binary quadratic forms ----------------------------------------

def _is_reduced(a: int, b: int, D: int) -> bool:
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, D not a square
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a)
    return (t + b) ** 2 > D and (t - b <= 0 or (t - b) ** 2 < D)


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All primitive reduced forms (a, b, c) with b^2 - 4ac = D."""
    out = []
    s = isqrt(D)
    for b in range(D % 2 or 2, s + 1, 2):
        if b * b >= D:
            break
        n = (D - b * b) // 4  # = -a*c > 0
        for a in range(1, min(n, (s + b) // 2 + 1) + 1):
            if n % a:
                continue
            if not _is_reduced(a, b, D):
                continue
            c = -(n // a)
            for aa, cc in ((a, c), (-a, -c)):
                if gcd(gcd(aa, b), cc) == 1:
                    out.append((aa, b, cc))
    return out


def rho(form: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    """One reduction step (a, b, c) -> (c, b', a') with b' = -b mod 2c."""
    _, b, c = form
    s = isqrt(D)
    m = 2 * abs(c)
    b2 = -b + m * ((s + b) // m)
    return c, b2, (b2 * b2 - D) // (4 * c)


def form_cycles(D: int) -> list[list[tuple[int, int, int]]]:
    forms = reduced_forms(D)
    seen = set()
    cycles = []
    for f in forms:
        if f in seen:
            continue
        cyc = []
        g = f
        while g not in seen:
            seen.add(g)
            cyc.append(g)
            g = rho(g, D)
        cycles.append(cyc)
    return cycles
