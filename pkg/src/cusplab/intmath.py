"""Small integer helpers shared by the arithmetic modules."""

from math import gcd, isqrt

from .errors import DomainError


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (d, f) with n = d * f**2 and d squarefree."""
    if n <= 0:
        raise DomainError(f"squarefree_part needs a positive integer, got {n}")
    d, f = 1, 1
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        d *= p ** (e % 2)
    p = 5
    step = 2
    # After trial division up to cbrt(m) the cofactor has at most two prime
    # factors, so it is either squarefree or a perfect square.
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            d *= p ** (e % 2)
        p += step
        step = 6 - step
    if m > 1:
        r = isqrt(m)
        if r * r == m:
            f *= r
        else:
            d *= m
    return d, f


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n)[1] == 1


def content(*xs: int) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def sign(x) -> int:
    return (x > 0) - (x < 0)
