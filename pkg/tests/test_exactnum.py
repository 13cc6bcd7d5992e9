import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cusplab.errors import DomainError, IncompatibleFieldError
from cusplab.exactnum import (QuadIrr, SurdValue, norm_trace_conj, parse_quadirr, qi_arith,
                              qi_floor_ceil, qi_sign)
from cusplab.intmath import squarefree_part

DS = [2, 3, 5, 6, 7, 10, 13, 21, 33, 94, 1009]

small = st.integers(-10**6, 10**6)


@st.composite
def quadirrs(draw, d=None):
    d = d or draw(st.sampled_from(DS))
    return QuadIrr(draw(small), draw(small), draw(st.integers(1, 10**4)), d)


@st.composite
def pairs(draw):
    d = draw(st.sampled_from(DS))
    return draw(quadirrs(d)), draw(quadirrs(d)), draw(quadirrs(d))


def test_normal_form():
    x = QuadIrr(4, -6, -8, 3)
    assert (x.p, x.q, x.r) == (-2, 3, 4)
    assert QuadIrr(0, 0, 5, 7) == 0


def test_arith_examples():
    phi = QuadIrr(1, 1, 2, 5)
    assert phi * phi == phi + 1
    e = QuadIrr(2, 1, 1, 3)
    assert e.norm() == 1 and e.conj() == e.inverse()
    assert e ** -2 == QuadIrr(7, -4, 1, 3)


def test_mixed_fields_rejected():
    with pytest.raises(IncompatibleFieldError):
        QuadIrr(1, 1, 1, 2) + QuadIrr(1, 1, 1, 3)


def test_zero_division():
    with pytest.raises(DomainError):
        QuadIrr(1, 1, 1, 2) / QuadIrr(0, 0, 1, 2)


def test_d_must_exceed_one():
    with pytest.raises(DomainError):
        QuadIrr(1, 1, 1, 1)


@given(pairs())
def test_field_axioms(t):
    x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
    assert qi_arith(x, y, "mul") == x * y


@given(pairs())
def test_norm_trace_multiplicative(t):
    x, y, _ = t
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    n, tr, c = norm_trace_conj(x)
    assert n == x * c and tr == x + c


@given(quadirrs())
def test_floor_ceil_certified(x):
    f, c = qi_floor_ceil(x)
    assert (x - f).sign(1) >= 0 and (x - (f + 1)).sign(1) < 0
    assert (c - x).sign(1) >= 0 and c - f in (0, 1)


def test_sign_matches_interval_evaluation():
    rng = random.Random(20261015)
    mpmath.mp.dps = 60
    for _ in range(10_000):
        d = rng.choice(DS)
        q = rng.randint(-10**8, 10**8)
        # put p close to -q sqrt(d) so the sign is a near-cancellation
        p = -int(q * mpmath.sqrt(d)) + rng.randint(-2, 2)
        x = QuadIrr(p, q, rng.randint(1, 100), d)
        for emb, s in ((1, 1), (2, -1)):
            iv = mpmath.iv.mpf(x.p) + s * x.q * mpmath.iv.sqrt(mpmath.iv.mpf(d))
            want = 0 if x.p == 0 and x.q == 0 else (1 if iv.a > 0 else -1)
            assert iv.a > 0 or iv.b < 0 or want == 0
            assert qi_sign(x, emb) == want


def test_surd_value():
    assert SurdValue(Fraction(1), 12) == SurdValue(Fraction(2), 3)
    v = SurdValue(Fraction(2), 3) * SurdValue(Fraction(1, 12), 3)
    assert v == SurdValue(Fraction(1, 2), 1)
    assert str(SurdValue(Fraction(1, 18), 3)) == "1/18*sqrt(3)"
    assert abs(float(SurdValue(Fraction(2), 3)) - 2 * 3 ** 0.5) < 1e-15


@pytest.mark.parametrize("text,d,want", [
    ("(1+sqrt(5))/2", None, QuadIrr(1, 1, 2, 5)),
    ("2+sqrt(3)", None, QuadIrr(2, 1, 1, 3)),
    ("sqrt(12)", None, QuadIrr(0, 2, 1, 3)),
    ("-3*sqrt(2)/4", None, QuadIrr(0, -3, 4, 2)),
    ("7", 3, QuadIrr(7, 0, 1, 3)),
    ("(-1-sqrt(5))/2", 5, QuadIrr(-1, -1, 2, 5)),
])
def test_parse(text, d, want):
    assert parse_quadirr(text, d) == want


@pytest.mark.parametrize("text", ["1+", "sqrt(x)", "(1+sqrt(5)/2", "sqrt(2)+sqrt(3)"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        parse_quadirr(text)


def test_str_round_trip():
    for x in (QuadIrr(1, -1, 2, 5), QuadIrr(7, 4, 1, 3), QuadIrr(-3, 0, 5, 2)):
        assert parse_quadirr(str(x), x.d) == x


@pytest.mark.parametrize("n,want", [(12, (3, 2)), (50, (2, 5)), (7, (7, 1)), (1, (1, 1)),
                                    (2 * 3 * 5 * 7 * 11 * 13, (30030, 1)), (4 * 1009, (1009, 2))])
def test_squarefree_part(n, want):
    assert squarefree_part(n) == want
