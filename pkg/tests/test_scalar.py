from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrango.scalar import (
    Cyclo,
    ParseError,
    cos_frac,
    cyclotomic_poly,
    parse_row,
    parse_scalar,
    sign,
    sin_frac,
    to_expr,
    zeta,
)

ORDERS = (5, 8, 12)
small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclo(draw, n=None, real=False):
    n = n or draw(st.sampled_from(ORDERS))
    if real:
        ks = draw(st.lists(st.integers(0, n), min_size=1, max_size=3))
        x = Cyclo.from_rational(n, 0)
        for k in ks:
            x = x + cos_frac(k, n) * draw(small)
        return x
    return Cyclo.from_coords(n, [draw(small) for _ in range(len(cyclotomic_poly(n)) - 1)])


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_basic_identities():
    assert cos_frac(1, 8) ** 2 == Fraction(1, 2)
    for k, n in ((1, 8), (2, 5), (3, 7), (5, 12)):
        assert sin_frac(k, n) ** 2 + cos_frac(k, n) ** 2 == 1
    w = zeta(1, 3)
    assert w ** 3 == 1 and w + w ** 2 == -1
    assert sin_frac(3, 12) == 1
    assert cos_frac(3, 12) == 0


def test_sign_examples():
    assert sign(cos_frac(1, 8)) == 1
    assert sign(cos_frac(3, 8)) == -1
    assert sign(cos_frac(1, 5) * 2 - Fraction(618, 1000)) == 1
    assert sign(Fraction(-3, 4)) == -1
    with pytest.raises(ValueError):
        sign(zeta(1, 3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    n = data.draw(st.sampled_from(ORDERS))
    a, b, c = (data.draw(cyclo(n)) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_sign_is_ordered_field(data):
    n = data.draw(st.sampled_from(ORDERS))
    a, b = data.draw(cyclo(n, real=True)), data.draw(cyclo(n, real=True))
    assert sign(a * b) == sign(a) * sign(b)
    assert sign(-a) == -sign(a)
    if abs(float(a)) > 1e-6:
        assert sign(a) == (1 if float(a) > 0 else -1)
    if sign(a) > 0 and sign(b) > 0:
        assert sign(a + b) > 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_expr_round_trip(data):
    x = data.draw(cyclo(real=data.draw(st.booleans())))
    assert parse_scalar(to_expr(x)) == x


def test_zero_versus_tiny():
    # exact zero whose float evaluation does not cancel exactly
    z = cos_frac(1, 5) + cos_frac(2, 5) + cos_frac(3, 5) + cos_frac(4, 5) + 1
    assert not z and sign(z) == 0
    # nonzero element far below double precision
    with mpmath.workdps(60):
        q = Fraction(int(mpmath.sqrt(2) * 10 ** 30), 10 ** 30) * Fraction(1, 2)
    x = cos_frac(1, 8) - q
    assert x and sign(abs(x) - Fraction(1, 10 ** 29)) < 0
    assert sign(x) == 1
    assert sign(q - cos_frac(1, 8)) == -1


def test_precision_env(monkeypatch):
    monkeypatch.setenv("ARRANGO_PRECISION", "16")
    with mpmath.workdps(60):
        q = Fraction(int(mpmath.sqrt(2) * 10 ** 40), 10 ** 40) * Fraction(1, 2)
    assert sign(cos_frac(1, 8) - q) == 1


def test_mixed_orders():
    assert cos_frac(1, 6) == Fraction(1, 2)
    assert cos_frac(1, 8).lift(16) == cos_frac(2, 16)
    assert cos_frac(1, 8) + cos_frac(1, 12) == cos_frac(3, 24) + cos_frac(2, 24)


def test_parse_row_splitting():
    row = parse_row("1 -1 cos(1,8)*2 - 3 sin(1,8)", 1)
    assert len(row) == 4
    assert row[2] == 2 * cos_frac(1, 8) - 3
    assert parse_row("1, 2 , 3/4") == [1, 2, Fraction(3, 4)]
    assert parse_row("(1 + cos(1,8))/2 # note") == [(1 + cos_frac(1, 8)) / 2]


@pytest.mark.parametrize("text,col", [("1 +", 4), ("cos(1)", 6), ("foo(1,2)", 1), ("1/0", 2), ("1 (2", 5)])
def test_parse_errors(text, col):
    with pytest.raises(ParseError) as e:
        parse_row(text, 3)
    assert (e.value.line, e.value.col) == (3, col)
