from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringy_chi.coeff import PoleError, YPoly, YRational

y = YRational.y()
one = YRational(1)


def poly(*cs):
    return YRational(YPoly(cs))


def test_reduction_cancels_common_factor():
    f = poly(1, 0, -1) / poly(1, 1)
    assert f == poly(1, -1)
    assert f.den.is_one()


def test_self_quotient_is_one():
    assert poly(1, 1) / poly(1, 1) == one


def test_common_denominator():
    assert one / (1 + y) + y / (1 + y) == one


def test_denominator_is_monic():
    f = YRational(YPoly((1,)), YPoly((2, 4)))
    assert f.den.lead() == 1
    assert f.num == YPoly((Fraction(1, 4),))


def test_eval_after_reduction():
    f = poly(1, 0, -1) / poly(1, 1)
    assert f.eval_at(-1) == 2


def test_eval_polynomial():
    assert poly(1, -10, 1).eval_at(-1) == 12


def test_eval_at_pole():
    with pytest.raises(PoleError):
        (one / (1 + y)).eval_at(-1)


def test_as_polynomial():
    assert (poly(0, 1, 0, 1) / y).as_polynomial() == YPoly((1, 0, 1))
    assert (one / (1 + y)).as_polynomial() is None
    assert (poly(2, 2) / poly(1, 1)).as_polynomial() == YPoly((2,))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        one / YRational(0)


def test_gcd_monic():
    a = YPoly((-1, 0, 1))  # (y-1)(y+1)
    b = YPoly((2, 2))
    assert a.gcd(b) == YPoly((1, 1))


def test_substitute_inverse():
    # f(y) = y/(1+y)  ->  f(1/y) = 1/(1+y)
    f = y / (1 + y)
    assert f.substitute_inverse() == one / (1 + y)


def test_render():
    assert str(poly(1, -10, 1)) == "y^2-10*y+1"
    assert str(poly(0, Fraction(1, 2))) == "1/2*y"
    assert str(one / (1 + y)) == "(1)/(y+1)"
    assert str(YRational(0)) == "0"


def test_json_round_trip():
    f = poly(Fraction(1, 3), 0, -2) / poly(1, 1)
    assert YRational.from_json(f.to_json()) == f


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
ypolys = st.lists(small, min_size=0, max_size=4).map(YPoly)
nonzero_polys = ypolys.filter(lambda p: not p.is_zero())
yrats = st.builds(YRational, ypolys, nonzero_polys)
nonzero_rats = yrats.filter(lambda f: not f.is_zero())


@settings(max_examples=60, deadline=None)
@given(yrats, yrats, yrats)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == YRational(0)


@settings(max_examples=60, deadline=None)
@given(yrats, nonzero_rats)
def test_quotient_times_divisor(f, g):
    assert (f / g) * g == f
    assert g * g.inverse() == one


@settings(max_examples=60, deadline=None)
@given(yrats)
def test_canonical_form_idempotent(f):
    again = YRational(f.num, f.den)
    assert again.num == f.num and again.den == f.den
    assert f.den.lead() == 1


@settings(max_examples=60, deadline=None)
@given(ypolys, nonzero_polys)
def test_polynomial_division(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
