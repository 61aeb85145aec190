from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vlplus.scalars import (
    K,
    PoleError,
    Poly,
    RationalFunction,
    evaluate,
    format_scalar,
    parse_scalar,
    poly_gcd,
    reduce,
)

ks = sympy.Symbol("k")

small_coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=4)


def to_sympy(s):
    if isinstance(s, Fraction):
        return sympy.Rational(s.numerator, s.denominator)
    num = sum(sympy.Rational(c.numerator, c.denominator) * ks**i for i, c in enumerate(s.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * ks**i for i, c in enumerate(s.den.coeffs))
    return num / den


@st.composite
def rational_functions(draw):
    num = draw(small_coeffs)
    den = draw(small_coeffs.filter(lambda c: any(c)))
    return reduce(num, den)


def test_canonical_form_cancels_common_factor():
    # (k^2 - 1)/(2k - 2) = (k + 1)/2
    r = reduce([-1, 0, 1], [-2, 2])
    assert r.den.is_one()
    assert r == (K + 1) / 2
    assert format_scalar(r) == "1/2*k + 1/2"


def test_denominator_is_made_primitive():
    r = reduce([3], [0, 6])
    assert format_scalar(r) == "1/(2*k)"
    assert r == 1 / (2 * K)


def test_equal_values_hash_equal():
    a = reduce([0, 2], [0, 0, 4])
    b = 1 / (2 * K)
    assert a == b and hash(a) == hash(b)


def test_poly_gcd_matches_sympy():
    p = Poly([-6, 11, -6, 1])  # (k-1)(k-2)(k-3)
    q = Poly([6, -5, 1])  # (k-2)(k-3)
    g = poly_gcd(p, q)
    expected = sympy.Poly(sympy.gcd((ks - 1) * (ks - 2) * (ks - 3), (ks - 2) * (ks - 3)), ks)
    assert [Fraction(int(c)) for c in reversed(expected.all_coeffs())] == list(g.coeffs)


@settings(max_examples=60, deadline=None)
@given(rational_functions(), rational_functions())
def test_field_operations_agree_with_sympy(a, b):
    assert sympy.simplify(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.simplify(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    if b:
        assert sympy.simplify(to_sympy(a / b) - to_sympy(a) / to_sympy(b)) == 0


@settings(max_examples=80, deadline=None)
@given(rational_functions())
def test_format_parse_round_trip(r):
    assert parse_scalar(format_scalar(r), symbolic=True) == r


@given(st.fractions(max_denominator=50))
def test_fraction_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@settings(max_examples=60, deadline=None)
@given(rational_functions(), st.integers(1, 40))
def test_evaluate_matches_sympy(r, k):
    expr = to_sympy(r)
    if sympy.denom(sympy.together(expr)).subs(ks, k) == 0:
        with pytest.raises(PoleError):
            evaluate(r, k)
    else:
        assert evaluate(r, k) == Fraction(str(expr.subs(ks, k)))


def test_pole_error_reports_k():
    r = 1 / (4 * K - 1)
    with pytest.raises(PoleError) as info:
        evaluate(r, Fraction(1, 4))
    assert info.value.kvalue == Fraction(1, 4)


def test_parse_accepts_powers_and_products():
    assert parse_scalar("-6144*(4*k-1)/k", symbolic=True) == (-24576 * K + 6144) / K
    assert parse_scalar("k**2 - k^2", symbolic=True) == 0
    assert parse_scalar("3/(16*k^3)", symbolic=True)(2) == Fraction(3, 128)


def test_constant_rational_function_collapses():
    r = RationalFunction(Poly([4]), Poly([2]))
    assert r.is_constant() and r.constant_value() == 2
