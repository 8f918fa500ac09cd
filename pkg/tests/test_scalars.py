from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from healie.scalars import CyclotomicField, FieldMismatchError, cyclotomic_polynomial, zeta_power

FIELDS = [CyclotomicField(N) for N in (1, 2, 3, 4, 5, 6, 12)]


def scalars(field):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(st.tuples(st.integers(0, field.N - 1), coeff), max_size=4).map(field.from_powers)


@st.composite
def triples(draw):
    f = draw(st.sampled_from(FIELDS))
    s = scalars(f)
    return draw(s), draw(s), draw(s)


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]


def test_zeta4_squared():
    f = CyclotomicField(4)
    assert f.zeta * f.zeta == -1


def test_zeta3_relation():
    f = CyclotomicField(3)
    assert f.zeta + f.zeta**2 == -1


def test_rational_sum():
    f = CyclotomicField(1)
    assert f(Fraction(1, 2)) + f(Fraction(1, 3)) == Fraction(5, 6)


def test_inverse_examples():
    f = CyclotomicField(4)
    assert f(2).inverse() == Fraction(1, 2)
    assert f.zeta.inverse() == -f.zeta


def test_inverse_of_one_plus_zeta3_against_sympy():
    f = CyclotomicField(3)
    x = sympy.Symbol("x")
    inv = sympy.Poly(sympy.invert(1 + x, x**2 + x + 1), x).all_coeffs()[::-1]
    expected = f.from_powers([(e, Fraction(int(sympy.numer(c)), int(sympy.denom(c)))) for e, c in enumerate(inv)])
    got = (1 + f.zeta).inverse()
    assert got == expected
    assert got * (1 + f.zeta) == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CyclotomicField(5).zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        CyclotomicField(3).zeta + CyclotomicField(4).zeta


def test_zeta_power_examples():
    f = CyclotomicField(4)
    assert zeta_power(f, (1, 2, 4), 1, 7) == 1
    assert zeta_power(f, (1, 2, 4), 2, 1) == -1
    assert zeta_power(f, (1, 2, 4), 3, 2) == -1


@pytest.mark.parametrize("m", [(1, 1), (2, 1), (3, 1, 1, 1), (4, 6), (5, 2)])
def test_zeta_power_primitive(m):
    from healie.scalars import lcm

    f = CyclotomicField(lcm(m))
    for i, mi in enumerate(m, start=1):
        assert zeta_power(f, m, i, mi) == 1
        assert all(zeta_power(f, m, i, r) != 1 for r in range(1, mi))


@given(triples())
@settings(max_examples=200, deadline=None)
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(st.sampled_from(FIELDS).flatmap(scalars))
@settings(max_examples=200, deadline=None)
def test_inverse_two_sided(a):
    if a:
        inv = a.inverse()
        assert a * inv == 1 and inv * a == 1


@given(st.sampled_from(FIELDS).flatmap(scalars))
@settings(max_examples=100, deadline=None)
def test_canonical_form(a):
    assert all(v for v in a.coeffs.values())
    assert all(0 <= e < a.field.degree for e in a.coeffs)
    assert hash(a) == hash(a + 0)


def test_rational_hash_matches_fraction():
    f = CyclotomicField(6)
    assert hash(f(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert f(Fraction(3, 4)) == Fraction(3, 4)
