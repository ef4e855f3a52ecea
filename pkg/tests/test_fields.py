from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kxring.errors import CompositeModulus, DivisionByZero, ReducibleModulus
from kxring.fields import (ExtensionField, GaussianRational, PrimeField, Rationals, format_gaussian,
                           is_prime, make_field)


def test_prime_field_descriptor():
    F = make_field("prime", 3)
    assert F.characteristic == 3
    assert F.tag == "f3"
    assert make_field("f3") == F


def test_composite_modulus_rejected():
    with pytest.raises(CompositeModulus):
        PrimeField(4)


def test_extension_field_f4():
    E = make_field("ext", 2, (1, 1, 1))
    assert E.characteristic == 2
    assert E.order == 4
    assert len(list(E.elements())) == 4


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        ExtensionField(2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F_2


def test_rational_arithmetic():
    Q = Rationals()
    assert Q.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    with pytest.raises(DivisionByZero):
        Q.inv(Fraction(0))


def test_prime_arithmetic():
    F = PrimeField(3)
    assert F.mul(2, 2) == 1
    assert F.inv(2) == 2
    with pytest.raises(DivisionByZero):
        F.inv(0)


def test_gaussian_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)


def test_gaussian_canonical_and_format():
    z = GaussianRational(1, -1)
    assert z.canonical() == GaussianRational(1, 1)
    assert format_gaussian(GaussianRational(1, 1)) == "1+i"
    assert format_gaussian(GaussianRational(0, 2)) == "2i"
    assert format_gaussian(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_inverse_mod_p(a):
    F = PrimeField(1000003)
    x = F.from_int(a)
    if x:
        assert F.mul(x, F.inv(x)) == 1


@given(st.lists(st.integers(0, 1), min_size=2, max_size=2), st.lists(st.integers(0, 1), min_size=2, max_size=2))
def test_f4_field_axioms(a, b):
    E = ExtensionField(2, (1, 1, 1))
    x, y = E._pack(a), E._pack(b)
    assert E.mul(x, y) == E.mul(y, x)
    if not E.is_zero(y):
        assert E.mul(E.div(x, y), y) == x


@given(st.sampled_from([(2, 5), (3, 4), (7, 3), (5, 6), (11, 2)]), st.data())
def test_extension_mul_matches_polynomial_reduction(pm, data):
    from kxring.poly import Polynomial, extension_field

    p, m = pm
    E = extension_field(p, m)
    Fp = PrimeField(p)
    elt = st.lists(st.integers(0, p - 1), min_size=m, max_size=m).map(tuple)
    a, b = data.draw(elt), data.draw(elt)
    want = (Polynomial(Fp, a) * Polynomial(Fp, b)) % Polynomial(Fp, E.modulus)
    assert E.mul(a, b) == E._pack(want.coeffs)
