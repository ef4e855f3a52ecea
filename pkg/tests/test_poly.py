import random
from collections import Counter
from fractions import Fraction
from math import gcd as igcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kxring.errors import CapExceeded, DegreeTooLarge, ParseError, ZeroConstantTerm
from kxring.fields import PrimeField, Rationals
from kxring.poly import (Polynomial, derivative, extension_field, factor, format_poly, gcd, is_irreducible,
                         parse_poly, resultant, roots_in_extension, squarefree_decomposition, star_product)

Q = Rationals()


def P(text, F=Q):
    return parse_poly(text, F)


def numeric_star(f, g):
    """Independent oracle: multiply complex roots and round the coefficients."""
    rf = np.roots([float(c) for c in reversed(f.monic().coeffs)])
    rg = np.roots([float(c) for c in reversed(g.monic().coeffs)])
    coeffs = np.poly([a * b for a in rf for b in rg]).real
    return [round(c) for c in reversed(coeffs)]


def test_gcd_and_divmod():
    assert gcd(P("x^2-1"), P("x^2-2x+1")) == P("x-1")
    assert divmod(P("x^3"), P("x-1")) == (P("x^2+x+1"), P("1"))


def test_derivative_of_x_to_p_vanishes():
    F = PrimeField(5)
    assert derivative(P("x^5", F)).is_zero()


@pytest.mark.parametrize("a, b, expected", [
    ("x-2", "x-3", -1),
    ("x^2+1", "x^2+1", 0),
    ("x^2-2", "x^2-3", 1),
])
def test_resultant(a, b, expected):
    assert resultant(P(a), P(b)) == expected


def test_star_linear():
    assert star_product(P("x-2"), P("x-3")) == P("x-6")


def test_star_of_x2_minus_x_plus_1_with_itself():
    # roots are primitive 6th roots of unity; their pairwise products are
    # two primitive cube roots and 1 twice
    h = star_product(P("x^2-x+1"), P("x^2-x+1"))
    assert h == P("(x^2+x+1)*(x-1)^2")
    assert [int(c) for c in h.coeffs] == numeric_star(P("x^2-x+1"), P("x^2-x+1"))


def test_star_sqrt2_sqrt3():
    assert star_product(P("x^2-2"), P("x^2-3")) == P("(x^2-6)^2")


def test_star_rejects_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        star_product(P("x^2+x"), P("x-1"))


def test_squarefree_decomposition():
    sq = squarefree_decomposition(P("(x-1)^2*(x-2)"))
    assert sorted((format_poly(f), e) for f, e in sq) == [("x - 1", 2), ("x - 2", 1)]
    assert [(format_poly(f), e) for f, e in squarefree_decomposition(P("x^2", PrimeField(2)))] == [("x", 2)]


def test_squarefree_of_quartic():
    sq = squarefree_decomposition(P("x^4-3x^3+4x^2-3x+1"))
    assert sorted((format_poly(f), e) for f, e in sq) == [("x - 1", 2), ("x^2 - x + 1", 1)]


def test_factor_examples():
    assert [(format_poly(f), e) for f, e in factor(P("x^2-1"))] == [("x - 1", 1), ("x + 1", 1)]
    F5 = PrimeField(5)
    assert sorted(format_poly(f) for f, _ in factor(P("x^2+1", F5))) == ["x + 2", "x + 3"]
    fac = factor(P("x^4-3x^3+4x^2-3x+1"))
    assert sorted((format_poly(f), e) for f, e in fac) == [("x - 1", 2), ("x^2 - x + 1", 1)]


def test_factor_degree_cap():
    with pytest.raises(DegreeTooLarge):
        factor(P("x^5-x-1"), degree_cap=4)


def test_irreducibility():
    assert is_irreducible(P("x^2-2"))
    assert not is_irreducible(P("x^2-1"))
    assert is_irreducible(P("x^2+x+1", PrimeField(2)))


def test_roots_in_extension():
    F3 = PrimeField(3)
    r = roots_in_extension(P("x^2+1", F3), 2)
    E = extension_field(3, 2)
    assert len(r) == 2 and E.add(r[0], r[1]) == E.zero
    assert roots_in_extension(P("x-1", PrimeField(5)), 1) == [(1,)]
    assert roots_in_extension(P("x^2-x", PrimeField(2)), 1) == [(0,), (1,)]


def test_roots_enumeration_cap():
    with pytest.raises(CapExceeded):
        roots_in_extension(P("x^2+1", PrimeField(3)), 8, cap=100, method="enumerate")


def test_split_and_enumerate_agree():
    F = PrimeField(5)
    f = P("x^6+x+2", F) * P("x^2+2", F)
    assert roots_in_extension(f, 4, method="split") == roots_in_extension(f, 4, method="enumerate")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        P("x^2 + * 3")
    assert info.value.position >= 0


def test_json_round_trip():
    f = P("1/2x^3 - 3x + 7")
    assert Polynomial.from_json(Q, f.to_json()) == f
    assert f.to_json()["coeffs"][0] == "7"


# -- properties ----------------------------------------------------------------

small_int_poly = st.lists(st.integers(-4, 4), min_size=1, max_size=4).map(lambda cs: cs + [1])


def _random_irreducible(F, deg, rng):
    while True:
        f = Polynomial.from_ints(F, [rng.randrange(F.p) for _ in range(deg)] + [1])
        if f.constant_term() and is_irreducible(f):
            return f


@settings(max_examples=40, deadline=None)
@given(small_int_poly, small_int_poly)
def test_star_degree_and_commutativity(a, b):
    f, g = Polynomial.from_ints(Q, a), Polynomial.from_ints(Q, b)
    if f.constant_term() == 0 or g.constant_term() == 0:
        return
    h = star_product(f, g)
    assert h.degree == f.degree * g.degree
    assert h == star_product(g, f)
    assert star_product(f, P("x-1")) == f.monic()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5, 7]))
def test_star_root_multiset_over_fp(seed, p):
    rng = random.Random(seed)
    F = PrimeField(p)
    f = _random_irreducible(F, rng.randint(1, 3), rng)
    g = _random_irreducible(F, rng.randint(1, 3), rng)
    h = star_product(f, g)
    m = f.degree * g.degree // igcd(f.degree, g.degree)
    E = extension_field(p, m)
    prods = Counter(E.mul(a, b) for a in roots_in_extension(f, m) for b in roots_in_extension(g, m))
    assert prods == Counter(roots_in_extension(h, m))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_star_associative_over_f5(seed):
    rng = random.Random(seed)
    F = PrimeField(5)
    f, g, h = (_random_irreducible(F, rng.randint(1, 2), rng) for _ in range(3))
    assert star_product(star_product(f, g), h) == star_product(f, star_product(g, h))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=7), st.integers(0, 2))
def test_factor_remultiplies(cs, extra):
    f = Polynomial.from_ints(Q, cs)
    if f.degree < 1:
        return
    f = f * Polynomial.from_ints(Q, [1, 1]) ** extra
    fac = factor(f)
    assert fac.expand(Q) == f
    assert all(is_irreducible(h) for h, _ in fac)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=9), st.integers(0, 1000))
def test_factor_fp_remultiplies(cs, seed):
    F = PrimeField(7)
    f = Polynomial.from_ints(F, cs)
    if f.degree < 1:
        return
    fac = factor(f, seed=seed)
    assert fac.expand(F) == f
    assert all(is_irreducible(h) for h, _ in fac)


@given(st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5)), min_size=1, max_size=6))
def test_format_parse_round_trip(cs):
    f = Polynomial(Q, [Fraction(c) for c in cs])
    assert parse_poly(format_poly(f), Q) == f
