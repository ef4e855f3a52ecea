from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from kxring.errors import RangeError
from kxring.fields import PrimeField
from kxring.green import (RPrimeElement, WPolynomial, basis_product, format_v, format_w, ind_map, res_map,
                          rprime_mul, v_to_w, w_expand, w_times_v)
from kxring.linalg import jordan_block, kronecker
from kxring.oracle import jordan_type_unipotent

V = RPrimeElement.v


def jordan_oracle(s, t, p):
    F = PrimeField(p)
    jt = jordan_type_unipotent(kronecker(jordan_block(F, 1, s), jordan_block(F, 1, t)), 1)
    return RPrimeElement(p, Counter(jt.partition))


@pytest.mark.parametrize("alpha, r, p, expected", [
    (0, 1, 2, {2: 1}),
    (0, 2, 3, {3: 1, 1: 1}),
    (0, 2, 2, {2: 2}),
    (1, 1, 3, {4: 1, 2: -1}),
])
def test_w_times_v(alpha, r, p, expected):
    assert w_times_v(alpha, r, p) == RPrimeElement(p, expected)


def test_w_times_v_range():
    with pytest.raises(RangeError):
        w_times_v(0, 3, 2)


def test_v8_in_generators():
    assert format_w(v_to_w(8, 3)) == "w1^2*w0 + w1 - w0"


def test_trivial_translations():
    assert v_to_w(1, 5) == WPolynomial.const(5)
    assert v_to_w(2, 2) == WPolynomial.gen(2, 0)


def test_expand_examples():
    w1, w0 = WPolynomial.gen(3, 1), WPolynomial.gen(3, 0)
    assert format_v(w_expand(w1 * w1 * w0)) == "v8 - v4 + 2*v2"
    assert w_expand(WPolynomial.gen(2, 0)) == V(2, 2)
    assert w_expand(WPolynomial.const(7)) == V(7, 1)


def test_basis_products():
    assert basis_product(2, 2, 2) == V(2, 2, 2)
    assert basis_product(2, 2, 3) == V(3, 3) + V(3, 1)
    assert basis_product(1, 9, 5) == V(5, 9)


def test_restriction_and_induction():
    assert res_map(V(3, 8)) == RPrimeElement(3, {3: 2, 2: 1})
    assert ind_map(V(3, 2)) == V(3, 6)
    assert res_map(V(5, 5)) == V(5, 1, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_round_trip(p):
    for s in range(1, p ** 3 + 1):
        assert w_expand(v_to_w(s, p)) == V(p, s)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_products_match_rank_oracle(p):
    for s in range(1, 13):
        for t in range(s, 13):
            assert basis_product(s, t, p) == jordan_oracle(s, t, p), (s, t)


# -- properties ----------------------------------------------------------------

primes = st.sampled_from([2, 3, 5])


def element(p, bound):
    return st.dictionaries(st.integers(1, bound), st.integers(-3, 3), max_size=3).map(
        lambda d: RPrimeElement(p, d))


@settings(max_examples=60, deadline=None)
@given(st.data(), primes)
def test_ring_axioms(data, p):
    a, b, c = (data.draw(element(p, p * p)) for _ in range(3))
    assert rprime_mul(a, b) == rprime_mul(b, a)
    assert rprime_mul(rprime_mul(a, b), c) == rprime_mul(a, rprime_mul(b, c))
    assert rprime_mul(a, RPrimeElement.one(p)) == a
    assert rprime_mul(a, b).dim == a.dim * b.dim


@settings(max_examples=60, deadline=None)
@given(st.data(), primes)
def test_projection_formula(data, p):
    v, w = data.draw(element(p, 2 * p)), data.draw(element(p, p * p))
    assert rprime_mul(ind_map(v), w) == ind_map(rprime_mul(v, res_map(w)))


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(0, 2), st.integers(1, 40))
def test_ideal_generated_by_v_p_alpha(p, alpha, t):
    q = p ** alpha
    prod = basis_product(q, t, p)
    assert all(s % q == 0 for s in prod.coeffs)


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(1, 60), st.integers(1, 60))
def test_products_effective_with_dimension_st(p, s, t):
    prod = basis_product(s, t, p)
    assert all(c > 0 for c in prod.coeffs.values())
    assert prod.dim == s * t
