import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kxring.errors import NotIrreducible, ZeroConstantTerm, ZeroEigenvalue
from kxring.fields import GaussianRational, PrimeField, Rationals, RealClosedModel
from kxring.oracle import verify_module_product
from kxring.poly import parse_poly
from kxring.repring import (Band, JBlock, Nil, RBlock, RingElement, dim, format_element, ring_mul, size_ladder,
                            tensor)
from kxring.suites import random_irreducible

Q = Rationals()
RC = RealClosedModel()
F2, F3 = PrimeField(2), PrimeField(3)


def B(text, s=1, F=Q):
    return Band.checked(parse_poly(text, F), s)


def E(F, terms):
    return RingElement(F, terms)


def test_dimensions():
    assert dim(Nil(3)) == 3
    assert dim(B("x^2-x+1", 2)) == 4
    assert dim(E(RC, {RBlock(GaussianRational(0, 1), 2): 2})) == 8


def test_checked_band_rejects_bad_polynomials():
    with pytest.raises(NotIrreducible):
        B("x^2-1")
    with pytest.raises(ZeroConstantTerm):
        B("x^2+x")


def test_nilpotent_products():
    assert tensor(Q, Nil(2), Nil(3)) == E(Q, {Nil(2): 2, Nil(1): 2})
    assert tensor(Q, Nil(3), B("x^2-2")) == E(Q, {Nil(3): 2})
    assert tensor(Q, Nil(1), Nil(1)) == E(Q, {Nil(1): 1})


def test_char0_products():
    assert tensor(Q, B("x-1", 2), B("x-1", 3)) == E(Q, {B("x-1", 4): 1, B("x-1", 2): 1})
    assert tensor(Q, B("x-2"), B("x-3")) == E(Q, {B("x-6"): 1})


def test_char0_sixth_roots_of_unity():
    got = tensor(Q, B("x^2-x+1"), B("x^2-x+1"))
    assert got == E(Q, {B("x^2+x+1"): 1, B("x-1"): 2})
    assert verify_module_product(B("x^2-x+1"), B("x^2-x+1"), got).match


def test_charp_products():
    assert tensor(F2, B("x-1", 2, F2), B("x-1", 2, F2)) == E(F2, {B("x-1", 2, F2): 2})
    f = B("x^2+1", 1, F3)
    assert tensor(F3, B("x-1", 1, F3), f) == E(F3, {f: 1})
    got = tensor(F3, f, f)
    assert got == E(F3, {B("x+1", 1, F3): 2, B("x-1", 1, F3): 2})
    assert verify_module_product(f, f, got).match


def test_realclosed_products():
    i = GaussianRational(0, 1)
    assert tensor(RC, RBlock(i, 1), RBlock(i, 1)) == E(RC, {JBlock(-1, 1): 2, JBlock(1, 1): 2})
    z = GaussianRational(1, 1)
    assert tensor(RC, JBlock(2, 1), RBlock(z, 1)) == E(RC, {RBlock(GaussianRational(2, 2), 1): 1})
    got = tensor(RC, RBlock(z, 1), RBlock(z, 1))
    assert got == E(RC, {JBlock(2, 1): 2, RBlock(GaussianRational(0, 2), 1): 1})
    assert verify_module_product(RBlock(z, 1), RBlock(z, 1), got).match
    with pytest.raises(ZeroEigenvalue):
        tensor(RC, JBlock(0, 1), RBlock(z, 1))


def test_bilinear_expansion():
    a = E(Q, {Nil(1): 1, B("x-1"): 1})
    assert a * a == E(Q, {Nil(1): 3, B("x-1"): 1})


def test_formatting_order():
    e = tensor(Q, B("x-1", 2), B("x-1", 3))
    assert format_element(e) == "(x-1)^4 + (x-1)^2"
    assert str(E(Q, {Nil(3): 1, B("x-1", 2): 2})) == "x^3 + 2*(x-1)^2"


def test_size_ladder():
    assert size_ladder(2, 3) == [4, 2]
    assert size_ladder(4, 4) == [7, 5, 3, 1]


# -- properties ----------------------------------------------------------------


def random_indecomposable(F, rng):
    if isinstance(F, RealClosedModel):
        s = rng.randint(1, 2)
        if rng.random() < 0.2:
            return Nil(s)
        if rng.random() < 0.4:
            return JBlock(Fraction(rng.choice([1, 2, -1, 3])), s)
        return RBlock(GaussianRational(rng.randint(-2, 2), rng.choice([1, 2])), s)
    if rng.random() < 0.25:
        return Nil(rng.randint(1, 4))
    return Band(random_irreducible(F, rng.randint(1, 2), rng), rng.randint(1, 3))


def random_element(F, rng, terms=2):
    return E(F, {random_indecomposable(F, rng): rng.randint(-2, 3) for _ in range(terms)})


fields = st.sampled_from([Q, F2, F3, PrimeField(5), RC])


@settings(max_examples=50, deadline=None)
@given(fields, st.integers(0, 10 ** 6))
def test_ring_laws(F, seed):
    rng = random.Random(seed)
    a, b, c = (random_element(F, rng) for _ in range(3))
    assert ring_mul(a, b) == ring_mul(b, a)
    assert ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c))
    assert ring_mul(RingElement.one(F), a) == a
    assert dim(ring_mul(a, b)) == dim(a) * dim(b)


@settings(max_examples=40, deadline=None)
@given(fields, st.integers(0, 10 ** 6))
def test_products_confirmed_by_oracle(F, seed):
    rng = random.Random(seed)
    a, b = random_indecomposable(F, rng), random_indecomposable(F, rng)
    prod = tensor(F, a, b)
    assert prod.is_effective()
    assert verify_module_product(a, b, prod).match
