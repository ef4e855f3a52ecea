import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kxring.errors import RealParameter
from kxring.fields import GaussianRational, PrimeField, Rationals
from kxring.linalg import (ExactMatrix, PolyMatrix, charpoly, companion, direct_sum, divisor_chain,
                           _row_echelon, invariant_factors, jordan_block, kronecker, nullspace, rank,
                           real_block)
from kxring.poly import parse_poly

Q = Rationals()


def M(rows, F=Q):
    return ExactMatrix.from_values(F, rows)


def P(text, F=Q):
    return parse_poly(text, F)


def smith_route(m):
    return divisor_chain(PolyMatrix.characteristic(m).smith_diagonal())


def test_jordan_blocks():
    assert jordan_block(Q, 5, 1) == M([[5]])
    assert jordan_block(Q, 0, 2) == M([[0, 1], [0, 0]])
    assert jordan_block(Q, 1, 3) == M([[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_real_blocks():
    assert real_block(GaussianRational(0, 1), 1) == M([[0, -1], [1, 0]])
    assert real_block(GaussianRational(1, 1), 1) == M([[1, -1], [1, 1]])
    r = real_block(GaussianRational(0, 1), 2)
    assert r == M([[0, -1, 1, 0], [1, 0, 0, 1], [0, 0, 0, -1], [0, 0, 1, 0]])
    with pytest.raises(RealParameter):
        real_block(GaussianRational(2, 0), 1)


def test_companion_layout():
    assert companion(P("x-3")) == M([[3]])
    assert companion(P("x^2-x+1")) == M([[0, -1], [1, 1]])
    assert companion(P("x^2")) == M([[0, 0], [1, 0]])


def test_kronecker():
    assert kronecker(M([[2]]), M([[3]])) == M([[6]])
    n = kronecker(jordan_block(Q, 0, 2), jordan_block(Q, 0, 2))
    assert (n @ n @ n).is_zero()
    b = M([[1, 2], [3, 4]])
    assert kronecker(ExactMatrix.identity(Q, 2), b) == direct_sum(b, b)


def test_rank():
    assert rank(ExactMatrix.zeros(Q, 3)) == 0
    assert rank(ExactMatrix.identity(Q, 3)) == 3
    assert rank(jordan_block(Q, 0, 3)) == 2


def test_invariant_factor_examples():
    assert list(invariant_factors(jordan_block(Q, 1, 2))) == [P("(x-1)^2")]
    assert list(invariant_factors(direct_sum(jordan_block(Q, 1, 1), jordan_block(Q, 1, 1)))) == [P("x-1")] * 2
    m = kronecker(jordan_block(Q, 1, 2), jordan_block(Q, 1, 3))
    assert list(invariant_factors(m)) == [P("(x-1)^2"), P("(x-1)^4")]


def test_invariant_factors_over_f3():
    F = PrimeField(3)
    m = kronecker(jordan_block(F, 1, 4), jordan_block(F, 1, 5))
    assert list(invariant_factors(m)) == [P(f"(x-1)^{k}", F) for k in (2, 4, 6, 8)]


def test_charpoly_of_companion():
    f = P("x^4-3x^3+x-7")
    assert charpoly(companion(f)) == f


def test_nullspace_dimension():
    m = M([[1, 2, 3], [2, 4, 6]])
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m.rows)


# -- properties ----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_rank_route_matches_smith_route(n, seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        m = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    else:
        m = direct_sum(*[jordan_block(Q, rng.choice([0, 1, -1, Fraction(1, 2)]), rng.randint(1, 3))
                         for _ in range(rng.randint(1, 3))])
    assert tuple(invariant_factors(m)) == smith_route(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_invariant_factors_are_a_divisor_chain(n, seed):
    rng = random.Random(seed)
    F = rng.choice([Q, PrimeField(2), PrimeField(5)])
    m = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], F)
    inv = invariant_factors(m)
    assert inv.degree == n
    for a, b in zip(inv.factors, inv.factors[1:]):
        assert (b % a).is_zero()
    assert inv.product(F) == charpoly(m)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_similarity_invariance(n, seed):
    rng = random.Random(seed)
    m = M([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
    while True:
        s = M([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank(s) == n:
            break
    from kxring.linalg import inverse

    assert invariant_factors(s @ m @ inverse(s)) == invariant_factors(m)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 7, 8388593]), st.integers(0, 10 ** 6))
def test_numpy_mod_p_routes_match_generic_elimination(p, seed):
    rng = random.Random(seed)
    F = PrimeField(p)
    n, m, k = rng.randint(1, 8), rng.randint(1, 8), rng.randint(1, 4)
    a = [[rng.choice([0, 0, 1, rng.randrange(p)]) for _ in range(m)] for _ in range(n)]
    b = [[rng.randrange(p) for _ in range(k)] for _ in range(m)]
    # row echelon over the generic field path is the reference
    assert rank(M(a, F)) == len(_row_echelon(M(a, F))[0])
    want = [[sum(x * y for x, y in zip(r, c)) % p for c in zip(*b)] for r in a]
    assert (M(a, F) @ M(b, F)).rows == M(want, F).rows
