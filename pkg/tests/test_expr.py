from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kxring.errors import NotIrreducible, ParseError
from kxring.expr import parse_gaussian, parse_module_expr, parse_rational
from kxring.fields import GaussianRational, Rationals, RealClosedModel
from kxring.poly import parse_poly
from kxring.quiver import StringDesc
from kxring.repring import Band, JBlock, Nil, RBlock, RingElement
from kxring.representation import QuiverShape

Q = Rationals()
RC = RealClosedModel()


def test_single_band():
    e = parse_module_expr("(x^2-x+1)^1", Q)
    assert e == RingElement(Q, {Band(parse_poly("x^2-x+1", Q), 1): 1})


def test_sum_with_coefficients():
    e = parse_module_expr("x^3 + 2*(x-1)^2", Q)
    assert e == RingElement(Q, {Nil(3): 1, Band(parse_poly("x-1", Q), 2): 2})


def test_reducible_band_rejected():
    with pytest.raises(NotIrreducible):
        parse_module_expr("(x^2-1)^1", Q)


def test_realclosed_atoms():
    e = parse_module_expr("J(2,1) - R(1-i,2) + J(0,3) + (x-3)^2", RC)
    assert e == RingElement(RC, {JBlock(2, 1): 1, RBlock(GaussianRational(1, 1), 2): -1, Nil(3): 1,
                                 JBlock(3, 2): 1})


def test_quiver_atoms():
    shape = QuiverShape(2)
    e = parse_module_expr("S(4,6) + 3*B(x-2,1)", Q, shape)
    assert StringDesc(1, 2) in e.terms


@pytest.mark.parametrize("text", ["", "(x-1", "2*", "x^0", "S(0,1)", "J(1,1)", "(x-1)^2 (x-2)", "x^3 ^2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_module_expr(text, Q)


def test_string_needs_quiver_and_order():
    with pytest.raises(ParseError):
        parse_module_expr("S(2,1)", Q, QuiverShape(1))


@pytest.mark.parametrize("text, value", [
    ("1+i", GaussianRational(1, 1)),
    ("2i", GaussianRational(0, 2)),
    ("-i", GaussianRational(0, -1)),
    ("1/2-3/4i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
    ("3", GaussianRational(3, 0)),
])
def test_gaussian_literals(text, value):
    assert parse_gaussian(text) == value


def test_bad_numbers():
    with pytest.raises(ValueError):
        parse_rational("1/")
    with pytest.raises(ValueError):
        parse_gaussian("i+1+")


@given(st.integers(-50, 50), st.integers(1, 9), st.integers(1, 5))
def test_element_str_round_trip(c, s, t):
    if c == 0:
        return
    e = RingElement(Q, {Nil(s): c, Band(parse_poly("x^2+1", Q), t): 1})
    assert parse_module_expr(str(e), Q) == e
