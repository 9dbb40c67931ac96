from fractions import Fraction

import pytest

from prehom.parser import PolySyntaxError, UnknownVariableError, parse_poly
from prehom.ratpoly import Poly, format_poly

XYZ = ["x", "y", "z"]


def test_divisor_text():
    assert parse_poly("x*(x*z - y^2)", XYZ) == Poly(3, {(2, 0, 1): 1, (1, 2, 0): -1})


def test_zero():
    assert parse_poly("0", XYZ).is_zero()


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_poly("x + q", ["x", "y"])
    assert info.value.name == "q"


def test_rational_literal():
    assert parse_poly("3/4*x", XYZ) == Poly(3, {(1, 0, 0): Fraction(3, 4)})


def test_unary_minus_and_precedence():
    assert parse_poly("-x^2", XYZ) == Poly(3, {(2, 0, 0): -1})
    assert parse_poly("-(x + y)*2", XYZ) == Poly(3, {(1, 0, 0): -2, (0, 1, 0): -2})


def test_multi_letter_names():
    f = parse_poly("x12*x34 - x22", ["x12", "x22", "x34"])
    assert f == Poly(3, {(1, 0, 1): 1, (0, 1, 0): -1})


@pytest.mark.parametrize("src", ["2x", "x y", "x(y)", "(x)(y)"])
def test_implicit_multiplication_rejected(src):
    with pytest.raises(PolySyntaxError):
        parse_poly(src, XYZ)


def test_float_rejected():
    with pytest.raises(PolySyntaxError):
        parse_poly("1.5*x", XYZ)


@pytest.mark.parametrize("src", ["x +", "(x", "x^-1", "x^y", "*x", ""])
def test_syntax_errors(src):
    with pytest.raises(PolySyntaxError):
        parse_poly(src, XYZ)


def test_error_position():
    with pytest.raises(PolySyntaxError) as info:
        parse_poly("x + * y", XYZ)
    assert info.value.position == 4


def test_zero_denominator():
    with pytest.raises(ValueError):
        parse_poly("1/0*x", XYZ)


def test_duplicate_names():
    with pytest.raises(ValueError):
        parse_poly("x", ["x", "x"])


def test_print_parse_idempotent():
    f = parse_poly("(x - 1/2*y)^3 + 7/3*z^2 - 4", XYZ)
    text = format_poly(f, XYZ)
    assert parse_poly(text, XYZ) == f
    assert format_poly(parse_poly(text, XYZ), XYZ) == text
