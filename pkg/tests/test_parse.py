from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apolar.errors import ParseError
from apolar.field import QQ, Field
from apolar.parse import parse_operator, parse_polynomial
from apolar.poly import Operator, Polynomial


def test_example_polynomial():
    f = parse_polynomial("x1^2*x2^2*x3 + x4^3*x1^2*x3")
    assert f == Polynomial(4, {(2, 2, 1, 0): 1, (2, 0, 1, 3): 1}, QQ)


def test_cancellation_gives_zero():
    assert parse_polynomial("x1 - x1").is_zero()


def test_rationals_parens_whitespace():
    f = parse_polynomial(" ( x1 + 1/2 * x2 ) ^ 2 ", 3)
    assert f.n == 3
    assert f.coefficient((1, 1, 0)) == 1
    assert f.coefficient((0, 2, 0)) == Fraction(1, 4)


def test_operator_over_fp():
    op = parse_operator("a4*a1 - 3*a2^2", field=Field(7))
    assert isinstance(op, Operator)
    assert op.coefficient((0, 2, 0, 0)) == 4


def test_unary_minus_and_products():
    assert parse_polynomial("-x1*-x2") == parse_polynomial("x1*x2")


@pytest.mark.parametrize("text,col,fragment", [
    ("x1^-2", 4, "exponent"),
    ("x1 + y2", 6, "unknown"),
    ("x5", 1, "x5"),
    ("x1 +", 5, "end"),
    ("2 $ x1", 3, "character"),
    ("((x1)", 6, ")"),
    ("x1 + 1/0", 8, "zero"),
    ("x1/2", 3, "/"),
    ("a1*x1", 1, ""),
])
def test_errors_are_positioned(text, col, fragment):
    with pytest.raises(ParseError) as ei:
        parse_polynomial(text, 4)
    e = ei.value
    assert e.start + 1 == col
    assert fragment in str(e)
    lines = str(e).splitlines()
    assert lines[1].strip() == text.strip()
    assert "^" in lines[2]


def test_index_beyond_n():
    with pytest.raises(ParseError, match="x3"):
        parse_polynomial("x1 + x3", 2)


@settings(max_examples=100)
@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-20, 20), max_size=6))
def test_print_parse_roundtrip(terms):
    f = Polynomial(2, terms, QQ)
    g = parse_polynomial(str(f), 2)
    assert g == f
