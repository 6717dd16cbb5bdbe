import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from moyalex.algebra import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunc,
    brace_int,
    exact_div,
    format_poly,
    linear_names,
    parse_linear,
    parse_poly,
    quantum_int,
    symmetry_shift,
    t_half,
    try_div,
    unit_canonical,
)
from moyalex.errors import DivisionByZero, NotDivisible, PolynomialParseError

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(LaurentPoly)
nonzero = polys.filter(lambda p: not p.is_zero)


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({3: 0, -1: 2})
    assert p.terms == {-1: 2}
    assert LaurentPoly({0: 0}) == ZERO
    assert not ZERO


def test_quantum_integers():
    assert quantum_int(1) == ONE
    assert quantum_int(2) == LaurentPoly({-2: 1, 2: 1})
    assert quantum_int(3) == LaurentPoly({-4: 1, 0: 1, 4: 1})
    assert quantum_int(0) == ZERO
    assert quantum_int(-2) == -quantum_int(2)


@pytest.mark.parametrize("k", range(1, 6))
def test_quantum_integer_is_brace_ratio(k):
    assert exact_div(brace_int(k), brace_int(1)) == quantum_int(k)


def test_t_half_and_t_power():
    assert t_half(1) == LaurentPoly.monomial(2)
    assert LaurentPoly.t_power(1) == LaurentPoly.monomial(4)
    with pytest.raises(ValueError):
        LaurentPoly.t_power(1 / 8)


def test_t_string():
    assert LaurentPoly({4: 1, 0: -1, -4: 1}).to_t_string() == "t - 1 + t^-1"
    assert LaurentPoly({2: -3}).to_t_string() == "-3*t^(1/2)"
    assert ZERO.to_t_string() == "0"


def test_format_and_parse():
    p = LaurentPoly({-6: -1, 0: 3, 2: 1})
    assert format_poly(p) == "-1*q^-6 + 3 + 1*q^2"
    assert parse_poly("3 + 1*q^2 - 1*q^-6") == p
    assert parse_poly("1*q^2 + 1*q^2") == LaurentPoly({2: 2})
    assert format_poly(ZERO) == "0"


@pytest.mark.parametrize("text", ["", "q^2", "1*q^x", "1 2"])
def test_parse_rejects_garbage(text):
    with pytest.raises(PolynomialParseError):
        parse_poly(text)


@given(polys)
def test_format_parse_inverse(p):
    assert parse_poly(format_poly(p)) == p


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a


@given(polys, nonzero)
def test_exact_division_undoes_multiplication(a, b):
    assert exact_div(a * b, b) == a


def test_inexact_division():
    assert try_div(ONE, quantum_int(2)) is None
    with pytest.raises(NotDivisible):
        exact_div(ONE, quantum_int(2))
    with pytest.raises(DivisionByZero):
        exact_div(ONE, ZERO)


def test_symmetry_and_unit_canonical():
    trefoil = LaurentPoly({4: 1, 0: -1, -4: 1})
    assert symmetry_shift(trefoil) == 0
    assert symmetry_shift(trefoil.shift(6)) == 12
    assert symmetry_shift(LaurentPoly({0: 1, 4: 2})) is None
    assert unit_canonical(trefoil.shift(-9)) == LaurentPoly({1: 1, 5: -1, 9: 1})
    assert unit_canonical(trefoil) == trefoil.shift(4)


def test_rational_normal_form():
    r = RationalFunc(quantum_int(2) * quantum_int(3), quantum_int(2))
    assert r.is_polynomial
    assert r == quantum_int(3)
    inverse = RationalFunc(1, quantum_int(2))
    assert not inverse.is_polynomial
    assert inverse * quantum_int(2) == 1
    assert RationalFunc(LaurentPoly.monomial(5), LaurentPoly.monomial(3)) == LaurentPoly.monomial(2)


def test_rational_arithmetic():
    a = RationalFunc(1, quantum_int(2))
    b = RationalFunc(1, quantum_int(3))
    total = a + b
    assert total * quantum_int(2) * quantum_int(3) == quantum_int(2) + quantum_int(3)
    assert (a / b) == RationalFunc(quantum_int(3), quantum_int(2))
    assert a**-1 == quantum_int(2)
    assert (a - a).is_zero
    with pytest.raises(DivisionByZero):
        RationalFunc(1, 0)
    with pytest.raises(NotDivisible):
        a.to_poly()


@given(nonzero, nonzero)
def test_rational_equality_is_structural(a, b):
    assert RationalFunc(a * b, b) == a
    assert hash(RationalFunc(a * b, b)) == hash(RationalFunc(a))


def test_invert_variable():
    r = RationalFunc(LaurentPoly.monomial(4), quantum_int(2) + 1)
    assert r.invert_variable().invert_variable() == r


def test_linear_expressions():
    i, k = sp.Symbol("i"), sp.Symbol("k")
    assert parse_linear("2*k - 1") == 2 * k - 1
    assert parse_linear("-n - i/2", ("n", "i")) == -sp.Symbol("n") - i / 2
    assert parse_linear(" 3 ") == 3
    assert linear_names("i + j - (i1 + 2)") == ["i", "j", "i1"]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "i*k",
        "i**2",
        "1/0",
        "(i",
        "2k",
        "1.5",
        "i.real",
        "abs(i)",
        "not i",
        "__import__('os')",
        "'i'",
    ],
)
def test_rejected_linear_expressions(text):
    with pytest.raises(ValueError):
        parse_linear(text)


def test_linear_expression_variables_are_restricted():
    with pytest.raises(ValueError, match="unknown variables"):
        parse_linear("i + m", ("i", "n"))
