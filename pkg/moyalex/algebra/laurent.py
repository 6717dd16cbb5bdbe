"""Exact Laurent polynomials in q = t^(1/4) over the integers.

Every quantity the invariant needs (t^(k/4), t^(k/2), quantum integers)
is an integer power series in q, so exponents are stored as plain ints in
q-units: t = q^4, t^(1/2) = q^2.
"""

import re
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

import sympy as sp
from sympy.polys.polyerrors import ExactQuotientFailed

from ..errors import DivisionByZero, NotDivisible, PolynomialParseError

_Q = sp.Symbol("q")

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable integer Laurent polynomial in q.

    The zero polynomial is the empty map; no stored coefficient is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = int(coeff)
                if coeff:
                    clean[int(exp)] = coeff
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # Constructors

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, coeff: int) -> "LaurentPoly":
        return cls({0: coeff})

    @classmethod
    def t_power(cls, exponent: Union[int, Fraction], coeff: int = 1) -> "LaurentPoly":
        """Return coeff * t^exponent; the exponent must be a multiple of 1/4."""
        q_exp = Fraction(exponent) * 4
        if q_exp.denominator != 1:
            raise ValueError(f"t^{exponent} is not a power of t^(1/4)")
        return cls({int(q_exp): coeff})

    # Inspection

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient map, ascending exponents."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    @property
    def lowest_coefficient(self) -> int:
        return self._terms[self.min_exponent]

    @property
    def highest_coefficient(self) -> int:
        return self._terms[self.max_exponent]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Ring operations

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({exp: -coeff for exp, coeff in self._terms.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial:
                raise NotDivisible(f"({self})^{n} is not a Laurent polynomial")
            exp, coeff = next(iter(self._terms.items()))
            if abs(coeff) != 1:
                raise NotDivisible(f"({self})^{n} is not a Laurent polynomial")
            return LaurentPoly({exp * n: coeff ** abs(n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({exp + k: coeff for exp, coeff in self._terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Substitute q -> q^-1, i.e. t -> t^-1."""
        return LaurentPoly({-exp: coeff for exp, coeff in self._terms.items()})

    def evaluate_at_one(self) -> int:
        return sum(self._terms.values())

    # Comparison and display

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_t_string(self) -> str:
        """Human-readable form in t, highest degree first."""
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in reversed(self._terms.items()):
            power = Fraction(exp, 4)
            if power == 0:
                body = str(abs(coeff))
            else:
                if power == 1:
                    t_part = "t"
                elif power.denominator == 1:
                    t_part = f"t^{power.numerator}"
                else:
                    t_part = f"t^({power.numerator}/{power.denominator})"
                body = t_part if abs(coeff) == 1 else f"{abs(coeff)}*{t_part}"
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    def to_sympy(self, t: Optional[sp.Symbol] = None) -> sp.Expr:
        """Expression in a sympy symbol t with rational exponents."""
        t = t or sp.Symbol("t")
        return sp.Add(*[coeff * t ** sp.Rational(exp, 4) for exp, coeff in self._terms.items()])


def _coerce(value: Scalar) -> "LaurentPoly":
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def quantum_int(k: int) -> LaurentPoly:
    """[k] = t^((k-1)/2) + t^((k-3)/2) + ... + t^((1-k)/2); [-k] = -[k]."""
    if k < 0:
        return -quantum_int(-k)
    return LaurentPoly({exp: 1 for exp in range(-2 * (k - 1), 2 * (k - 1) + 1, 4)})


def brace_int(k: int) -> LaurentPoly:
    """{k} = t^(k/2) - t^(-k/2)."""
    return LaurentPoly({2 * k: 1}) - LaurentPoly({-2 * k: 1})


def t_half(k: int) -> LaurentPoly:
    """t^(k/2)."""
    return LaurentPoly.monomial(2 * k)


def to_poly(p: LaurentPoly) -> tuple[int, sp.Poly]:
    """Split p = q^shift * P(q) with P(0) != 0; P is a sympy Poly over ZZ."""
    if p.is_zero:
        return 0, sp.Poly(0, _Q, domain=sp.ZZ)
    low = p.min_exponent
    dense = [p.coefficient(exp) for exp in range(p.max_exponent, low - 1, -1)]
    return low, sp.Poly.from_list(dense, _Q, domain=sp.ZZ)


def from_poly(poly: sp.Poly, shift: int = 0) -> LaurentPoly:
    coeffs = poly.all_coeffs()
    top = len(coeffs) - 1
    return LaurentPoly({shift + top - k: int(c) for k, c in enumerate(coeffs)})


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return c with a = b * c, or raise NotDivisible."""
    if b.is_zero:
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero:
        return ZERO
    if b.is_monomial and abs(b.lowest_coefficient) == 1:
        return a.shift(-b.min_exponent) * b.lowest_coefficient
    a_shift, a_poly = to_poly(a)
    b_shift, b_poly = to_poly(b)
    if a_poly.degree() < b_poly.degree():
        raise NotDivisible(f"({a}) / ({b}) is not a Laurent polynomial")
    try:
        quotient = a_poly.exquo(b_poly)
    except ExactQuotientFailed as exc:
        raise NotDivisible(f"({a}) / ({b}) is not a Laurent polynomial") from exc
    return from_poly(quotient, a_shift - b_shift)


def try_div(a: LaurentPoly, b: LaurentPoly) -> Optional[LaurentPoly]:
    try:
        return exact_div(a, b)
    except NotDivisible:
        return None


def eval_at_one(p: LaurentPoly) -> int:
    """Sum of all coefficients, i.e. the value at t = 1."""
    return p.evaluate_at_one()


def symmetry_shift(p: LaurentPoly) -> Optional[int]:
    """Return k with p(q) = q^k * p(q^-1), or None if no such k exists.

    The zero polynomial is symmetric with k = 0.
    """
    if p.is_zero:
        return 0
    k = p.min_exponent + p.max_exponent
    return k if p == p.invert_variable().shift(k) else None


def unit_canonical(p: LaurentPoly) -> LaurentPoly:
    """Shift by a power of t^(1/2) so the lowest exponent is q^0 or q^1."""
    if p.is_zero:
        return p
    low = p.min_exponent
    return p.shift(-(low - low % 2))


def format_poly(p: LaurentPoly) -> str:
    """Canonical text: terms c*q^e in ascending e, q^0 as a bare integer."""
    if p.is_zero:
        return "0"
    parts = []
    for exp, coeff in p.items():
        body = str(abs(coeff)) if exp == 0 else f"{abs(coeff)}*q^{exp}"
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append((" - " if coeff < 0 else " + ") + body)
    return "".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)(?:\s*\*\s*q\s*\^\s*(-?\d+))?\s*")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of format_poly; also accepts unsorted and repeated exponents."""
    source = text.strip()
    if not source:
        raise PolynomialParseError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(source):
        match = _TERM.match(source, pos)
        if match is None or match.end() == pos:
            raise PolynomialParseError(f"unexpected text at column {pos}: {source[pos:pos + 12]!r}")
        sign, coeff, exp = match.groups()
        if pos > 0 and sign is None:
            raise PolynomialParseError(f"missing '+' or '-' before term at column {pos}")
        value = int(coeff) * (-1 if sign == "-" else 1)
        exponent = int(exp) if exp is not None else 0
        terms[exponent] = terms.get(exponent, 0) + value
        pos = match.end()
    return LaurentPoly(terms)
