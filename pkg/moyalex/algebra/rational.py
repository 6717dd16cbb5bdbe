"""Rational functions over the Laurent ring Z[q, q^-1]."""

from typing import Union

from ..errors import DivisionByZero, NotDivisible
from .laurent import ONE, ZERO, LaurentPoly, from_poly, to_poly

Operand = Union[int, LaurentPoly, "RationalFunc"]


class RationalFunc:
    """Immutable quotient numerator / denominator in lowest terms.

    Normal form: the denominator has lowest exponent q^0 with a positive
    coefficient there, and numerator and denominator share no common
    polynomial factor, so equality is structural.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Union[int, LaurentPoly], denominator: Union[int, LaurentPoly] = 1):
        num = LaurentPoly.constant(numerator) if isinstance(numerator, int) else numerator
        den = LaurentPoly.constant(denominator) if isinstance(denominator, int) else denominator
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        self.numerator, self.denominator = _normalize(num, den)

    @classmethod
    def of(cls, value: Operand) -> "RationalFunc":
        if isinstance(value, RationalFunc):
            return value
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.denominator == ONE

    def to_poly(self) -> LaurentPoly:
        if not self.is_polynomial:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.numerator

    def invert_variable(self) -> "RationalFunc":
        return RationalFunc(self.numerator.invert_variable(), self.denominator.invert_variable())

    def __add__(self, other: Operand) -> "RationalFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunc(self.numerator + other.numerator, self.denominator)
        return RationalFunc(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.numerator, self.denominator)

    def __sub__(self, other: Operand) -> "RationalFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Operand) -> "RationalFunc":
        return (-self) + other

    def __mul__(self, other: Operand) -> "RationalFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunc(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "RationalFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero(f"({self}) / 0")
        return RationalFunc(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other: Operand) -> "RationalFunc":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunc":
        if n < 0:
            if self.is_zero:
                raise DivisionByZero("zero to a negative power")
            return RationalFunc(self.denominator ** (-n), self.numerator ** (-n))
        return RationalFunc(self.numerator**n, self.denominator**n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"RationalFunc({self})"

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def to_t_string(self) -> str:
        if self.is_polynomial:
            return self.numerator.to_t_string()
        return f"({self.numerator.to_t_string()}) / ({self.denominator.to_t_string()})"


def _coerce(value: Operand) -> RationalFunc:
    if isinstance(value, RationalFunc):
        return value
    if isinstance(value, (int, LaurentPoly)):
        return RationalFunc(value)
    return NotImplemented


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero:
        return ZERO, ONE
    num_shift, num_poly = to_poly(num)
    den_shift, den_poly = to_poly(den)
    if den_poly.degree() == 0 and abs(den_poly.LC()) == 1:
        sign = int(den_poly.LC())
        return num.shift(-den_shift) * sign, ONE
    top, bottom = num_poly.cancel(den_poly, include=True)
    numerator = from_poly(top, num_shift - den_shift)
    denominator = from_poly(bottom)
    if denominator.lowest_coefficient < 0:
        numerator, denominator = -numerator, -denominator
    return numerator, denominator


def rf(value: Operand, denominator: Union[int, LaurentPoly] = 1) -> RationalFunc:
    """Shorthand constructor used throughout the rewrite engine."""
    if isinstance(value, RationalFunc):
        return value / RationalFunc(denominator)
    return RationalFunc(value, denominator)
