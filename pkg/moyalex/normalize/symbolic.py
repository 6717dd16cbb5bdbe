"""Symbolic per-state weights by fitting exponents over several color bindings.

Each state's share of the invariant is written as +-t^L [K]; L and K are
recovered as linear expressions in the color variables with sympy.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp

from ..algebra import LaurentPoly
from ..diagram.io import build_diagram, color_variables
from ..diagram.models import DiagramFile
from ..errors import MoyalexError, SymbolicFitError
from ..statesum.weights import CornerWeightTable
from .invariant import state_contributions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymbolicState:
    corners: tuple[str, ...]
    sign: int
    exponent: sp.Expr  # L, the power of t
    qint: sp.Expr  # K

    def __str__(self) -> str:
        text = ("" if self.sign > 0 else "-") + f"t^({self.exponent})"
        if self.qint != 1:
            text += f"*[{self.qint}]"
        return text


def split_qint(p: LaurentPoly) -> tuple[int, Fraction, int]:
    """Write p as sign * t^L * [K] with K >= 1; a monomial has K = 1."""
    items = list(p.items())
    if items:
        sign = items[0][1]
        exps = [exp for exp, _ in items]
        steady = all(high - low == 4 for low, high in zip(exps, exps[1:]))
        if abs(sign) == 1 and steady and all(coeff == sign for _, coeff in items):
            return sign, Fraction(exps[0] + exps[-1], 8), len(items)
    raise SymbolicFitError(f"{p.to_t_string()} is not of the form +-t^L [K]")


def default_bindings(variables: list[str]) -> list[dict[str, int]]:
    """All ones, each variable raised to 2, and one generic binding for checking the fit."""
    base = {v: 1 for v in variables}
    out = [base]
    for v in variables:
        out.append({**base, v: 2})
    out.append({v: 2 + 2 * k + 1 for k, v in enumerate(variables)})
    return out


def _fit(values: list[Fraction], bindings: list[dict[str, int]], variables: list[str]) -> sp.Expr:
    a0 = sp.Symbol("a0")
    coefficients = [sp.Symbol(f"a_{v}") for v in variables]
    equations = [
        a0 + sum(c * b[v] for c, v in zip(coefficients, variables)) - sp.Rational(y.numerator, y.denominator)
        for y, b in zip(values, bindings)
    ]
    solutions = sp.linsolve(equations, [a0, *coefficients])
    if not solutions:
        raise SymbolicFitError(f"values {[str(y) for y in values]} are not linear in {', '.join(variables)}")
    (solution,) = solutions
    return sp.nsimplify(solution[0] + sum(s * sp.Symbol(v) for s, v in zip(solution[1:], variables)))


def symbolic_states(
    doc: DiagramFile,
    table: Optional[CornerWeightTable] = None,
    bindings: Optional[list[dict[str, int]]] = None,
) -> list[SymbolicState]:
    """Per-state weights of a diagram with symbolic colors, in enumeration order."""
    variables = color_variables(doc)
    if not variables:
        raise SymbolicFitError("the diagram has no color variables")
    runs = []
    used = []
    for binding in bindings or default_bindings(variables):
        try:
            d = build_diagram(doc, binding)
            contributions = state_contributions(d, table)
        except MoyalexError as exc:
            logger.info("skipping binding %s: %s", binding, exc)
            continue
        runs.append(contributions)
        used.append(binding)
    if len(runs) < len(variables) + 1:
        raise SymbolicFitError(f"only {len(runs)} usable color bindings for {len(variables)} variables")
    counts = {len(run) for run in runs}
    if len(counts) != 1:
        raise SymbolicFitError(f"state counts differ between bindings: {sorted(counts)}")
    logger.debug("fitting %d states over %d bindings", counts.pop(), len(used))

    states = []
    for rows in zip(*runs):
        corners = rows[0][0].corners
        parts = []
        for _, value in rows:
            if not isinstance(value, LaurentPoly):
                raise SymbolicFitError(f"state {corners} has a non-polynomial weight")
            parts.append(split_qint(value))
        signs = {sign for sign, _, _ in parts}
        if len(signs) != 1:
            raise SymbolicFitError(f"state {corners} changes sign between bindings")
        exponent = _fit([L for _, L, _ in parts], used, variables)
        qint = _fit([Fraction(K) for _, _, K in parts], used, variables)
        states.append(SymbolicState(corners, signs.pop(), exponent, qint))
    return states
