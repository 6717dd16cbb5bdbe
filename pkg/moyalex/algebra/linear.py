"""Linear expressions in named integer variables, read from untrusted text.

Only integers, lowercase variable names, ``+ - * /`` and parentheses are
accepted. The text is tokenized against that grammar before sympy sees it,
and every name is bound to a fresh Symbol, so nothing in the text can reach
Python builtins.
"""

import keyword
import re
from tokenize import TokenError
from typing import Collection, Optional

import sympy as sp
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)(?![A-Za-z_\d.])|(?P<name>[a-z][a-z0-9_]*)(?!\s*[(.\[])|(?P<op>[-+*/()]))"
)

# Names auto_number and auto_symbol emit; user text cannot spell them.
_PARSER_GLOBALS = {"Integer": sp.Integer, "Rational": sp.Rational, "Symbol": sp.Symbol}


def linear_names(text: str) -> list[str]:
    """Variable names of ``text`` in order of appearance; ValueError if it is off-grammar."""
    names: list[str] = []
    pos = 0
    stripped = text.rstrip()
    if not stripped:
        raise ValueError("empty expression")
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"unexpected {stripped[pos:].strip()[:12]!r}")
        name = m.group("name")
        if name is not None:
            if keyword.iskeyword(name):
                raise ValueError(f"{name!r} is not a variable name")
            if name not in names:
                names.append(name)
        pos = m.end()
    return names


def parse_linear(text: str, variables: Optional[Collection[str]] = None) -> sp.Expr:
    """Parse ``text`` as an expression of total degree <= 1.

    ``variables`` restricts the names that may appear; by default any
    lowercase name is a variable.
    """
    names = linear_names(text)
    if variables is not None:
        unknown = sorted(set(names) - set(variables))
        if unknown:
            raise ValueError(f"unknown variables {unknown}")
    symbols = {name: sp.Symbol(name) for name in names}
    try:
        expr = parse_expr(
            text.strip(),
            local_dict=symbols,
            global_dict=dict(_PARSER_GLOBALS),
            transformations=standard_transformations,
        )
    except (SyntaxError, TokenError, TypeError, ZeroDivisionError, sp.SympifyError) as exc:
        raise ValueError(f"cannot read {text!r}") from exc
    if not isinstance(expr, sp.Expr) or expr.has(sp.zoo, sp.nan):
        raise ValueError(f"cannot read {text!r}")
    free = sorted(expr.free_symbols, key=str)
    if free and (not expr.is_polynomial(*free) or sp.Poly(expr, *free).total_degree() > 1):
        raise ValueError(f"{text!r} is not linear")
    return expr
