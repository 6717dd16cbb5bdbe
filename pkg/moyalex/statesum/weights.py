"""Corner weight tables for the Kauffman state sum.

A table is a versioned JSON resource. Every weight A or P is a pattern in
t whose exponents are linear expressions in the local colors; patterns are
compiled once with sympy and evaluated to LaurentPoly per crossing.
"""

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Optional, Union

import sympy as sp

from ..algebra import LaurentPoly, brace_int, parse_linear, quantum_int
from ..config import settings
from ..diagram.regions import CrossingKind
from ..errors import WeightTableError

logger = logging.getLogger(__name__)

CORNERS = {
    CrossingKind.POSITIVE: ("W", "S", "N", "E"),
    CrossingKind.NEGATIVE: ("W", "S", "N", "E"),
    CrossingKind.CIRCLE: ("N", "W", "E"),
}

_VARIABLES = ("a", "b", "i", "n")
_PATTERN = re.compile(r"^\s*(?P<sign>-?)\s*(?:t\^\((?P<power>[^()]*)\)|\{(?P<brace>[^{}]*)\}|\[(?P<qint>[^\[\]]*)\])\s*$")


@dataclass(frozen=True)
class LinearForm:
    """c0 + sum c_k * var_k with rational coefficients."""

    constant: Fraction
    coefficients: tuple[tuple[str, Fraction], ...]

    @classmethod
    def compile(cls, text: str) -> "LinearForm":
        symbols = {name: sp.Symbol(name) for name in _VARIABLES}
        try:
            expr = parse_linear(text, _VARIABLES)
        except ValueError as exc:
            raise WeightTableError(f"cannot read exponent {text!r}: {exc}") from exc
        coefficients = []
        for name, sym in symbols.items():
            c = expr.coeff(sym)
            if c != 0:
                coefficients.append((name, Fraction(int(c.p), int(c.q))))
        const = expr.subs({sym: 0 for sym in symbols.values()})
        return cls(Fraction(int(const.p), int(const.q)), tuple(coefficients))

    def __call__(self, env: Mapping[str, int]) -> Fraction:
        value = self.constant
        for name, c in self.coefficients:
            if name not in env:
                raise WeightTableError(f"variable {name} is not bound here")
            value += c * env[name]
        return value


@dataclass(frozen=True)
class WeightPattern:
    """±t^(x), ±{x} or ±[x] for a linear form x."""

    kind: str  # 'power', 'brace' or 'qint'
    form: LinearForm
    sign: int = 1
    text: str = ""

    @classmethod
    def compile(cls, text: str) -> "WeightPattern":
        match = _PATTERN.match(text)
        if match is None:
            raise WeightTableError(f"weight pattern {text!r} is not t^(x), {{x}} or [x]")
        sign = -1 if match["sign"] else 1
        for kind in ("power", "brace", "qint"):
            if match[kind] is not None:
                return cls(kind, LinearForm.compile(match[kind]), sign, text)
        raise WeightTableError(f"weight pattern {text!r} is empty")

    def __call__(self, env: Mapping[str, int]) -> LaurentPoly:
        x = self.form(env)
        if self.kind == "power":
            try:
                value = LaurentPoly.t_power(x)
            except ValueError as exc:
                raise WeightTableError(f"{self.text}: {exc}") from exc
        else:
            if x.denominator != 1:
                raise WeightTableError(f"{self.text} needs an integer argument, got {x}")
            value = brace_int(int(x)) if self.kind == "brace" else quantum_int(int(x))
        return value * self.sign


@dataclass(frozen=True)
class CornerWeight:
    """Weights of one corner: sign M, sign m, A and (circle kind) P."""

    M: int
    m: int
    A: WeightPattern
    P: Optional[WeightPattern] = None


@dataclass(frozen=True)
class CornerWeightTable:
    version: int
    corners: tuple[tuple[CrossingKind, tuple[tuple[str, CornerWeight], ...]], ...]
    basepoint_P: WeightPattern
    indices: tuple[tuple[CrossingKind, tuple[tuple[str, LinearForm], ...]], ...]
    source: Optional[str] = None

    def corner(self, kind: CrossingKind, name: str) -> CornerWeight:
        return dict(dict(self.corners)[kind])[name]

    def corner_names(self, kind: CrossingKind) -> tuple[str, ...]:
        return tuple(name for name, _ in dict(self.corners)[kind])

    def relative_index(self, kind: CrossingKind, name: str) -> Optional[LinearForm]:
        """Index of a corner's region relative to the west corner; None for circle regions."""
        return dict(dict(self.indices)[kind]).get(name)

    def MA(self, kind: CrossingKind, name: str, env: Mapping[str, int]) -> LaurentPoly:
        w = self.corner(kind, name)
        return w.A(env) * w.M

    def mA(self, kind: CrossingKind, name: str, env: Mapping[str, int]) -> LaurentPoly:
        w = self.corner(kind, name)
        return w.A(env) * w.m

    def P(self, kind: CrossingKind, name: str, env: Mapping[str, int]) -> LaurentPoly:
        w = self.corner(kind, name)
        if w.P is None:
            raise WeightTableError(f"no P weight for {kind.value} corner {name}")
        return w.P(env)

    def with_corner(self, kind: CrossingKind, name: str, weight: CornerWeight) -> "CornerWeightTable":
        """Copy with one corner replaced (calibration experiments)."""
        corners = []
        for k, entries in self.corners:
            if k is kind:
                entries = tuple((n, weight if n == name else w) for n, w in entries)
            corners.append((k, entries))
        return CornerWeightTable(self.version, tuple(corners), self.basepoint_P, self.indices, self.source)


def parse_weight_table(data: Mapping, source: Optional[str] = None) -> CornerWeightTable:
    """Compile a decoded JSON table."""
    try:
        version = int(data["version"])
        raw_corners = data["corners"]
        basepoint = WeightPattern.compile(data["basepoint"]["P"])
        raw_indices = data["indices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise WeightTableError(f"weight table is missing {exc}") from exc
    corners = []
    indices = []
    for kind, names in CORNERS.items():
        entries = raw_corners.get(kind.value)
        if not isinstance(entries, Mapping) or set(entries) != set(names):
            raise WeightTableError(f"{kind.value} crossings need exactly the corners {', '.join(names)}")
        compiled = []
        for name in names:
            entry = entries[name]
            M, m = entry.get("M"), entry.get("m")
            if M not in (1, -1) or m not in (1, -1):
                raise WeightTableError(f"{kind.value}/{name}: M and m must be 1 or -1")
            P = WeightPattern.compile(entry["P"]) if "P" in entry else None
            compiled.append((name, CornerWeight(M, m, WeightPattern.compile(entry["A"]), P)))
        corners.append((kind, tuple(compiled)))
        kind_indices = raw_indices.get(kind.value, {})
        indices.append((kind, tuple((name, LinearForm.compile(str(expr))) for name, expr in kind_indices.items())))
    return CornerWeightTable(version, tuple(corners), basepoint, tuple(indices), source)


def load_weight_table(path: Union[str, Path, None] = None) -> CornerWeightTable:
    """Load a table from ``path``, or the table in effect (MOYALEX_WEIGHT_TABLE or the shipped one)."""
    if path is None:
        if not settings.weight_table_exists:
            origin = "MOYALEX_WEIGHT_TABLE" if settings.has_weight_override else "shipped resource"
            raise WeightTableError(f"weight table {settings.weight_table_path} ({origin}) does not exist")
        if settings.has_weight_override:
            logger.info("using weight table override %s", settings.weight_table_path)
        path = settings.weight_table_path
    return _load_cached(str(Path(path).resolve()))


@lru_cache(maxsize=8)
def _load_cached(path: str) -> CornerWeightTable:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise WeightTableError(f"cannot read weight table {path}: {exc}") from exc
    table = parse_weight_table(data, source=path)
    logger.debug("loaded weight table v%d from %s", table.version, path)
    return table


def default_table() -> CornerWeightTable:
    return load_weight_table()
