"""Normalization: framing, curliness and the normalized invariant."""

from .framing import CurveCount, colored_curliness, count_curves, framing_exponent, framing_factor
from .invariant import (
    Engine,
    InvariantResult,
    WellDefined,
    choose_basepoint,
    colored_writhe,
    eval_at_one,
    link_alexander,
    link_potential,
    normalized_delta,
    raw_bracket,
    regular_value,
    state_contributions,
)
from .symbolic import SymbolicState, default_bindings, split_qint, symbolic_states

__all__ = [
    "CurveCount",
    "Engine",
    "InvariantResult",
    "SymbolicState",
    "WellDefined",
    "choose_basepoint",
    "colored_curliness",
    "colored_writhe",
    "count_curves",
    "default_bindings",
    "eval_at_one",
    "framing_exponent",
    "framing_factor",
    "link_alexander",
    "link_potential",
    "normalized_delta",
    "raw_bracket",
    "regular_value",
    "split_qint",
    "state_contributions",
    "symbolic_states",
]
