"""Kauffman state sums, corner weights and the Alexander matrix."""

from .calibration import CalibrationCheck, CalibrationReport, calibrate_weights
from .matrix import (
    AlexanderMatrix,
    alexander_matrix,
    any_state,
    bareiss_det,
    bracket_by_determinant,
    det_bracket,
    determinant_bracket,
    state_sign,
)
from .states import (
    KauffmanState,
    StateFactors,
    bracket,
    bracket_of_model,
    enumerate_states,
    iter_states,
    planar_P_bracket,
    state_factors,
    state_weight,
)
from .weights import CornerWeight, CornerWeightTable, WeightPattern, default_table, load_weight_table, parse_weight_table

__all__ = [
    "AlexanderMatrix",
    "CalibrationCheck",
    "CalibrationReport",
    "CornerWeight",
    "CornerWeightTable",
    "KauffmanState",
    "StateFactors",
    "WeightPattern",
    "alexander_matrix",
    "any_state",
    "bareiss_det",
    "bracket",
    "bracket_by_determinant",
    "bracket_of_model",
    "calibrate_weights",
    "default_table",
    "det_bracket",
    "determinant_bracket",
    "enumerate_states",
    "iter_states",
    "load_weight_table",
    "parse_weight_table",
    "planar_P_bracket",
    "state_factors",
    "state_sign",
    "state_weight",
]
