"""MOY-relation rewriting: formal sums, local rules and the evaluator."""

from .evaluate import CITATIONS, RewriteStep, RewriteTrace, evaluate, measure, rewrite_to_planar
from .formal import FormalSum, canonical_form
from .relations import reduce_color_step, reducible_edges, remove_half_twist, remove_zero_edge, resolve_crossing

__all__ = [
    "CITATIONS",
    "FormalSum",
    "RewriteStep",
    "RewriteTrace",
    "canonical_form",
    "evaluate",
    "measure",
    "reduce_color_step",
    "reducible_edges",
    "remove_half_twist",
    "remove_zero_edge",
    "resolve_crossing",
    "rewrite_to_planar",
]
