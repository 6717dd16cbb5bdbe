"""Rewriting evaluator: reduce formal sums to planar diagrams and sum their invariants."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Union

from pydantic import BaseModel

from ..algebra import RationalFunc
from ..config import settings
from ..diagram.graph import MOYDiagram
from ..errors import MeasureNotLowered, NoReducibleEdge, NonPositiveColor, RewriteBudgetExceeded
from ..normalize.invariant import normalized_delta
from ..statesum.weights import CornerWeightTable, default_table
from .formal import FormalSum
from .relations import reduce_color_step, remove_half_twist, remove_zero_edge, resolve_crossing

logger = logging.getLogger(__name__)

Measure = tuple[int, int, int, int]

# Rule name -> relation it applies.
CITATIONS = {
    "twist": "(iii)",
    "crossing": "(iv)",
    "zero-edge": "(x)",
    "disconnected": "(ii)",
    "color": "(vi)+(viii)+(ix)+(x)",
}


def measure(d: MOYDiagram) -> Measure:
    """(crossings + half twists, maximal color, edges of maximal color, vertices).

    Every rewrite step strictly lowers this tuple lexicographically.
    """
    twists = sum(len(e.twists) for e in d.edges)
    m = d.max_color
    return (len(d.crossings) + twists, m, sum(1 for e in d.edges if e.color == m), len(d.vertices))


class RewriteStep(BaseModel):
    rule: str
    citation: str
    target: Optional[str] = None  # crossing, edge or twist the rule was applied to
    measure: Measure
    outputs: list[Measure] = []


class RewriteTrace(BaseModel):
    """Every applied rule, in order, plus the number of planar base terms."""

    steps: list[RewriteStep] = []
    base_terms: int = 0
    dropped: int = 0

    def lines(self) -> list[str]:
        out = []
        for k, step in enumerate(self.steps):
            target = f" {step.target}" if step.target else ""
            outputs = ", ".join(str(list(m)) for m in step.outputs) or "-"
            out.append(f"{k}\t{step.rule}{target}\t{step.citation}\t{list(step.measure)} -> {outputs}")
        out.append(f"base terms: {self.base_terms}, dropped: {self.dropped}")
        return out


def _next_rule(d: MOYDiagram, max_base_color: Optional[int] = None) -> Optional[tuple[str, Optional[str], FormalSum]]:
    """The rewrite to apply to d, or None when d is a base case.

    Planar terms are base cases at any coloring; with ``max_base_color`` set,
    planar terms above that color are reduced first where a reducible edge exists.
    """
    negative = [e.id for e in d.edges if e.color < 0]
    if negative:
        raise NonPositiveColor(f"edge {negative[0]} has negative color")
    if not d.is_connected:
        return "disconnected", None, FormalSum()
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.color == 0:
            try:
                return "zero-edge", e.id, remove_zero_edge(d, e.id)
            except ValueError as exc:
                raise NonPositiveColor(f"edge {e.id} has color 0 and is not a removable rung: {exc}") from exc
    twisted = sorted(e.id for e in d.edges if e.twists)
    if twisted:
        return "twist", twisted[0], remove_half_twist(d, twisted[0], 0)
    if d.crossings:
        crossing_id = min(x.id for x in d.crossings)
        return "crossing", crossing_id, resolve_crossing(d, crossing_id)
    limit = max(max_base_color, 2) if max_base_color is not None else None
    if limit is not None and d.vertices and d.is_trivalent and d.max_color > limit:
        try:
            return "color", None, reduce_color_step(d)
        except NoReducibleEdge:
            logger.debug("no reducible edge of color %d; evaluating as is", d.max_color)
    return None


def rewrite_to_planar(
    fs: FormalSum,
    trace: Optional[RewriteTrace] = None,
    max_terms: Optional[int] = None,
    max_base_color: Optional[int] = None,
) -> FormalSum:
    """Apply rules until every term is a connected planar diagram.

    Terms are kept keyed by canonical form, so equal intermediate diagrams
    merge after every step.
    """
    max_terms = max_terms or settings.rewrite_max_terms
    pending = FormalSum(fs.terms)
    base = FormalSum()
    while pending:
        coeff, d = pending.pop()
        rule = _next_rule(d, max_base_color)
        if rule is None:
            base.add(coeff, d)
            continue
        name, target, out = rule
        before = measure(d)
        after = [measure(e) for _, e in out]
        for m in after:
            if not m < before:
                raise MeasureNotLowered(f"rule {name} did not lower the measure: {before} -> {m}")
        logger.debug("%s %s: %s -> %s", name, target or "", before, after)
        if trace is not None:
            trace.steps.append(RewriteStep(rule=name, citation=CITATIONS[name], target=target, measure=before, outputs=after))
            if name == "disconnected":
                trace.dropped += 1
        for c, e in out:
            pending.add(coeff * c, e)
        if len(pending) + len(base) > max_terms:
            raise RewriteBudgetExceeded(f"formal sum exceeded {max_terms} terms")
    if trace is not None:
        trace.base_terms = len(base)
    return base


def evaluate(
    fs: Union[FormalSum, MOYDiagram],
    table: Optional[CornerWeightTable] = None,
    trace: Optional[RewriteTrace] = None,
    max_terms: Optional[int] = None,
    jobs: int = 1,
    max_base_color: Optional[int] = None,
) -> RationalFunc:
    """Sum of coefficient times normalized invariant after full rewriting.

    Base terms are evaluated with the state-sum engine, optionally on a
    thread pool; the sum is taken in term order so the result is the same
    for any ``jobs``.
    """
    if isinstance(fs, MOYDiagram):
        fs = FormalSum.single(fs)
    table = table or default_table()
    base = rewrite_to_planar(fs, trace, max_terms, max_base_color)
    terms = base.terms
    logger.debug("evaluating %d planar terms", len(terms))

    def value(d: MOYDiagram) -> RationalFunc:
        return RationalFunc.of(normalized_delta(d, table).delta)

    diagrams = [d for _, d in terms]
    if jobs > 1 and len(diagrams) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(value, diagrams))
    else:
        values = [value(d) for d in diagrams]
    total = RationalFunc(0)
    for (coeff, _), v in zip(terms, values):
        total = total + coeff * v
    return total
