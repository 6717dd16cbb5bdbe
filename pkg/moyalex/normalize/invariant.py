"""The normalized invariant and its link specialisations."""

import logging
from enum import Enum
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict

from ..algebra import ONE, ZERO, LaurentPoly, RationalFunc, brace_int, try_div, unit_canonical
from ..diagram.graph import MOYDiagram, mirror
from ..diagram.regions import build_regions, delta_weight, legal_basepoint, region_indices
from ..errors import BasepointOnBridge, NotALink, NotDivisible
from ..statesum.matrix import alexander_matrix, any_state, det_bracket, state_sign
from ..statesum.states import KauffmanState, bracket_of_model, enumerate_states, state_weight
from ..statesum.weights import CornerWeightTable, default_table
from .framing import colored_curliness, framing_factor

logger = logging.getLogger(__name__)

Value = Union[LaurentPoly, RationalFunc]


class Engine(str, Enum):
    STATESUM = "statesum"
    DET = "det"
    REWRITE = "rewrite"


class WellDefined(str, Enum):
    AMBIENT = "ambient"  # framed trivalent, positive colors
    REGULAR_UP_TO_UNIT = "regular_up_to_unit"  # general MOY diagram


class InvariantResult(BaseModel):
    """Normalized invariant with every factor that produced it."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    delta: Value
    framing: LaurentPoly
    curliness: LaurentPoly
    delta_weight: LaurentPoly
    vertex_count: int
    bracket: LaurentPoly
    well_defined: WellDefined
    basepoint: Optional[str] = None  # edge carrying delta
    engine: Engine = Engine.STATESUM
    unit_canonical: Optional[LaurentPoly] = None  # only for regular_up_to_unit results

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self.delta, LaurentPoly)

    @property
    def polynomial(self) -> LaurentPoly:
        if isinstance(self.delta, LaurentPoly):
            return self.delta
        return self.delta.to_poly()

    @property
    def rational(self) -> RationalFunc:
        return RationalFunc.of(self.delta)

    def factors(self) -> dict[str, str]:
        return {
            "framing": str(self.framing),
            "curliness": str(self.curliness),
            "delta_weight": str(self.delta_weight),
            "vertex_count": str(self.vertex_count),
            "bracket": str(self.bracket),
        }


def choose_basepoint(d: MOYDiagram) -> MOYDiagram:
    if d.basepoint is not None:
        if d.basepoint.edge in d.edge_map and d.color(d.basepoint.edge) != 0:
            return d
        logger.warning("basepoint on %s is not usable; placing it automatically", d.basepoint.edge)
    basepoint = legal_basepoint(d)
    logger.debug("basepoint placed on %s", basepoint.edge)
    return d.with_basepoint(basepoint)


def _region_model(d: MOYDiagram):
    try:
        return d, region_indices(d, build_regions(d))
    except BasepointOnBridge:
        logger.warning("basepoint on %s is a bridge; placing it automatically", d.basepoint.edge)
        d = d.with_basepoint(legal_basepoint(d))
        return d, region_indices(d, build_regions(d))


def raw_bracket(rm, table: CornerWeightTable, engine: Engine = Engine.STATESUM) -> LaurentPoly:
    """<D|delta> from a connected region model, by state sum or determinant."""
    if engine is Engine.DET:
        u, v = rm.marked
        det = det_bracket(alexander_matrix(rm, table), u, v)
        state = any_state(rm)
        return det * (state_sign(state, rm, table) if state is not None else 1)
    return bracket_of_model(rm, table)


def normalized_delta(
    d: MOYDiagram,
    table: Optional[CornerWeightTable] = None,
    engine: Engine = Engine.STATESUM,
    include_framing: bool = True,
) -> InvariantResult:
    """F(D) C(D,c) <D|delta> / (|delta| {1}^(|V|-1)).

    The basepoint is placed automatically when absent or unusable. With
    ``include_framing`` off the framing factor is left out, which gives the
    invariant used for unframed MOY graphs.
    """
    table = table or default_table()
    engine = Engine(engine)
    if engine is Engine.REWRITE:
        raise ValueError("the rewrite engine is driven through moyalex.rewrite.evaluate")
    d = choose_basepoint(d)
    d, rm = _region_model(d)
    weight = delta_weight(rm)
    br = raw_bracket(rm, table, engine) if d.is_connected else ZERO
    framing = framing_factor(d) if include_framing else ONE
    curliness = colored_curliness(d, rm.faces)
    n_vertices = len(d.vertices)

    numerator = framing * curliness * br
    denominator = weight
    if n_vertices == 0:
        numerator = numerator * brace_int(1)
    else:
        denominator = denominator * brace_int(1) ** (n_vertices - 1)
    quotient = try_div(numerator, denominator)
    if quotient is None:
        if n_vertices:
            logger.warning("%s: invariant is not a Laurent polynomial", d.name or "diagram")
        delta: Value = RationalFunc(numerator, denominator)
    else:
        delta = quotient

    ambient = d.is_trivalent and d.has_positive_colors
    well_defined = WellDefined.AMBIENT if ambient else WellDefined.REGULAR_UP_TO_UNIT
    canonical = None
    if not ambient:
        logger.debug("%s is not trivalent with positive colors; value is defined up to a unit", d.name or "diagram")
        if isinstance(delta, LaurentPoly):
            canonical = unit_canonical(delta)
    return InvariantResult(
        delta=delta,
        framing=framing,
        curliness=curliness,
        delta_weight=weight,
        vertex_count=n_vertices,
        bracket=br,
        well_defined=well_defined,
        basepoint=d.basepoint.edge,
        engine=engine,
        unit_canonical=canonical,
    )


def regular_value(d: MOYDiagram, table: Optional[CornerWeightTable] = None, engine: Engine = Engine.STATESUM) -> RationalFunc:
    """|delta|^-1 <D|delta>, the regular-isotopy quantity compared by moves."""
    table = table or default_table()
    d = choose_basepoint(d)
    d, rm = _region_model(d)
    br = raw_bracket(rm, table, Engine(engine)) if d.is_connected else ZERO
    return RationalFunc(br, delta_weight(rm))


def colored_writhe(d: MOYDiagram) -> int:
    """Sum over crossings of sign times the color of the over strand."""
    return sum(x.sign.value_int * d.color(x.over.edge) for x in d.crossings)


def _require_link(d: MOYDiagram) -> None:
    if d.vertices:
        raise NotALink(f"{d.name or 'diagram'} has {len(d.vertices)} vertices")


def link_alexander(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> LaurentPoly:
    """t^(-w(D)/2) times the regular-isotopy value, for 1-colored link diagrams."""
    _require_link(d)
    if any(e.color != 1 for e in d.edges):
        raise NotALink("link specialisation needs every component colored 1")
    result = normalized_delta(d, table)
    value = RationalFunc.of(result.delta) * LaurentPoly.monomial(-2 * colored_writhe(d))
    return value.to_poly()


def link_potential(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> RationalFunc:
    """-t^(-w_c(D*)/2) C(D*, c) |delta|^-1 <D*|delta> on the mirror image D*."""
    _require_link(d)
    table = table or default_table()
    m = choose_basepoint(mirror(d))
    m, rm = _region_model(m)
    br = raw_bracket(rm, table) if m.is_connected else ZERO
    scale = LaurentPoly.monomial(-2 * colored_writhe(m)) * colored_curliness(m, rm.faces)
    return -RationalFunc(scale * br, delta_weight(rm))


def eval_at_one(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> int:
    """Value of the invariant at t = 1."""
    result = normalized_delta(d, table)
    if isinstance(result.delta, LaurentPoly):
        return result.delta.evaluate_at_one()
    num = result.delta.numerator.evaluate_at_one()
    den = result.delta.denominator.evaluate_at_one()
    if den == 0 or num % den:
        raise NotDivisible(f"{result.delta} has no integer value at t = 1")
    return num // den


def state_contributions(
    d: MOYDiagram,
    table: Optional[CornerWeightTable] = None,
    include_framing: bool = True,
) -> list[tuple[KauffmanState, Value]]:
    """Each state's share of the normalized invariant, in enumeration order."""
    table = table or default_table()
    d = choose_basepoint(d)
    d, rm = _region_model(d)
    if not d.is_connected:
        return []
    scale = colored_curliness(d, rm.faces)
    if include_framing:
        scale = scale * framing_factor(d)
    denominator = delta_weight(rm)
    if d.vertices:
        denominator = denominator * brace_int(1) ** (len(d.vertices) - 1)
    else:
        scale = scale * brace_int(1)
    out = []
    for state in enumerate_states(rm):
        numerator = scale * state_weight(state, rm, table)
        quotient = try_div(numerator, denominator)
        out.append((state, quotient if quotient is not None else RationalFunc(numerator, denominator)))
    return out
