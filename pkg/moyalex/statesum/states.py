"""Kauffman states and the state-sum bracket."""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from ..algebra import ONE, ZERO, LaurentPoly
from ..config import settings
from ..diagram.graph import Basepoint, MOYDiagram
from ..diagram.regions import CrossingKind, RegionModel, region_model
from ..errors import BasepointMissing, BasepointOnBridge, NotPlanar, NoVertices, StateLimitExceeded
from .weights import CornerWeightTable, default_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KauffmanState:
    """A bijection Cr(D) -> Re(D) minus the marked pair.

    ``corners[k]`` and ``regions[k]`` are the corner and region chosen for
    the k-th crossing of the region model.
    """

    corners: tuple[str, ...]
    regions: tuple[int, ...]

    def assignment(self, rm: RegionModel) -> dict[str, tuple[str, str]]:
        """Crossing id -> (region id, corner name)."""
        return {
            c.id: (rm.regions[region].id, corner)
            for c, corner, region in zip(rm.crossings, self.corners, self.regions)
        }


@dataclass(frozen=True)
class StateFactors:
    """M(s), A(s), m(s) and, for planar diagrams, P(s)."""

    M: int
    A: LaurentPoly
    m: int
    P: Optional[LaurentPoly] = None

    @property
    def weight(self) -> LaurentPoly:
        return self.A * self.M


def _options(rm: RegionModel, free: set[int]) -> list[list[tuple[str, int]]]:
    return [[(name, region) for name, region in c.corners if region in free] for c in rm.crossings]


def iter_states(rm: RegionModel, limit: Optional[int] = None) -> Iterator[KauffmanState]:
    """Backtracking over corner choices, most constrained crossing first."""
    if rm.marked is None:
        raise BasepointMissing("states need a basepoint")
    free = set(rm.free_regions())
    n = rm.n_crossings
    if n != len(free):
        return
    options = _options(rm, free)
    limit = settings.state_limit if limit is None else limit
    chosen_corner: list[Optional[str]] = [None] * n
    chosen_region: list[int] = [-1] * n
    used: set[int] = set()
    count = 0

    def pick() -> Optional[int]:
        best, best_size = None, None
        for k in range(n):
            if chosen_corner[k] is not None:
                continue
            size = sum(1 for _, region in options[k] if region not in used)
            if best_size is None or size < best_size:
                best, best_size = k, size
                if size == 0:
                    break
        return best

    def search(depth: int) -> Iterator[KauffmanState]:
        nonlocal count
        if depth == n:
            count += 1
            if count > limit:
                raise StateLimitExceeded(f"more than {limit} states")
            yield KauffmanState(tuple(chosen_corner), tuple(chosen_region))
            return
        k = pick()
        for name, region in options[k]:
            if region in used:
                continue
            used.add(region)
            chosen_corner[k], chosen_region[k] = name, region
            yield from search(depth + 1)
            used.discard(region)
            chosen_corner[k], chosen_region[k] = None, -1

    yield from search(0)


def enumerate_states(rm: RegionModel, limit: Optional[int] = None) -> list[KauffmanState]:
    """All Kauffman states, sorted by their corner choices in Cr(D) order."""
    states = sorted(iter_states(rm, limit), key=lambda s: (s.corners, s.regions))
    logger.debug("enumerated %d states over %d crossings", len(states), rm.n_crossings)
    return states


def _marked_model(d: MOYDiagram, basepoint: Optional[Basepoint]) -> RegionModel:
    if basepoint is not None:
        d = d.with_basepoint(basepoint)
    if d.basepoint is None:
        raise BasepointMissing("no basepoint set")
    return region_model(d)


def state_factors(
    state: KauffmanState, rm: RegionModel, table: CornerWeightTable, with_P: bool = False
) -> StateFactors:
    M, m = 1, 1
    A = ONE
    P = ONE if with_P else None
    basepoint_crossing = f"c:{rm.basepoint_edge}"
    for c, corner in zip(rm.crossings, state.corners):
        weight = table.corner(c.kind, corner)
        env = c.color_env
        M *= weight.M
        m *= weight.m
        A = A * weight.A(env)
        if with_P:
            if c.kind is not CrossingKind.CIRCLE:
                raise NotPlanar("P weights exist for planar diagrams only")
            if c.id == basepoint_crossing and corner == "N":
                u, _ = rm.marked
                P = P * table.basepoint_P({"i": env["i"], "n": rm.index(u)})
            else:
                P = P * table.P(c.kind, corner, env)
    return StateFactors(M, A, m, P)


def state_weight(state: KauffmanState, rm: RegionModel, table: CornerWeightTable) -> LaurentPoly:
    """M(s) * A(s)."""
    return state_factors(state, rm, table).weight


def bracket(
    d: MOYDiagram,
    basepoint: Optional[Basepoint] = None,
    table: Optional[CornerWeightTable] = None,
) -> LaurentPoly:
    """<D|delta> = sum over states of M(s) A(s); zero for disconnected diagrams or a bridge basepoint."""
    table = table or default_table()
    if not d.is_connected:
        return ZERO
    try:
        rm = _marked_model(d, basepoint)
    except BasepointOnBridge:
        return ZERO
    return bracket_of_model(rm, table)


def bracket_of_model(rm: RegionModel, table: CornerWeightTable) -> LaurentPoly:
    cache: dict[tuple[int, str], LaurentPoly] = {}
    total = ZERO
    for state in iter_states(rm):
        w = ONE
        for k, corner in enumerate(state.corners):
            key = (k, corner)
            if key not in cache:
                c = rm.crossings[k]
                cache[key] = table.MA(c.kind, corner, c.color_env)
            w = w * cache[key]
        total = total + w
    return total


def planar_P_bracket(
    d: MOYDiagram,
    basepoint: Optional[Basepoint] = None,
    table: Optional[CornerWeightTable] = None,
) -> LaurentPoly:
    """Sum over states of P(s) for a planar connected diagram with at least one vertex."""
    table = table or default_table()
    if not d.is_planar:
        raise NotPlanar(f"{d.name or 'diagram'} has {len(d.crossings)} double points")
    if not d.vertices:
        raise NoVertices("P weights need at least one vertex")
    if not d.is_connected:
        return ZERO
    rm = _marked_model(d, basepoint)
    total = ZERO
    for state in iter_states(rm):
        total = total + state_factors(state, rm, table, with_P=True).P
    return total
