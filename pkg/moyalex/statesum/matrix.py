"""Alexander matrix and its fraction-free determinant."""

import logging
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from ..algebra import ONE, ZERO, LaurentPoly, exact_div
from ..diagram.graph import Basepoint, MOYDiagram
from ..diagram.regions import RegionModel, region_model
from ..errors import BasepointMissing, BasepointOnBridge
from .states import KauffmanState
from .weights import CornerWeightTable, default_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlexanderMatrix:
    """Rows follow Cr(D), columns Re(D); entry (p, q) sums m*A over corners of C_p in R_q."""

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def row_sum(self, p: int) -> LaurentPoly:
        total = ZERO
        for value in self.entries[p]:
            total = total + value
        return total

    def minor(self, u: int, v: int) -> list[list[LaurentPoly]]:
        """The square matrix with columns u and v removed."""
        keep = [q for q in range(len(self.columns)) if q not in (u, v)]
        return [[row[q] for q in keep] for row in self.entries]


def alexander_matrix(rm: RegionModel, table: Optional[CornerWeightTable] = None) -> AlexanderMatrix:
    table = table or default_table()
    n_cols = rm.n_regions
    entries = []
    for c in rm.crossings:
        row = [ZERO] * n_cols
        env = c.color_env
        for name, region in c.corners:
            row[region] = row[region] + table.mA(c.kind, name, env)
        entries.append(tuple(row))
    logger.debug("Alexander matrix %dx%d", len(entries), n_cols)
    return AlexanderMatrix(
        rows=tuple(c.id for c in rm.crossings),
        columns=tuple(r.id for r in rm.regions),
        entries=tuple(entries),
    )


def bareiss_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by Bareiss elimination; every division is exact in the Laurent ring."""
    n = len(matrix)
    if n == 0:
        return ONE
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    a = [list(row) for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            pivot = next((r for r in range(k + 1, n) if not a[r][k].is_zero), None)
            if pivot is None:
                return ZERO
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = ZERO
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def det_bracket(m: AlexanderMatrix, u: int, v: int) -> LaurentPoly:
    """det A(D) with columns u and v removed; the raw determinant, sign included."""
    n_rows, n_cols = m.shape
    if n_cols - 2 != n_rows:
        return ZERO
    return bareiss_det(m.minor(u, v))


def _permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def state_sign(state: KauffmanState, rm: RegionModel, table: CornerWeightTable) -> int:
    """epsilon with sign(s) * m(s) = epsilon * M(s) for one state."""
    u, v = rm.marked
    keep = [q for q in range(rm.n_regions) if q not in (u, v)]
    column = {region: k for k, region in enumerate(keep)}
    perm = [column[region] for region in state.regions]
    m = M = 1
    for c, corner in zip(rm.crossings, state.corners):
        weight = table.corner(c.kind, corner)
        m *= weight.m
        M *= weight.M
    return _permutation_sign(perm) * m * M


def any_state(rm: RegionModel) -> Optional[KauffmanState]:
    """One state from a maximum matching of crossings to free regions, or None."""
    graph = nx.Graph()
    rows = [("c", k) for k in range(rm.n_crossings)]
    graph.add_nodes_from(rows)
    free = set(rm.free_regions())
    graph.add_nodes_from(("r", r) for r in free)
    for k, c in enumerate(rm.crossings):
        for _, region in c.corners:
            if region in free:
                graph.add_edge(("c", k), ("r", region))
    matching = nx.bipartite.maximum_matching(graph, top_nodes=rows)
    if len(free) != rm.n_crossings or any(row not in matching for row in rows):
        return None
    regions = tuple(matching[("c", k)][1] for k in range(rm.n_crossings))
    corners = tuple(
        next(name for name, region in c.corners if region == regions[k]) for k, c in enumerate(rm.crossings)
    )
    return KauffmanState(corners, regions)


def determinant_bracket(
    d: MOYDiagram,
    basepoint: Optional[Basepoint] = None,
    table: Optional[CornerWeightTable] = None,
) -> tuple[LaurentPoly, int]:
    """(raw determinant, epsilon) with determinant = epsilon * <D|delta>."""
    table = table or default_table()
    if basepoint is not None:
        d = d.with_basepoint(basepoint)
    if d.basepoint is None:
        raise BasepointMissing("no basepoint set")
    if not d.is_connected:
        return ZERO, 1
    try:
        rm = region_model(d)
    except BasepointOnBridge:
        return ZERO, 1
    u, v = rm.marked
    det = det_bracket(alexander_matrix(rm, table), u, v)
    state = any_state(rm)
    epsilon = state_sign(state, rm, table) if state is not None else 1
    return det, epsilon


def bracket_by_determinant(
    d: MOYDiagram,
    basepoint: Optional[Basepoint] = None,
    table: Optional[CornerWeightTable] = None,
) -> LaurentPoly:
    """<D|delta> computed through the Alexander matrix."""
    det, epsilon = determinant_bracket(d, basepoint, table)
    return det * epsilon
