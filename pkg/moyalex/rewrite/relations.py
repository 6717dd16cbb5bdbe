"""Rewrite rules: each turns one diagram into a formal sum of simpler ones."""

import logging

from ..algebra import LaurentPoly, RationalFunc, quantum_int
from ..diagram.graph import MOYDiagram
from ..errors import NoReducibleEdge
from . import surgery
from .formal import FormalSum

logger = logging.getLogger(__name__)


def resolve_crossing(d: MOYDiagram, crossing_id: str) -> FormalSum:
    """Crossing of colors i (A strand) and j (B strand) as ladder plus merge-split.

    c1 = -t^(+-(i+j)/2) / ([i][j]) on the ladder with rung |j - i|, and on
    the merge-split c2 = t^(+-j/2) / ([i][i+j]) when i <= j, else
    t^(+-i/2) / ([j][i+j]). Exponent signs follow the crossing sign.
    """
    p = surgery.crossing_ports(d, crossing_id)
    i, j = p.i, p.j
    s = p.crossing.sign.value_int
    c1 = RationalFunc(LaurentPoly.monomial(2 * s * (i + j), -1), quantum_int(i) * quantum_int(j))
    if i <= j:
        c2 = RationalFunc(LaurentPoly.monomial(2 * s * j), quantum_int(i) * quantum_int(i + j))
    else:
        c2 = RationalFunc(LaurentPoly.monomial(2 * s * i), quantum_int(j) * quantum_int(i + j))
    logger.debug("resolve %s crossing %s (i=%d, j=%d)", p.crossing.sign.value, crossing_id, i, j)
    return FormalSum([(c1, surgery.ladder(d, crossing_id)), (c2, surgery.merge_split(d, crossing_id))])


def remove_half_twist(d: MOYDiagram, edge_id: str, index: int = 0) -> FormalSum:
    """Delete one half twist at the price of t^(+-i/4)."""
    untwisted, sign = surgery.delete_twist(d, edge_id, index)
    return FormalSum.single(untwisted, LaurentPoly.monomial(sign * d.color(edge_id)))


def remove_zero_edge(d: MOYDiagram, edge_id: str) -> FormalSum:
    """A color-0 rung between strands of colors i and j is worth [i][j] times no rung."""
    ends = surgery.zero_edge_ends(d, edge_id)
    factor = quantum_int(d.color(ends.tail_in)) * quantum_int(d.color(ends.head_in))
    return FormalSum.single(surgery.delete_zero_edge(d, edge_id), factor)


def reducible_edges(d: MOYDiagram) -> list[str]:
    """Maximal-color edges running from a merge into a split, by id."""
    m = d.max_color
    found = []
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.color != m:
            continue
        try:
            surgery.h_edge(d, e.id)
        except ValueError:
            continue
        found.append(e.id)
    return found


def reduce_color_step(d: MOYDiagram) -> FormalSum:
    """Remove one edge of maximal color m > 2 from a planar diagram.

    The merge and split around the edge are first unzipped to inputs and
    outputs of colors (1, m-1), with scalar 1/([j][m-1]) per unzipped side,
    then the H is traded for a square (coefficient [m]/([1][2][m-1])) and
    for the two bare strands (coefficient -[m-2][m]).
    """
    if d.crossings:
        raise ValueError("color reduction needs a diagram without crossings")
    m = d.max_color
    if m <= 2:
        raise NoReducibleEdge(f"maximal color is {m}")
    candidates = reducible_edges(d)
    if not candidates:
        raise NoReducibleEdge(f"no edge of color {m} runs from a merge into a split")
    edge_id = candidates[0]
    h = surgery.h_edge(d, edge_id)
    scalar = RationalFunc(1)
    j = d.color(h.left)
    if j >= 2:
        d = surgery.unzip_merge(d, edge_id)
        scalar = scalar / (quantum_int(j) * quantum_int(m - 1))
    l = d.color(h.left_out)
    if l >= 2:
        d = surgery.unzip_split(d, edge_id)
        scalar = scalar / (quantum_int(l) * quantum_int(m - 1))
    logger.debug("reduce color-%d edge %s (j=%d, l=%d)", m, edge_id, j, l)
    square = RationalFunc(quantum_int(m), quantum_int(1) * quantum_int(2) * quantum_int(m - 1))
    bare = -(quantum_int(m - 2) * quantum_int(m))
    return FormalSum([(scalar * square, surgery.square(d, edge_id)), (scalar * bare, surgery.cut(d, edge_id))])
