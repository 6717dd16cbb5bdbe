"""Framing factor and colored curliness.

Curliness cables every edge of color c into c parallel lanes, smooths each
node in the oriented way and counts the resulting simple closed curves by
rotation sense. A curve is counterclockwise when the face on its right
lies closer to the unbounded face than the face on its left.
"""

import logging
from typing import NamedTuple, Optional

import networkx as nx
from networkx.utils import UnionFind

from ..algebra import LaurentPoly
from ..diagram.graph import HalfEdge, MOYDiagram, iter_nodes
from ..diagram.regions import FaceStructure

logger = logging.getLogger(__name__)

Lane = tuple[str, int]


class CurveCount(NamedTuple):
    cw: int
    ccw: int

    @property
    def exponent(self) -> int:
        """Exponent of C(D, c) in q = t^(1/4)."""
        return 2 * (self.cw - self.ccw)


def framing_exponent(d: MOYDiagram) -> int:
    """Exponent in q of F(D): sum over edges of color times signed half twists."""
    return sum(e.color * e.twist_balance for e in d.edges)


def framing_factor(d: MOYDiagram) -> LaurentPoly:
    return LaurentPoly.monomial(framing_exponent(d))


def _slot(edge: str, k: int) -> tuple[str, str, int]:
    return ("slot", edge, k)


def _face(index: int) -> tuple[str, int]:
    return ("face", index)


def _ins_then_outs(rotation: tuple[HalfEdge, ...]) -> tuple[list[HalfEdge], list[HalfEdge]]:
    deg = len(rotation)
    start = next(
        (k for k in range(deg) if rotation[k].is_in and not rotation[k - 1].is_in),
        None,
    )
    if start is None:
        raise ValueError("node has no entering arc")
    seq = [rotation[(start + k) % deg] for k in range(deg)]
    ins = [ref for ref in seq if ref.is_in]
    outs = [ref for ref in seq if not ref.is_in][::-1]
    return ins, outs


def count_curves(d: MOYDiagram, faces: Optional[FaceStructure] = None) -> CurveCount:
    faces = faces if faces is not None else FaceStructure(d)
    uf = UnionFind()
    for e in d.edges:
        uf.union(_slot(e.id, 0), _face(faces.left(e.id)))
        uf.union(_slot(e.id, e.color), _face(faces.right(e.id)))

    successor: dict[Lane, Lane] = {}

    def gaps(refs: list[HalfEdge]) -> tuple[list, list[Lane]]:
        g = [_slot(refs[0].edge, 0)]
        lanes: list[Lane] = []
        for ref in refs:
            uf.union(g[-1], _slot(ref.edge, 0))
            for s in range(1, d.color(ref.edge) + 1):
                lanes.append((ref.edge, s - 1))
                g.append(_slot(ref.edge, s))
        return g, lanes

    for node in iter_nodes(d):
        ins, outs = _ins_then_outs(node.rotation)
        if not outs:
            continue
        in_gaps, in_lanes = gaps(ins)
        out_gaps, out_lanes = gaps(outs)
        if len(in_gaps) != len(out_gaps):
            raise ValueError(f"node {node.id} is not balanced")
        for a, b in zip(in_gaps, out_gaps):
            uf.union(a, b)
        successor.update(zip(in_lanes, out_lanes))
    for e in d.edges:
        if d.is_free_loop(e.id):
            for k in range(e.color):
                successor[(e.id, k)] = (e.id, k)

    seen: set[Lane] = set()
    sides = []
    for lane in sorted(successor):
        if lane in seen:
            continue
        current = lane
        while current not in seen:
            seen.add(current)
            current = successor[current]
        edge, k = lane
        sides.append((uf[_slot(edge, k)], uf[_slot(edge, k + 1)]))

    tree = nx.Graph()
    tree.add_edges_from(sides)
    roots = {uf[_face(faces.of_side(s))] for s in d.outer if s.edge in d.edge_map}
    roots &= set(tree.nodes)
    depth = nx.multi_source_dijkstra_path_length(tree, roots) if roots else {}
    cw = ccw = 0
    for left, right in sides:
        if depth.get(right, 0) < depth.get(left, 0):
            ccw += 1
        else:
            cw += 1
    logger.debug("curliness: %d clockwise, %d counterclockwise curves", cw, ccw)
    return CurveCount(cw, ccw)


def colored_curliness(d: MOYDiagram, faces: Optional[FaceStructure] = None) -> LaurentPoly:
    """C(D, c) = t^((#cw - #ccw) / 2)."""
    return LaurentPoly.monomial(count_curves(d, faces).exponent)
