"""Formal linear combinations of diagrams."""

from collections import deque
from typing import Iterable, Iterator, Optional, Union

from ..algebra import LaurentPoly, RationalFunc
from ..diagram.graph import Basepoint, Crossing, Edge, HalfEdge, MOYDiagram, Side, Vertex

Coefficient = Union[int, LaurentPoly, RationalFunc]


def canonical_form(d: MOYDiagram) -> MOYDiagram:
    """Relabel ids in breadth-first order from the outer face.

    Edges become e0, e1, ..., vertices v0, ... and crossings x0, ...; each
    rotation starts at the half-edge through which its node was reached.
    Two diagrams that differ only by ids and rotation starting points get
    the same form when their outer designations agree.
    """
    edge_label: dict[str, str] = {}
    node_label: dict[str, str] = {}
    node_start: dict[str, int] = {}
    counters = {"v": 0, "x": 0}
    queue: deque[str] = deque()

    def visit_edge(edge_id: str) -> None:
        if edge_id not in edge_label:
            edge_label[edge_id] = f"e{len(edge_label)}"
            queue.append(edge_id)

    def visit_node(node_id: str, index: int) -> None:
        if node_id in node_label:
            return
        node = d.node_map[node_id]
        prefix = "x" if isinstance(node, Crossing) else "v"
        node_label[node_id] = f"{prefix}{counters[prefix]}"
        counters[prefix] += 1
        node_start[node_id] = index
        deg = len(node.rotation)
        for k in range(deg):
            visit_edge(node.rotation[(index + k) % deg].edge)

    roots = [s.edge for s in d.outer if s.edge in d.edge_map] + sorted(d.edge_map)
    for root in roots:
        visit_edge(root)
        while queue:
            for port in d.endpoints[queue.popleft()]:
                if port is not None:
                    visit_node(port.node, port.index)

    def relabel(ref: HalfEdge) -> HalfEdge:
        return HalfEdge(edge_label[ref.edge], ref.end)

    def rotated(node) -> tuple[HalfEdge, ...]:
        k = node_start[node.id]
        return tuple(relabel(r) for r in node.rotation[k:] + node.rotation[:k])

    def order(label: str) -> int:
        return int(label[1:])

    edges = sorted(
        (Edge(edge_label[e.id], e.color, e.twists) for e in d.edges),
        key=lambda e: order(e.id),
    )
    vertices = sorted((Vertex(node_label[v.id], rotated(v)) for v in d.vertices), key=lambda v: order(v.id))
    crossings = sorted(
        (Crossing(node_label[x.id], rotated(x), relabel(x.over)) for x in d.crossings),
        key=lambda x: order(x.id),
    )
    outer = tuple(Side(edge_label[s.edge], s.side) for s in d.outer if s.edge in edge_label)
    basepoint: Optional[Basepoint] = None
    if d.basepoint is not None and d.basepoint.edge in edge_label:
        basepoint = Basepoint(edge_label[d.basepoint.edge], d.basepoint.position)
    return MOYDiagram(tuple(edges), tuple(vertices), tuple(crossings), outer, basepoint, d.name)


class FormalSum:
    """Finite sum of rational-function coefficients times diagrams.

    Terms are keyed by canonical form: diagrams equal up to ids merge, and a
    term whose coefficient cancels to zero disappears.
    """

    def __init__(self, terms: Iterable[tuple[Coefficient, MOYDiagram]] = ()):
        self._terms: dict[MOYDiagram, RationalFunc] = {}
        for coeff, d in terms:
            self.add(coeff, d)

    @classmethod
    def single(cls, d: MOYDiagram, coeff: Coefficient = 1) -> "FormalSum":
        return cls([(coeff, d)])

    def add(self, coeff: Coefficient, d: MOYDiagram) -> None:
        coeff = RationalFunc.of(coeff)
        if coeff.is_zero:
            return
        key = canonical_form(d)
        total = self._terms.get(key)
        total = coeff if total is None else total + coeff
        if total.is_zero:
            self._terms.pop(key, None)
        else:
            self._terms[key] = total

    def pop(self) -> tuple[RationalFunc, MOYDiagram]:
        """Remove and return the oldest term."""
        d = next(iter(self._terms))
        return self._terms.pop(d), d

    @property
    def terms(self) -> list[tuple[RationalFunc, MOYDiagram]]:
        return [(coeff, d) for d, coeff in self._terms.items()]

    def coefficient(self, d: MOYDiagram) -> RationalFunc:
        return self._terms.get(canonical_form(d), RationalFunc(0))

    def scaled(self, factor: Coefficient) -> "FormalSum":
        return FormalSum((coeff * factor, d) for d, coeff in self._terms.items())

    def __iter__(self) -> Iterator[tuple[RationalFunc, MOYDiagram]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return FormalSum([*self.terms, *other.terms])

    def __neg__(self) -> "FormalSum":
        return self.scaled(-1)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor: Coefficient) -> "FormalSum":
        if not isinstance(factor, (int, LaurentPoly, RationalFunc)):
            return NotImplemented
        return self.scaled(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff.to_t_string()})*[{len(d.edges)} edges]" for d, coeff in self._terms.items())
        return f"FormalSum({body or '0'})"
