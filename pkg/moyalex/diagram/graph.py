"""Combinatorial model of colored MOY graph diagrams.

A diagram is a rotation system: every node lists its incident half-edges in
counterclockwise order. A half-edge is written ``"<edge>.in"`` for the head
end of an edge and ``"<edge>.out"`` for its tail end. An edge referenced by
no node at all is a free loop.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Literal, NamedTuple, Optional, Union

import networkx as nx

IN = "in"
OUT = "out"


class Sign(Enum):
    """Sign of a crossing or a half twist."""

    POSITIVE = "+"
    NEGATIVE = "-"

    @property
    def value_int(self) -> int:
        return 1 if self is Sign.POSITIVE else -1

    def flipped(self) -> "Sign":
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE


class HalfEdge(NamedTuple):
    """One end of an edge: ``end`` is "in" at the head, "out" at the tail."""

    edge: str
    end: str

    @classmethod
    def parse(cls, ref: str) -> "HalfEdge":
        edge, dot, end = ref.rpartition(".")
        if not dot or not edge or end not in (IN, OUT):
            raise ValueError(f"bad half-edge reference {ref!r} (expected '<edge>.in' or '<edge>.out')")
        return cls(edge, end)

    @property
    def is_in(self) -> bool:
        return self.end == IN

    def opposite(self) -> "HalfEdge":
        return HalfEdge(self.edge, OUT if self.end == IN else IN)

    def renamed(self, edge: str) -> "HalfEdge":
        return HalfEdge(edge, self.end)

    def __str__(self) -> str:
        return f"{self.edge}.{self.end}"


class Port(NamedTuple):
    node: str
    index: int


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    twists: tuple[Sign, ...] = ()

    @property
    def twist_balance(self) -> int:
        """Positive minus negative half twists."""
        return sum(t.value_int for t in self.twists)


@dataclass(frozen=True)
class Vertex:
    id: str
    rotation: tuple[HalfEdge, ...]


@dataclass(frozen=True)
class Crossing:
    """A double point; ``over`` is the incoming half-edge of the over strand."""

    id: str
    rotation: tuple[HalfEdge, ...]
    over: HalfEdge

    @cached_property
    def offset(self) -> Optional[int]:
        """Rotation offset k with rotation[k:] + rotation[:k] = [A_in, B_in, A_out, B_out]."""
        if len(self.rotation) != 4:
            return None
        for k in range(4):
            ends = [self.rotation[(k + j) % 4].end for j in range(4)]
            if ends == [IN, IN, OUT, OUT]:
                return k
        return None

    def normalized(self) -> tuple[HalfEdge, HalfEdge, HalfEdge, HalfEdge]:
        """Rotation as (A_in, B_in, A_out, B_out); A runs SW to NE, B runs SE to NW."""
        k = self.offset
        if k is None:
            raise ValueError(f"crossing {self.id} is not of the form in, in, out, out")
        r = self.rotation
        return r[k], r[(k + 1) % 4], r[(k + 2) % 4], r[(k + 3) % 4]

    @property
    def sign(self) -> Sign:
        a_in = self.normalized()[0]
        return Sign.POSITIVE if self.over == a_in else Sign.NEGATIVE


Node = Union[Vertex, Crossing]


@dataclass(frozen=True)
class Side:
    """The face on one side of an edge, relative to the edge direction."""

    edge: str
    side: Literal["left", "right"] = "left"

    def flipped(self) -> "Side":
        return Side(self.edge, "right" if self.side == "left" else "left")


@dataclass(frozen=True)
class Basepoint:
    edge: str
    position: int = 0


@dataclass(frozen=True)
class MOYDiagram:
    """Immutable colored MOY diagram.

    ``outer`` holds one designation per connected component: the face of
    that component which is unbounded.
    """

    edges: tuple[Edge, ...]
    vertices: tuple[Vertex, ...] = ()
    crossings: tuple[Crossing, ...] = ()
    outer: tuple[Side, ...] = ()
    basepoint: Optional[Basepoint] = None
    name: Optional[str] = field(default=None, compare=False)

    # Lookups

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def node_map(self) -> dict[str, Node]:
        nodes: dict[str, Node] = {v.id: v for v in self.vertices}
        nodes.update({x.id: x for x in self.crossings})
        return nodes

    @cached_property
    def endpoints(self) -> dict[str, tuple[Optional[Port], Optional[Port]]]:
        """Edge id -> (tail port, head port); None for an unattached end."""
        ends: dict[str, list[Optional[Port]]] = {e.id: [None, None] for e in self.edges}
        for node in (*self.vertices, *self.crossings):
            for index, ref in enumerate(node.rotation):
                if ref.edge in ends:
                    ends[ref.edge][1 if ref.is_in else 0] = Port(node.id, index)
        return {eid: (tail, head) for eid, (tail, head) in ends.items()}

    def edge(self, edge_id: str) -> Edge:
        return self.edge_map[edge_id]

    def color(self, edge_id: str) -> int:
        return self.edge_map[edge_id].color

    def tail(self, edge_id: str) -> Optional[Port]:
        return self.endpoints[edge_id][0]

    def head(self, edge_id: str) -> Optional[Port]:
        return self.endpoints[edge_id][1]

    def is_free_loop(self, edge_id: str) -> bool:
        tail, head = self.endpoints[edge_id]
        return tail is None and head is None

    def incoming(self, vertex: Vertex) -> list[HalfEdge]:
        return [ref for ref in vertex.rotation if ref.is_in]

    def outgoing(self, vertex: Vertex) -> list[HalfEdge]:
        return [ref for ref in vertex.rotation if not ref.is_in]

    # Shape predicates

    @property
    def is_planar(self) -> bool:
        """No double points."""
        return not self.crossings

    @property
    def is_link(self) -> bool:
        return not self.vertices

    @property
    def is_trivalent(self) -> bool:
        return all(len(v.rotation) == 3 for v in self.vertices)

    @property
    def has_positive_colors(self) -> bool:
        return all(e.color > 0 for e in self.edges)

    @property
    def has_twists(self) -> bool:
        return any(e.twists for e in self.edges)

    @property
    def max_color(self) -> int:
        return max((e.color for e in self.edges), default=0)

    @cached_property
    def incidence_graph(self) -> nx.Graph:
        """Bipartite graph of nodes and edges, used for connectivity."""
        g = nx.Graph()
        for e in self.edges:
            g.add_node(("edge", e.id))
        for node in (*self.vertices, *self.crossings):
            g.add_node(("node", node.id))
            for ref in node.rotation:
                g.add_edge(("node", node.id), ("edge", ref.edge))
        return g

    @cached_property
    def components(self) -> list[frozenset[str]]:
        """Edge ids per connected component, ordered by smallest edge id."""
        comps = []
        for comp in nx.connected_components(self.incidence_graph):
            edges = frozenset(key for kind, key in comp if kind == "edge")
            if edges:
                comps.append(edges)
        return sorted(comps, key=min)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def component_of(self, edge_id: str) -> int:
        for index, comp in enumerate(self.components):
            if edge_id in comp:
                return index
        raise KeyError(edge_id)

    # Derived diagrams

    def with_basepoint(self, basepoint: Optional[Basepoint]) -> "MOYDiagram":
        return replace(self, basepoint=basepoint)

    def with_colors(self, colors: dict[str, int]) -> "MOYDiagram":
        edges = tuple(replace(e, color=colors.get(e.id, e.color)) for e in self.edges)
        return replace(self, edges=edges)

    def with_twist(self, edge_id: str, sign: Sign, index: Optional[int] = None) -> "MOYDiagram":
        """Insert a half twist on an edge (appended when index is None)."""
        edges = []
        for e in self.edges:
            if e.id == edge_id:
                twists = list(e.twists)
                twists.insert(len(twists) if index is None else index, sign)
                e = replace(e, twists=tuple(twists))
            edges.append(e)
        return replace(self, edges=tuple(edges))

    def switch_crossing(self, crossing_id: str) -> "MOYDiagram":
        """Swap over and under strands at one crossing."""
        crossings = tuple(_switched(x) if x.id == crossing_id else x for x in self.crossings)
        return replace(self, crossings=crossings)


def _switched(x: Crossing) -> Crossing:
    a_in, b_in, _, _ = x.normalized()
    return replace(x, over=b_in if x.over == a_in else a_in)


def mirror(d: MOYDiagram) -> MOYDiagram:
    """Flip every crossing and every half twist."""
    edges = tuple(replace(e, twists=tuple(t.flipped() for t in e.twists)) for e in d.edges)
    crossings = tuple(_switched(x) for x in d.crossings)
    return replace(d, edges=edges, crossings=crossings)


def reverse(d: MOYDiagram) -> MOYDiagram:
    """Reverse every edge; colors, twists and the embedding are preserved.

    The over strand of a crossing keeps its arc; its incoming half-edge is
    the old outgoing one.
    """

    def flip(ref: HalfEdge) -> HalfEdge:
        return ref.opposite()

    vertices = tuple(replace(v, rotation=tuple(flip(r) for r in v.rotation)) for v in d.vertices)
    crossings = []
    for x in d.crossings:
        a_in, b_in, a_out, b_out = x.normalized()
        over_out = a_out if x.over == a_in else b_out
        crossings.append(replace(x, rotation=tuple(flip(r) for r in x.rotation), over=flip(over_out)))
    outer = tuple(s.flipped() for s in d.outer)
    return replace(d, vertices=vertices, crossings=tuple(crossings), outer=outer)


def iter_nodes(d: MOYDiagram) -> Iterable[Node]:
    yield from d.vertices
    yield from d.crossings
