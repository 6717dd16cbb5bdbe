"""Mutable working copy of a diagram for local surgery."""

from typing import Optional, Sequence

from .graph import Basepoint, Crossing, Edge, HalfEdge, MOYDiagram, Side, Sign, Vertex


class DiagramEditor:
    """Edit nodes and edges in place, then freeze back into a MOYDiagram.

    Joined edges are tracked through an alias map, so half-edge references
    taken before a join stay usable afterwards.
    """

    def __init__(self, d: Optional[MOYDiagram] = None):
        self.colors: dict[str, int] = {}
        self.twists: dict[str, list[Sign]] = {}
        self.rotations: dict[str, list[HalfEdge]] = {}
        self.overs: dict[str, HalfEdge] = {}
        self.alias: dict[str, str] = {}
        self.outer_candidates: list[list[Side]] = []
        self.basepoint: Optional[Basepoint] = None
        self._used: set[str] = set()
        self._serial: dict[str, int] = {}
        if d is not None:
            self._load(d)

    def _load(self, d: MOYDiagram) -> None:
        from .regions import FaceStructure

        for e in d.edges:
            self.colors[e.id] = e.color
            self.twists[e.id] = list(e.twists)
        for v in d.vertices:
            self.rotations[v.id] = list(v.rotation)
        for x in d.crossings:
            self.rotations[x.id] = list(x.rotation)
            self.overs[x.id] = x.over
        self._used.update(self.colors, self.rotations)
        faces = FaceStructure(d)
        for side in d.outer:
            if side.edge in d.edge_map:
                self.outer_candidates.append(faces.sides_of(faces.of_side(side)))
        self.basepoint = d.basepoint

    # Ids

    def fresh_id(self, prefix: str) -> str:
        n = self._serial.get(prefix, 0)
        while f"{prefix}{n}" in self._used:
            n += 1
        self._serial[prefix] = n + 1
        ident = f"{prefix}{n}"
        self._used.add(ident)
        return ident

    def resolve(self, edge_id: str) -> str:
        while edge_id in self.alias:
            edge_id = self.alias[edge_id]
        return edge_id

    def ref(self, half: HalfEdge) -> HalfEdge:
        return HalfEdge(self.resolve(half.edge), half.end)

    # Edges

    def new_edge(self, color: int, prefix: str = "e") -> str:
        edge_id = self.fresh_id(prefix)
        self.colors[edge_id] = color
        self.twists[edge_id] = []
        return edge_id

    def color(self, edge_id: str) -> int:
        return self.colors[self.resolve(edge_id)]

    def remove_edge(self, edge_id: str) -> None:
        edge_id = self.resolve(edge_id)
        del self.colors[edge_id]
        del self.twists[edge_id]

    def add_twist(self, edge_id: str, sign: Sign) -> None:
        self.twists[self.resolve(edge_id)].append(sign)

    def join(self, x: str, y: str) -> str:
        """Glue the open head of x to the open tail of y; y is absorbed into x."""
        x, y = self.resolve(x), self.resolve(y)
        if x == y:
            return x
        if self.colors[x] != self.colors[y]:
            raise ValueError(f"cannot join {x} (color {self.colors[x]}) to {y} (color {self.colors[y]})")
        self.twists[x].extend(self.twists.pop(y))
        del self.colors[y]
        self.alias[y] = x
        if self.basepoint is not None and self.basepoint.edge == y:
            self.basepoint = Basepoint(x, self.basepoint.position)
        return x

    # Nodes

    def add_vertex(self, rotation: Sequence[HalfEdge], prefix: str = "v") -> str:
        node_id = self.fresh_id(prefix)
        self.rotations[node_id] = [self.ref(r) for r in rotation]
        return node_id

    def add_crossing(self, rotation: Sequence[HalfEdge], over: HalfEdge, prefix: str = "x") -> str:
        node_id = self.fresh_id(prefix)
        self.rotations[node_id] = [self.ref(r) for r in rotation]
        self.overs[node_id] = self.ref(over)
        return node_id

    def remove_node(self, node_id: str) -> list[HalfEdge]:
        self.overs.pop(node_id, None)
        return [self.ref(r) for r in self.rotations.pop(node_id)]

    # Freeze

    def finish(
        self,
        name: Optional[str] = None,
        outer: Optional[Sequence[Side]] = None,
        keep_basepoint: bool = True,
    ) -> MOYDiagram:
        edges = tuple(Edge(eid, color, tuple(self.twists[eid])) for eid, color in self.colors.items())
        vertices = []
        crossings = []
        for node_id, rotation in self.rotations.items():
            refs = tuple(self.ref(r) for r in rotation)
            if node_id in self.overs:
                crossings.append(Crossing(node_id, refs, self.ref(self.overs[node_id])))
            else:
                vertices.append(Vertex(node_id, refs))
        if outer is None:
            outer = []
            for candidates in self.outer_candidates:
                for side in candidates:
                    edge_id = self.resolve(side.edge)
                    if edge_id in self.colors:
                        outer.append(Side(edge_id, side.side))
                        break
        basepoint = None
        if keep_basepoint and self.basepoint is not None:
            edge_id = self.resolve(self.basepoint.edge)
            if edge_id in self.colors:
                basepoint = Basepoint(edge_id, self.basepoint.position)
        d = MOYDiagram(edges, tuple(vertices), tuple(crossings), tuple(outer), basepoint, name)
        return _one_outer_per_component(d)


def _one_outer_per_component(d: MOYDiagram) -> MOYDiagram:
    seen = set()
    kept = []
    for side in d.outer:
        comp = d.component_of(side.edge)
        if comp not in seen:
            seen.add(comp)
            kept.append(side)
    if len(kept) == len(d.outer):
        return d
    return MOYDiagram(d.edges, d.vertices, d.crossings, tuple(kept), d.basepoint, d.name)
