"""Faces, the state-sum region model, region indices and the basepoint weight."""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Literal, Optional

import networkx as nx

from ..algebra import LaurentPoly
from ..errors import BasepointMissing, BasepointOnBridge, InconsistentIndices, NoLegalBasepoint, ZeroColorBasepoint
from .graph import Basepoint, MOYDiagram, Side

logger = logging.getLogger(__name__)

# A dart traverses an edge: +1 from tail to head, -1 from head to tail.
Dart = tuple[str, int]


class FaceStructure:
    """Faces of the rotation system by left-face traversal.

    Each face is the cyclic list of darts having it on their left; every
    (edge, side) pair belongs to exactly one face.
    """

    def __init__(self, d: MOYDiagram):
        self.faces: list[list[Dart]] = []
        self._face_of: dict[Dart, int] = {}
        for e in sorted(d.edges, key=lambda e: e.id):
            for direction in (1, -1):
                dart = (e.id, direction)
                if dart in self._face_of:
                    continue
                self._trace(d, dart)

    def _trace(self, d: MOYDiagram, start: Dart) -> None:
        index = len(self.faces)
        darts: list[Dart] = []
        dart = start
        while dart not in self._face_of:
            self._face_of[dart] = index
            darts.append(dart)
            edge_id, direction = dart
            if d.is_free_loop(edge_id):
                break
            tail, head = d.endpoints[edge_id]
            node_id, port = head if direction == 1 else tail
            rotation = d.node_map[node_id].rotation
            nxt = rotation[(port - 1) % len(rotation)]
            dart = (nxt.edge, -1 if nxt.is_in else 1)
        self.faces.append(darts)

    def face_of(self, edge_id: str, direction: int) -> int:
        return self._face_of[(edge_id, direction)]

    def left(self, edge_id: str) -> int:
        return self._face_of[(edge_id, 1)]

    def right(self, edge_id: str) -> int:
        return self._face_of[(edge_id, -1)]

    def of_side(self, side: Side) -> int:
        return self.left(side.edge) if side.side == "left" else self.right(side.edge)

    def arriving(self, ref) -> int:
        """Face on the left of the dart arriving at a node along a half-edge."""
        return self._face_of[(ref.edge, 1 if ref.is_in else -1)]

    def sides_of(self, face: int) -> list[Side]:
        return [Side(eid, "left" if direction == 1 else "right") for eid, direction in self.faces[face]]

    def __len__(self) -> int:
        return len(self.faces)


class CrossingKind(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    CIRCLE = "circle"


@dataclass(frozen=True)
class StateCrossing:
    """An element of Cr(D): a double point or a circle-type crossing.

    ``corners`` maps corner names (N/S/W/E, or N/W/E for circle type) to
    region positions in RegionModel.regions. ``colors`` binds a (strand
    running SW to NE) and b (SE to NW), or i for the circle type.
    """

    id: str
    kind: CrossingKind
    corners: tuple[tuple[str, int], ...]
    colors: tuple[tuple[str, int], ...]
    edge: Optional[str] = None

    def corner_region(self, name: str) -> int:
        return dict(self.corners)[name]

    @property
    def color_env(self) -> dict[str, int]:
        return dict(self.colors)


@dataclass(frozen=True)
class Region:
    id: str
    kind: Literal["face", "circle"]
    vertex: Optional[str] = None


@dataclass(frozen=True)
class RegionModel:
    """Cr(D), Re(D), corner incidence, marked regions and indices."""

    crossings: tuple[StateCrossing, ...]
    regions: tuple[Region, ...]
    faces: FaceStructure
    outer: tuple[int, ...]
    connected: bool
    marked: Optional[tuple[int, int]] = None
    basepoint_color: Optional[int] = None
    basepoint_edge: Optional[str] = None
    indices: Optional[dict[int, int]] = None

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    def free_regions(self) -> list[int]:
        marked = set(self.marked or ())
        return [r for r in range(len(self.regions)) if r not in marked]

    def index(self, region: int) -> int:
        if self.indices is None or region not in self.indices:
            raise InconsistentIndices(f"region {self.regions[region].id} has no index")
        return self.indices[region]


def build_regions(d: MOYDiagram) -> RegionModel:
    """Faces, one circle crossing per edge head at a vertex, one circle region per vertex."""
    faces = FaceStructure(d)
    regions = [Region(f"f{k}", "face") for k in range(len(faces))]
    circle_region = {}
    for v in sorted(d.vertices, key=lambda v: v.id):
        circle_region[v.id] = len(regions)
        regions.append(Region(f"o:{v.id}", "circle", v.id))

    crossings = []
    for x in sorted(d.crossings, key=lambda x: x.id):
        a_in, b_in, a_out, b_out = x.normalized()
        kind = CrossingKind.POSITIVE if x.over == a_in else CrossingKind.NEGATIVE
        corners = (
            ("W", faces.arriving(a_in)),
            ("S", faces.arriving(b_in)),
            ("N", faces.arriving(b_out)),
            ("E", faces.arriving(a_out)),
        )
        colors = (("a", d.color(a_in.edge)), ("b", d.color(b_in.edge)))
        crossings.append(StateCrossing(x.id, kind, corners, colors))
    for e in sorted(d.edges, key=lambda e: e.id):
        head = d.head(e.id)
        if head is None or head.node not in circle_region:
            continue
        corners = (
            ("N", circle_region[head.node]),
            ("W", faces.left(e.id)),
            ("E", faces.right(e.id)),
        )
        crossings.append(StateCrossing(f"c:{e.id}", CrossingKind.CIRCLE, corners, (("i", e.color),), e.id))

    outer = tuple(dict.fromkeys(faces.of_side(s) for s in d.outer if s.edge in d.edge_map))
    marked = None
    basepoint_color = None
    basepoint_edge = None
    if d.basepoint is not None:
        u, v = faces.left(d.basepoint.edge), faces.right(d.basepoint.edge)
        if u == v:
            raise BasepointOnBridge(f"basepoint edge {d.basepoint.edge} is an embedded bridge")
        marked = (u, v)
        basepoint_color = d.color(d.basepoint.edge)
        basepoint_edge = d.basepoint.edge
    logger.debug("regions: |Cr|=%d |Re|=%d connected=%s", len(crossings), len(regions), d.is_connected)
    return RegionModel(
        crossings=tuple(crossings),
        regions=tuple(regions),
        faces=faces,
        outer=outer,
        connected=d.is_connected,
        marked=marked,
        basepoint_color=basepoint_color,
        basepoint_edge=basepoint_edge,
    )


def region_indices(d: MOYDiagram, rm: RegionModel, traversal: str = "bfs") -> RegionModel:
    """Assign ind(.) to every face: outer face 0, right minus left equals the color.

    Each component is propagated from its own outer face. ``traversal`` is
    "bfs" or "dfs"; both give the same map on valid diagrams.
    """
    faces = rm.faces
    graph = nx.Graph()
    graph.add_nodes_from(range(len(faces)))
    gain: dict[tuple[int, int], int] = {}
    for e in d.edges:
        left, right = faces.left(e.id), faces.right(e.id)
        if left == right:
            if e.color != 0:
                raise InconsistentIndices(f"edge {e.id} has the same face on both sides but color {e.color}")
            continue
        graph.add_edge(left, right)
        gain.setdefault((left, right), e.color)
        gain.setdefault((right, left), -e.color)

    walk = nx.bfs_edges if traversal == "bfs" else nx.dfs_edges
    indices: dict[int, int] = {}
    for root in rm.outer:
        if root in indices:
            continue
        indices[root] = 0
        for parent, child in walk(graph, root):
            indices[child] = indices[parent] + gain[(parent, child)]

    for e in d.edges:
        left, right = faces.left(e.id), faces.right(e.id)
        if left not in indices or right not in indices:
            raise InconsistentIndices(f"edge {e.id} borders a face not reached from an outer face")
        if indices[right] - indices[left] != e.color:
            raise InconsistentIndices(
                f"edge {e.id}: index difference {indices[right] - indices[left]} != color {e.color}"
            )
    return replace(rm, indices=indices)


def region_model(d: MOYDiagram) -> RegionModel:
    """build_regions followed by region_indices."""
    return region_indices(d, build_regions(d))


def delta_weight(rm: RegionModel) -> LaurentPoly:
    """|delta| = t^ind(R_v) - t^ind(R_u), R_u the left region of the basepoint edge."""
    if rm.marked is None:
        raise BasepointMissing("no basepoint set")
    if rm.basepoint_color == 0:
        raise ZeroColorBasepoint("basepoint lies on an edge of color 0")
    u, v = rm.marked
    return LaurentPoly.monomial(4 * rm.index(v)) - LaurentPoly.monomial(4 * rm.index(u))


def legal_basepoint(d: MOYDiagram, faces: Optional[FaceStructure] = None) -> Basepoint:
    """Lowest-id edge with nonzero color whose two sides lie in different faces."""
    faces = faces if faces is not None else FaceStructure(d)
    for e in sorted(d.edges, key=lambda e: e.id):
        if e.color != 0 and faces.left(e.id) != faces.right(e.id):
            return Basepoint(e.id)
    raise NoLegalBasepoint(f"{d.name or 'diagram'}: every edge is zero-colored or a bridge")


def legal_basepoints(d: MOYDiagram) -> list[Basepoint]:
    faces = FaceStructure(d)
    return [
        Basepoint(e.id)
        for e in sorted(d.edges, key=lambda e: e.id)
        if e.color != 0 and faces.left(e.id) != faces.right(e.id)
    ]
