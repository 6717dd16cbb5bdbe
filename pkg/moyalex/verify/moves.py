"""Generic move appliers used for fuzzing: RII fingers, half twists, smoothings."""

import logging
from typing import Iterator

from ..algebra import LaurentPoly
from ..diagram.editor import DiagramEditor
from ..diagram.graph import IN, OUT, Crossing, HalfEdge, MOYDiagram, Sign
from ..diagram.regions import Dart, FaceStructure
from ..errors import UnknownCrossing, UnknownEdge

logger = logging.getLogger(__name__)


def _arrive(edge: str, direction: int) -> HalfEdge:
    return HalfEdge(edge, IN if direction == 1 else OUT)


def _leave(edge: str, direction: int) -> HalfEdge:
    return HalfEdge(edge, OUT if direction == 1 else IN)


def _cut_in_three(ed: DiagramEditor, d: MOYDiagram, dart: Dart) -> list[str]:
    """Split an edge into three pieces and return them in dart order.

    The piece holding the tail keeps the edge id, its twists and the
    basepoint; the head reference moves to the last piece.
    """
    edge_id, direction = dart
    color = d.color(edge_id)
    middle = ed.new_edge(color, prefix="f")
    last = ed.new_edge(color, prefix="f")
    head = d.head(edge_id)
    old, new = HalfEdge(edge_id, IN), HalfEdge(last, IN)
    rotation = ed.rotations[head.node]
    rotation[head.index] = new
    for node_id, over in ed.overs.items():
        if over == old:
            ed.overs[node_id] = new
    pieces = [edge_id, middle, last]
    return pieces if direction == 1 else pieces[::-1]


def rii_sites(d: MOYDiagram) -> Iterator[tuple[Dart, Dart]]:
    """Ordered pairs of darts on a common face, on different edges."""
    faces = FaceStructure(d)
    for darts in faces.faces:
        usable = [dart for dart in darts if not d.is_free_loop(dart[0])]
        for first in usable:
            for second in usable:
                if first[0] != second[0]:
                    yield first, second


def insert_rii(d: MOYDiagram, finger: Dart, target: Dart, finger_over: bool = True) -> MOYDiagram:
    """Push a finger of one edge across another edge of the same face.

    Both darts must have the face on their left. The two new crossings have
    opposite signs; the finger passes over the target when finger_over.
    """
    for edge_id, _ in (finger, target):
        if edge_id not in d.edge_map:
            raise UnknownEdge(f"no edge {edge_id!r}")
        if d.is_free_loop(edge_id):
            raise ValueError(f"edge {edge_id} is a free loop")
    if finger[0] == target[0]:
        raise ValueError("finger and target must be different edges")
    faces = FaceStructure(d)
    if faces.face_of(*finger) != faces.face_of(*target):
        raise ValueError(f"darts {finger} and {target} do not bound a common face")

    ed = DiagramEditor(d)
    p1, p2, p3 = _cut_in_three(ed, d, finger)
    q1, q2, q3 = _cut_in_three(ed, d, target)
    s, r = finger[1], target[1]
    x = [_arrive(q2, r), _leave(p2, s), _leave(q3, r), _arrive(p1, s)]
    y = [_arrive(q1, r), _arrive(p2, s), _leave(q2, r), _leave(p3, s)]
    for rotation, finger_refs, target_refs in ((x, (x[1], x[3]), (x[0], x[2])), (y, (y[1], y[3]), (y[0], y[2]))):
        strand = finger_refs if finger_over else target_refs
        (over,) = [ref for ref in strand if ref.is_in]
        ed.add_crossing(rotation, over)
    logger.debug("RII finger of %s across %s", finger[0], target[0])
    return ed.finish(d.name)


def insert_twist(d: MOYDiagram, edge_id: str, sign: Sign = Sign.POSITIVE) -> tuple[MOYDiagram, LaurentPoly]:
    """Add one half twist; returns the diagram and the factor t^(+-c/4) it puts on the invariant."""
    if edge_id not in d.edge_map:
        raise UnknownEdge(f"no edge {edge_id!r}")
    return d.with_twist(edge_id, sign), LaurentPoly.monomial(sign.value_int * d.color(edge_id))


def insert_twist_pair(d: MOYDiagram, edge_id: str, first: Sign = Sign.POSITIVE) -> MOYDiagram:
    """Add two opposite half twists next to each other; the invariant is unchanged."""
    if edge_id not in d.edge_map:
        raise UnknownEdge(f"no edge {edge_id!r}")
    return d.with_twist(edge_id, first, 0).with_twist(edge_id, first.flipped(), 1)


def smooth_crossing(d: MOYDiagram, crossing_id: str) -> MOYDiagram:
    """Oriented smoothing: A_in continues into B_out and B_in into A_out."""
    x = d.node_map.get(crossing_id)
    if not isinstance(x, Crossing):
        raise UnknownCrossing(f"no crossing {crossing_id!r}")
    a_in, b_in, a_out, b_out = x.normalized()
    ed = DiagramEditor(d)
    ed.remove_node(crossing_id)
    ed.join(a_in.edge, b_out.edge)
    ed.join(b_in.edge, a_out.edge)
    return ed.finish(d.name)
