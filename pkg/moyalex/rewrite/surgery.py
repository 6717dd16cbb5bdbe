"""Local diagram surgery.

Each function cuts a small disk out of a diagram and splices in a new
picture with fresh ids. Edges crossing the disk boundary keep their ids,
so faces outside the disk, the outer designation among them, survive.
Results carry no basepoint.
"""

import logging
from dataclasses import dataclass

from ..diagram.editor import DiagramEditor
from ..diagram.graph import IN, OUT, Crossing, HalfEdge, MOYDiagram, Vertex
from ..errors import UnknownCrossing, UnknownTwist

logger = logging.getLogger(__name__)


def _in(edge: str) -> HalfEdge:
    return HalfEdge(edge, IN)


def _out(edge: str) -> HalfEdge:
    return HalfEdge(edge, OUT)


def _finish(ed: DiagramEditor, d: MOYDiagram) -> MOYDiagram:
    return ed.finish(d.name, keep_basepoint=False)


# Crossings and twists


@dataclass(frozen=True)
class CrossingPorts:
    """A crossing as (A_in, B_in, A_out, B_out) with the strand colors i (A) and j (B)."""

    crossing: Crossing
    a_in: HalfEdge
    b_in: HalfEdge
    a_out: HalfEdge
    b_out: HalfEdge
    i: int
    j: int


def crossing_ports(d: MOYDiagram, crossing_id: str) -> CrossingPorts:
    x = d.node_map.get(crossing_id)
    if not isinstance(x, Crossing):
        raise UnknownCrossing(f"no crossing {crossing_id!r}")
    a_in, b_in, a_out, b_out = x.normalized()
    return CrossingPorts(x, a_in, b_in, a_out, b_out, d.color(a_in.edge), d.color(b_in.edge))


def ladder(d: MOYDiagram, crossing_id: str) -> MOYDiagram:
    """Replace a crossing by two vertices joined by a rung of color |j - i|.

    For i <= j the rung leaves the B strand and enters the A strand; for
    i > j it runs the other way.
    """
    p = crossing_ports(d, crossing_id)
    ed = DiagramEditor(d)
    ed.remove_node(crossing_id)
    rung = ed.new_edge(abs(p.j - p.i), prefix="r")
    if p.i <= p.j:
        ed.add_vertex([p.b_in, p.a_out, _out(rung)])
        ed.add_vertex([p.a_in, _in(rung), p.b_out])
    else:
        ed.add_vertex([p.a_in, _out(rung), p.b_out])
        ed.add_vertex([_in(rung), p.b_in, p.a_out])
    return _finish(ed, d)


def merge_split(d: MOYDiagram, crossing_id: str) -> MOYDiagram:
    """Replace a crossing by a merge into color i + j followed by a split."""
    p = crossing_ports(d, crossing_id)
    ed = DiagramEditor(d)
    ed.remove_node(crossing_id)
    mid = ed.new_edge(p.i + p.j, prefix="m")
    ed.add_vertex([p.a_in, p.b_in, _out(mid)])
    ed.add_vertex([_in(mid), p.a_out, p.b_out])
    return _finish(ed, d)


def delete_twist(d: MOYDiagram, edge_id: str, index: int) -> tuple[MOYDiagram, int]:
    """Remove one half twist; returns the new diagram and the twist's sign as +1 or -1."""
    if edge_id not in d.edge_map:
        raise UnknownTwist(f"no edge {edge_id!r}")
    twists = d.edge(edge_id).twists
    if not 0 <= index < len(twists):
        raise UnknownTwist(f"edge {edge_id} has {len(twists)} half twists, no index {index}")
    ed = DiagramEditor(d)
    ed.twists[edge_id].pop(index)
    return _finish(ed, d), twists[index].value_int


# Zero-colored edges


@dataclass(frozen=True)
class ZeroEdgeEnds:
    """Strands through the tail and head vertices of a zero-colored edge."""

    edge: str
    tail_in: str
    tail_out: str
    head_in: str
    head_out: str


def zero_edge_ends(d: MOYDiagram, edge_id: str) -> ZeroEdgeEnds:
    """Raise ValueError unless the edge is a color-0 rung between two trivalent vertices."""
    if d.color(edge_id) != 0:
        raise ValueError(f"edge {edge_id} has color {d.color(edge_id)}")
    tail, head = d.endpoints[edge_id]
    if tail is None or head is None or tail.node == head.node:
        raise ValueError(f"edge {edge_id} is not a rung between two vertices")
    ends = []
    for port in (tail, head):
        node = d.node_map[port.node]
        if not isinstance(node, Vertex) or len(node.rotation) != 3:
            raise ValueError(f"{port.node} is not a trivalent vertex")
        others = [r for k, r in enumerate(node.rotation) if k != port.index]
        ins = [r.edge for r in others if r.is_in]
        outs = [r.edge for r in others if not r.is_in]
        if len(ins) != 1 or len(outs) != 1:
            raise ValueError(f"{port.node} does not pass a strand through")
        ends.append((ins[0], outs[0]))
    (tail_in, tail_out), (head_in, head_out) = ends
    return ZeroEdgeEnds(edge_id, tail_in, tail_out, head_in, head_out)


def delete_zero_edge(d: MOYDiagram, edge_id: str) -> MOYDiagram:
    ends = zero_edge_ends(d, edge_id)
    tail, head = d.endpoints[edge_id]
    ed = DiagramEditor(d)
    ed.remove_node(tail.node)
    ed.remove_node(head.node)
    ed.remove_edge(edge_id)
    ed.join(ends.tail_in, ends.tail_out)
    ed.join(ends.head_in, ends.head_out)
    return _finish(ed, d)


# Maximal-color edges


@dataclass(frozen=True)
class HEdge:
    """An edge of color m from a merge vertex into a split vertex.

    ``left``/``right`` enter the merge (left follows the edge ccw);
    ``left_out``/``right_out`` leave the split (right_out follows the edge ccw).
    """

    edge: str
    color: int
    merge: str
    split: str
    left: str
    right: str
    left_out: str
    right_out: str


def h_edge(d: MOYDiagram, edge_id: str) -> HEdge:
    """Raise ValueError unless the edge runs from a trivalent merge into a trivalent split."""
    tail, head = d.endpoints[edge_id]
    if tail is None or head is None or tail.node == head.node:
        raise ValueError(f"edge {edge_id} does not join two vertices")
    merge, split = d.node_map[tail.node], d.node_map[head.node]
    for node in (merge, split):
        if not isinstance(node, Vertex) or len(node.rotation) != 3:
            raise ValueError(f"{node.id} is not a trivalent vertex")
    m1, m2 = merge.rotation[(tail.index + 1) % 3], merge.rotation[(tail.index + 2) % 3]
    s1, s2 = split.rotation[(head.index + 1) % 3], split.rotation[(head.index + 2) % 3]
    if not (m1.is_in and m2.is_in and not s1.is_in and not s2.is_in):
        raise ValueError(f"edge {edge_id} is not a merge-to-split edge")
    return HEdge(edge_id, d.color(edge_id), merge.id, split.id, m1.edge, m2.edge, s2.edge, s1.edge)


def unzip_merge(d: MOYDiagram, edge_id: str) -> MOYDiagram:
    """Peel a color-1 strand off the left input of the merge at the edge's tail.

    The left input (color j >= 2) splits into 1 and j-1; the j-1 part joins
    the right input into m-1; the merge then takes (1, m-1).
    """
    h = h_edge(d, edge_id)
    j = d.color(h.left)
    if j < 2:
        raise ValueError(f"left input of {h.merge} already has color {j}")
    ed = DiagramEditor(d)
    ed.remove_node(h.merge)
    one = ed.new_edge(1, prefix="u")
    rest = ed.new_edge(j - 1, prefix="u")
    most = ed.new_edge(h.color - 1, prefix="u")
    ed.add_vertex([_in(h.left), _out(rest), _out(one)])
    ed.add_vertex([_in(rest), _in(h.right), _out(most)])
    ed.add_vertex([_in(one), _in(most), _out(edge_id)])
    return _finish(ed, d)


def unzip_split(d: MOYDiagram, edge_id: str) -> MOYDiagram:
    """Mirror image of unzip_merge at the split on the edge's head."""
    h = h_edge(d, edge_id)
    l = d.color(h.left_out)
    if l < 2:
        raise ValueError(f"left output of {h.split} already has color {l}")
    ed = DiagramEditor(d)
    ed.remove_node(h.split)
    one = ed.new_edge(1, prefix="u")
    rest = ed.new_edge(l - 1, prefix="u")
    most = ed.new_edge(h.color - 1, prefix="u")
    ed.add_vertex([_in(edge_id), _out(most), _out(one)])
    ed.add_vertex([_in(most), _out(h.right_out), _out(rest)])
    ed.add_vertex([_in(one), _in(rest), _out(h.left_out)])
    return _finish(ed, d)


def square(d: MOYDiagram, edge_id: str) -> MOYDiagram:
    """Replace a (1, m-1 | 1, m-1) H by a square with a color-2 left side.

    The right input sheds a color-1 rung to the left strand, which rises as
    color 2 and sheds a color-1 rung back to the right.
    """
    h = h_edge(d, edge_id)
    ed = DiagramEditor(d)
    ed.remove_node(h.merge)
    ed.remove_node(h.split)
    ed.remove_edge(edge_id)
    low = ed.new_edge(1, prefix="s")
    right = ed.new_edge(h.color - 2, prefix="s")
    two = ed.new_edge(2, prefix="s")
    high = ed.new_edge(1, prefix="s")
    ed.add_vertex([_in(h.right), _out(right), _out(low)])
    ed.add_vertex([_in(h.left), _in(low), _out(two)])
    ed.add_vertex([_in(two), _out(high), _out(h.left_out)])
    ed.add_vertex([_in(high), _in(right), _out(h.right_out)])
    return _finish(ed, d)


def cut(d: MOYDiagram, edge_id: str) -> MOYDiagram:
    """Remove the H: left input runs into left output, right into right."""
    h = h_edge(d, edge_id)
    ed = DiagramEditor(d)
    ed.remove_node(h.merge)
    ed.remove_node(h.split)
    ed.remove_edge(edge_id)
    ed.join(h.left, h.left_out)
    ed.join(h.right, h.right_out)
    return _finish(ed, d)
