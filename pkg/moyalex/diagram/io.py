"""Reading and writing JSON diagram files.

Edge colors may be integers or linear expressions in color variables
("i", "i+j", "2*k-1"); they are bound to integers at load time.
"""

import json
import logging
from pathlib import Path
from typing import Mapping, Optional, Union

import sympy as sp
from pydantic import ValidationError

from ..algebra import parse_linear
from ..errors import DiagramValidationError, ParseError, UnboundColor
from .graph import Basepoint, Crossing, Edge, HalfEdge, MOYDiagram, Side, Sign, Vertex
from .models import CrossingSpec, DeltaSpec, DiagramFile, EdgeSpec, OuterSpec, VertexSpec
from .validation import validate

logger = logging.getLogger(__name__)


def read_document(source: Union[str, bytes, Path]) -> DiagramFile:
    """Parse JSON text, bytes or a file path into a DiagramFile."""
    if isinstance(source, Path):
        try:
            source = source.read_bytes()
        except OSError as exc:
            raise ParseError(str(exc)) from exc
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError("file is not UTF-8") from exc
    try:
        doc = DiagramFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = "/".join(str(part) for part in first["loc"]) or "document"
        raise ParseError(first["msg"], location) from exc
    _check_unique(doc)
    return doc


def _check_unique(doc: DiagramFile) -> None:
    seen: set[str] = set()
    for k, e in enumerate(doc.edges):
        if e.id in seen:
            raise ParseError(f"duplicate edge id {e.id!r}", f"edges/{k}/id")
        seen.add(e.id)
    nodes: set[str] = set()
    for group, items in (("vertices", doc.vertices), ("crossings", doc.crossings)):
        for k, node in enumerate(items):
            if node.id in nodes:
                raise ParseError(f"duplicate node id {node.id!r}", f"{group}/{k}/id")
            nodes.add(node.id)


def color_variables(doc: DiagramFile) -> list[str]:
    """Sorted names of the color variables used in a document."""
    names: set[str] = set()
    for e in doc.edges:
        if isinstance(e.color, str):
            names.update(str(s) for s in _color_expr(e.color, e.id).free_symbols)
    return sorted(names)


def _color_expr(text: str, edge_id: str) -> sp.Expr:
    try:
        return parse_linear(text)
    except ValueError as exc:
        raise ParseError(f"cannot read color expression {text!r}: {exc}", f"edge {edge_id}") from exc


def bind_color(spec: EdgeSpec, colors: Mapping[str, int]) -> int:
    if isinstance(spec.color, int):
        return spec.color
    expr = _color_expr(spec.color, spec.id)
    missing = sorted(str(s) for s in expr.free_symbols if str(s) not in colors)
    if missing:
        raise UnboundColor(f"edge {spec.id}: no value for color variable(s) {', '.join(missing)}")
    value = expr.subs({sp.Symbol(name): value for name, value in colors.items()})
    if not value.is_integer:
        raise ParseError(f"color {spec.color!r} does not bind to an integer", f"edge {spec.id}")
    return int(value)


def _ref(text: str, location: str) -> HalfEdge:
    try:
        return HalfEdge.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc), location) from exc


def _over(spec: CrossingSpec, rotation: tuple[HalfEdge, ...], location: str) -> HalfEdge:
    probe = Crossing(spec.id, rotation, rotation[0])
    if probe.offset is None:
        raise ParseError("cyclic order must be in, in, out, out", location)
    a_in, b_in, a_out, b_out = probe.normalized()
    strands = ((a_in, a_out), (b_in, b_out))
    if "." in spec.over:
        target = _ref(spec.over, location)
        hits = [s for s in strands if target in s]
    else:
        hits = [s for s in strands if spec.over in (s[0].edge, s[1].edge)]
    if len(hits) != 1:
        raise ParseError(f"over {spec.over!r} does not name exactly one strand", location)
    return hits[0][0]


def _outer(outer) -> tuple[Side, ...]:
    items = outer if isinstance(outer, list) else [outer]
    sides = []
    for item in items:
        if isinstance(item, str):
            # "<edge>.out" / "<edge>.in" are tolerated as plain edge names
            edge = item.rpartition(".")[0] if item.endswith((".in", ".out")) else item
            sides.append(Side(edge, "left"))
        else:
            sides.append(Side(item.edge, item.side))
    return tuple(sides)


def build_diagram(doc: DiagramFile, colors: Optional[Mapping[str, int]] = None, check: bool = True) -> MOYDiagram:
    """Bind colors and convert a document into a MOYDiagram.

    Raises ParseError for inconsistent declarations (sign, tail, head) and,
    when ``check`` is set, DiagramValidationError for invalid diagrams.
    """
    colors = dict(colors or {})
    edges = tuple(
        Edge(e.id, bind_color(e, colors), tuple(Sign(s) for s in e.twists)) for e in doc.edges
    )
    vertices = tuple(
        Vertex(v.id, tuple(_ref(r, f"vertices/{k}/rotation") for r in v.rotation))
        for k, v in enumerate(doc.vertices)
    )
    crossings = []
    for k, x in enumerate(doc.crossings):
        location = f"crossings/{k}"
        rotation = tuple(_ref(r, f"{location}/rotation") for r in x.rotation)
        crossing = Crossing(x.id, rotation, _over(x, rotation, location))
        if x.sign is not None and crossing.sign is not Sign(x.sign):
            raise ParseError(f"declared sign {x.sign} disagrees with over strand", location)
        crossings.append(crossing)
    basepoint = Basepoint(doc.delta.edge, doc.delta.position) if doc.delta else None
    d = MOYDiagram(edges, vertices, tuple(crossings), _outer(doc.outer), basepoint, doc.name)

    for k, e in enumerate(doc.edges):
        for end, declared in (("tail", e.tail), ("head", e.head)):
            if declared is None:
                continue
            actual = d.tail(e.id) if end == "tail" else d.head(e.id)
            if actual is None or (actual.node, actual.index) != tuple(declared):
                raise ParseError(f"declared {end} {list(declared)} disagrees with rotations", f"edges/{k}/{end}")

    if check:
        report = validate(d)
        if not report.valid:
            raise DiagramValidationError(report)
    logger.debug("loaded %s: %d edges, %d vertices, %d crossings", d.name, len(edges), len(vertices), len(crossings))
    return d


def parse(source: Union[str, bytes, Path], colors: Optional[Mapping[str, int]] = None, check: bool = True) -> MOYDiagram:
    """Read a diagram from JSON text, bytes or a path."""
    return build_diagram(read_document(source), colors, check)


def load(path: Union[str, Path], colors: Optional[Mapping[str, int]] = None, check: bool = True) -> MOYDiagram:
    return parse(Path(path), colors, check)


def to_document(d: MOYDiagram, canonical: bool = False) -> DiagramFile:
    """Convert back to a document with integer colors, derived ports and signs.

    ``canonical`` sorts edges and nodes by id; otherwise the diagram's own
    order is kept.
    """

    def ordered(items):
        return sorted(items, key=lambda item: item.id) if canonical else list(items)

    edges = []
    for e in ordered(d.edges):
        tail, head = d.endpoints[e.id]
        edges.append(
            EdgeSpec(
                id=e.id,
                color=e.color,
                tail=(tail.node, tail.index) if tail else None,
                head=(head.node, head.index) if head else None,
                twists=[t.value for t in e.twists],
            )
        )
    vertices = [VertexSpec(id=v.id, rotation=[str(r) for r in v.rotation]) for v in ordered(d.vertices)]
    crossings = [
        CrossingSpec(id=x.id, rotation=[str(r) for r in x.rotation], over=str(x.over), sign=x.sign.value)
        for x in ordered(d.crossings)
    ]
    outer = [OuterSpec(edge=s.edge, side=s.side) for s in d.outer]
    delta = DeltaSpec(edge=d.basepoint.edge, position=d.basepoint.position) if d.basepoint else None
    return DiagramFile(
        name=d.name,
        edges=edges,
        vertices=vertices,
        crossings=crossings,
        outer=outer[0] if len(outer) == 1 else outer,
        delta=delta,
    )


def serialize(d: MOYDiagram, canonical: bool = False, indent: Optional[int] = 2) -> str:
    doc = to_document(d, canonical)
    return json.dumps(doc.model_dump(mode="json", exclude_none=True), indent=indent) + "\n"


def to_pd(d: MOYDiagram) -> str:
    """Tab-separated incidence listing: one line per edge, vertex and crossing."""
    lines = []
    for e in sorted(d.edges, key=lambda e: e.id):
        tail, head = d.endpoints[e.id]
        ends = [f"{p.node}:{p.index}" if p else "-" for p in (tail, head)]
        twists = "".join(t.value for t in e.twists) or "-"
        lines.append("\t".join(["edge", e.id, str(e.color), *ends, twists]))
    for v in sorted(d.vertices, key=lambda v: v.id):
        lines.append("\t".join(["vertex", v.id, *map(str, v.rotation)]))
    for x in sorted(d.crossings, key=lambda x: x.id):
        lines.append("\t".join(["crossing", x.id, x.sign.value, *map(str, x.rotation), str(x.over)]))
    for s in d.outer:
        lines.append("\t".join(["outer", s.edge, s.side]))
    if d.basepoint:
        lines.append("\t".join(["delta", d.basepoint.edge, str(d.basepoint.position)]))
    return "\n".join(lines) + "\n"
