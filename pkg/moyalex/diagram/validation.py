"""Structural validation of MOY diagrams."""

from collections import Counter

from pydantic import BaseModel

from .graph import IN, MOYDiagram


class ValidationIssue(BaseModel):
    """One violated invariant."""

    code: str  # e.g. 'vertex-balance', 'moy-condition', 'euler'
    element: str  # offending edge, vertex or crossing id
    message: str


class ValidationReport(BaseModel):
    """Every violated invariant of a diagram; empty when the diagram is valid."""

    issues: list[ValidationIssue] = []

    @property
    def valid(self) -> bool:
        return not self.issues

    @property
    def codes(self) -> set[str]:
        return {issue.code for issue in self.issues}

    def add(self, code: str, element: str, message: str) -> None:
        self.issues.append(ValidationIssue(code=code, element=element, message=message))


def validate(d: MOYDiagram) -> ValidationReport:
    """Check every structural invariant; never raises for what it reports."""
    report = ValidationReport()

    edge_ids = Counter(e.id for e in d.edges)
    for eid, count in edge_ids.items():
        if count > 1:
            report.add("duplicate-id", eid, f"edge id used {count} times")
    node_ids = Counter([v.id for v in d.vertices] + [x.id for x in d.crossings])
    for nid, count in node_ids.items():
        if count > 1:
            report.add("duplicate-id", nid, f"node id used {count} times")

    for e in d.edges:
        if e.color < 0:
            report.add("negative-color", e.id, f"color {e.color} is negative")

    # Half-edge usage
    usage = Counter()
    for node in (*d.vertices, *d.crossings):
        for ref in node.rotation:
            if ref.edge not in d.edge_map:
                report.add("unknown-edge", node.id, f"references unknown edge {ref.edge!r}")
            usage[ref] += 1
    for ref, count in usage.items():
        if count > 1:
            report.add("half-edge-reuse", ref.edge, f"half-edge {ref} used {count} times")
    for e in d.edges:
        has_tail = usage[(e.id, "out")] > 0
        has_head = usage[(e.id, IN)] > 0
        if has_tail != has_head:
            report.add("dangling-edge", e.id, "edge has exactly one attached end")

    for v in d.vertices:
        _check_vertex(d, v, report)
    for x in d.crossings:
        _check_crossing(d, x, report)

    _check_outer(d, report)
    if d.basepoint is not None and d.basepoint.edge not in d.edge_map:
        report.add("basepoint-unknown-edge", d.basepoint.edge, "basepoint lies on an unknown edge")

    if report.valid:
        _check_genus(d, report)
    return report


def _check_vertex(d: MOYDiagram, v, report: ValidationReport) -> None:
    known = [ref for ref in v.rotation if ref.edge in d.edge_map]
    ins = [ref for ref in known if ref.is_in]
    outs = [ref for ref in known if not ref.is_in]
    if not ins or not outs:
        report.add("vertex-degree", v.id, "a vertex needs at least one entering and one leaving edge")
        return
    color_in = sum(d.color(ref.edge) for ref in ins)
    color_out = sum(d.color(ref.edge) for ref in outs)
    if color_in != color_out:
        report.add("vertex-balance", v.id, f"entering colors sum to {color_in}, leaving colors to {color_out}")
    n = len(known)
    switches = sum(1 for k in range(n) if known[k].is_in and not known[(k + 1) % n].is_in)
    if switches != 1:
        report.add("moy-condition", v.id, "entering half-edges are not one contiguous arc")


def _check_crossing(d: MOYDiagram, x, report: ValidationReport) -> None:
    if len(x.rotation) != 4:
        report.add("crossing-arity", x.id, f"crossing has {len(x.rotation)} half-edges, expected 4")
        return
    if x.offset is None:
        report.add("crossing-pattern", x.id, "cyclic order must be in, in, out, out")
        return
    if any(ref.edge not in d.edge_map for ref in x.rotation):
        return
    a_in, b_in, a_out, b_out = x.normalized()
    if d.color(a_in.edge) != d.color(a_out.edge):
        report.add("crossing-color", x.id, f"strand {a_in.edge}/{a_out.edge} changes color")
    if d.color(b_in.edge) != d.color(b_out.edge):
        report.add("crossing-color", x.id, f"strand {b_in.edge}/{b_out.edge} changes color")
    if x.over not in (a_in, b_in):
        report.add("crossing-over", x.id, f"over reference {x.over} is not an incoming half-edge here")


def _check_outer(d: MOYDiagram, report: ValidationReport) -> None:
    if not d.edges:
        report.add("empty", "-", "diagram has no edges")
        return
    covered = set()
    for side in d.outer:
        if side.edge not in d.edge_map:
            report.add("outer-unknown-edge", side.edge, "outer face designation names an unknown edge")
            continue
        covered.add(d.component_of(side.edge))
    for index, comp in enumerate(d.components):
        if index not in covered:
            report.add("outer-missing", min(comp), "connected component has no outer face designation")


def _check_genus(d: MOYDiagram, report: ValidationReport) -> None:
    from .regions import FaceStructure

    faces = FaceStructure(d)
    for index, comp in enumerate(d.components):
        nodes = {port.node for eid in comp for port in d.endpoints[eid] if port is not None}
        loops = sum(1 for eid in comp if d.is_free_loop(eid))
        n_faces = sum(1 for face in faces.faces if face[0][0] in comp)
        euler = len(nodes) + loops - len(comp) + n_faces
        if euler != 2:
            report.add("euler", min(comp), f"component has Euler characteristic {euler}, expected 2 (genus 0)")
