import json

import pytest

from moyalex.config import DATA_DIR
from moyalex.diagram import (
    Basepoint,
    FaceStructure,
    Sign,
    Tangle,
    braid_closure,
    build_regions,
    color_variables,
    delta_weight,
    legal_basepoint,
    legal_basepoints,
    mirror,
    parse,
    read_document,
    region_indices,
    region_model,
    reverse,
    serialize,
    to_pd,
    validate,
)
from moyalex.diagram.graph import HalfEdge
from moyalex.errors import DiagramValidationError, ParseError, UnboundColor, ZeroColorBasepoint

THETA = (DATA_DIR / "theta_trivial.json").read_text()


def theta_doc(**changes) -> str:
    raw = json.loads(THETA)
    for edge_id, color in changes.items():
        next(e for e in raw["edges"] if e["id"] == edge_id)["color"] = color
    return json.dumps(raw)


def test_half_edge_parse():
    assert HalfEdge.parse("e1.in") == HalfEdge("e1", "in")
    assert HalfEdge.parse("a.b.out").edge == "a.b"
    assert HalfEdge.parse("e.in").opposite() == HalfEdge("e", "out")
    with pytest.raises(ValueError):
        HalfEdge.parse("e1")


def test_load_symbolic_colors():
    doc = read_document(THETA)
    assert color_variables(doc) == ["i", "j"]
    d = parse(THETA, {"i": 2, "j": 3})
    assert [e.color for e in d.edges] == [2, 3, 5]
    assert d.is_trivalent and d.is_planar and d.is_connected
    assert d.basepoint == Basepoint("c")


def test_unbound_color():
    with pytest.raises(UnboundColor, match="j"):
        parse(THETA, {"i": 1})


@pytest.mark.parametrize(
    "text, location",
    [
        ("{not json", "line 1"),
        (json.dumps({"edges": [], "outer": "a", "extra": 1}), "extra"),
        (theta_doc(a="i*j"), "edge a"),
        (theta_doc(a="i+"), "edge a"),
        (theta_doc(a="__import__('os').getcwd() or 1"), "edge a"),
        (theta_doc(a="i.conjugate()"), "edge a"),
        (theta_doc(a="lambda: 1"), "edge a"),
        (theta_doc(a="1e3"), "edge a"),
        (theta_doc(a="i(2)"), "edge a"),
    ],
)
def test_parse_errors(text, location):
    with pytest.raises(ParseError) as info:
        parse(text, {"i": 1, "j": 1})
    assert location in str(info.value)


def test_color_expressions_are_not_executed(tmp_path):
    marker = tmp_path / "marker"
    text = theta_doc(a=f"__import__('pathlib').Path('{marker}').touch() or 1")
    with pytest.raises(ParseError, match="edge a"):
        parse(text, {"i": 1, "j": 1})
    assert not marker.exists()


def test_duplicate_edge_id():
    raw = json.loads(THETA)
    raw["edges"].append(dict(raw["edges"][0]))
    with pytest.raises(ParseError, match="duplicate edge id"):
        read_document(json.dumps(raw))


def test_declared_tail_must_match():
    raw = json.loads(THETA)
    raw["edges"][0]["tail"] = ["v2", 0]
    with pytest.raises(ParseError, match="declared tail"):
        parse(json.dumps(raw), {"i": 1, "j": 1})


def test_unbalanced_vertex_is_rejected():
    with pytest.raises(DiagramValidationError) as info:
        parse(theta_doc(c="i+j+1"), {"i": 1, "j": 1})
    assert "vertex-balance" in info.value.report.codes


def test_validation_without_check():
    d = parse(theta_doc(a=-1), {"j": 1, "i": 1}, check=False)
    report = validate(d)
    assert "negative-color" in report.codes
    assert "vertex-balance" in report.codes


def test_theta_faces_and_regions(theta_trivial):
    faces = FaceStructure(theta_trivial)
    assert len(faces) == 3
    rm = region_model(theta_trivial)
    assert rm.n_regions == 5
    assert rm.n_crossings == 3
    assert all(rm.index(k) == 0 for k in rm.outer)
    for e in theta_trivial.edges:
        assert rm.index(faces.right(e.id)) - rm.index(faces.left(e.id)) == e.color


def test_region_indices_on_the_5_1_theta(theta_51):
    rm = region_model(theta_51)
    faces = rm.faces
    assert len(faces) == 2 - len(theta_51.vertices) - len(theta_51.crossings) + len(theta_51.edges)
    for e in theta_51.edges:
        assert rm.index(faces.right(e.id)) - rm.index(faces.left(e.id)) == e.color


@pytest.mark.parametrize("traversal", ["bfs", "dfs"])
def test_index_traversals_agree(theta_51, traversal):
    rm = build_regions(theta_51)
    assert region_indices(theta_51, rm, traversal).indices == region_model(theta_51).indices


def test_delta_weight_spans_the_basepoint_color(theta_trivial):
    rm = region_model(theta_trivial)
    weight = delta_weight(rm)
    assert len(weight) == 2
    assert weight.max_exponent - weight.min_exponent == 4 * theta_trivial.color("c")


def test_zero_color_basepoint():
    raw = json.loads(THETA)
    d = parse(json.dumps(raw), {"i": 0, "j": 1})
    d = d.with_basepoint(Basepoint("a"))
    with pytest.raises(ZeroColorBasepoint):
        delta_weight(region_model(d))
    assert legal_basepoint(d).edge == "b"
    assert [b.edge for b in legal_basepoints(d)] == ["b", "c"]


def test_braid_closure_crossing_signs():
    d = braid_closure(2, [1, 1, 1], name="trefoil")
    assert len(d.crossings) == 3
    assert all(x.sign is Sign.POSITIVE for x in d.crossings)
    assert d.is_link and d.is_connected
    assert len(FaceStructure(d)) == 5
    assert validate(d).valid
    assert all(x.sign is Sign.NEGATIVE for x in mirror(d).crossings)


def test_reverse_keeps_crossing_signs():
    d = braid_closure(3, [1, -2, 1, -2])
    signs = [x.sign for x in d.crossings]
    assert [x.sign for x in reverse(d).crossings] == signs
    assert reverse(reverse(d)) == d


def test_tangle_split_and_merge():
    t = Tangle([3])
    t.split(0, 1, 2)
    t.twist(1, Sign.NEGATIVE)
    t.merge(0)
    d = t.close("bubble")
    assert len(d.vertices) == 2
    assert sorted(e.color for e in d.edges) == [1, 2, 3]
    assert sum(e.twist_balance for e in d.edges) == -1
    assert validate(d).valid


def test_tangle_rejects_bad_slices():
    t = Tangle([2])
    with pytest.raises(ValueError, match="conserve flow"):
        t.split(0, 1, 2)
    with pytest.raises(IndexError):
        t.merge(0)
    t = Tangle([1, (1, False)])
    with pytest.raises(ValueError):
        t.crossing(0)


def test_cup_and_cap_make_a_circle():
    t = Tangle([])
    t.cup(0, 2)
    t.cap(0)
    d = t.close("circle")
    assert len(d.edges) == 1
    assert d.is_free_loop(d.edges[0].id)
    assert validate(d).valid


def test_serialize_round_trip(theta_51):
    again = parse(serialize(theta_51))
    assert again == theta_51
    canonical = parse(serialize(theta_51, canonical=True))
    assert sorted(e.id for e in canonical.edges) == [e.id for e in canonical.edges]


def test_pd_listing(theta_trivial):
    lines = to_pd(theta_trivial).splitlines()
    assert lines[0] == "edge\ta\t1\tv1:2\tv2:1\t-"
    assert sum(line.startswith("vertex") for line in lines) == 2
    assert lines[-1] == "delta\tc\t0"


def test_marked_model_needs_distinct_sides(theta_trivial):
    rm = build_regions(theta_trivial)
    u, v = rm.marked
    assert u != v
