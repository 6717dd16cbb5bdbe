import json
import random
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moyalex.algebra import symmetry_shift
from moyalex.diagram import Sign, legal_basepoints, validate
from moyalex.errors import IllegalColors, NoVertices, UnknownCrossing, UnknownEdge
from moyalex.normalize import normalized_delta, regular_value
from moyalex.verify import (
    RELATIONS,
    CheckResult,
    Move,
    Report,
    Verdict,
    basepoint_covariance,
    check_pair,
    check_relation,
    chirality,
    cross_engine_check,
    cross_pipeline_check,
    diagram_corpus,
    insert_rii,
    insert_twist,
    insert_twist_pair,
    legal_bindings,
    link_sanity,
    move_corpus,
    nonvanishing_report,
    planarity_obstruction,
    random_planar,
    relation_instances,
    rii_sites,
    run_suite,
    skein_check,
    smooth_crossing,
)
from moyalex.verify import corpus
from moyalex.verify.checks import LINK_VALUES, PLANAR_SAMPLES, _property_tasks, link_value

RELATION_CASES = [(rel_id, colors) for rel_id in RELATIONS for colors in legal_bindings(rel_id, 2)]
MOVE_PAIRS = move_corpus()


@pytest.mark.parametrize(
    "rel_id, colors",
    RELATION_CASES,
    ids=[f"{r}-{'-'.join(map(str, c.values()))}" for r, c in RELATION_CASES],
)
def test_relations_hold(table, rel_id, colors):
    result = check_relation(rel_id, colors, table)
    assert result.passed, result.detail
    assert result.id.startswith(f"relations/{rel_id}/")


def test_relation_side_conditions():
    with pytest.raises(IllegalColors, match="i >= j"):
        relation_instances("vi", {"i": 1, "j": 2})
    with pytest.raises(IllegalColors, match="positive"):
        relation_instances("i", {"i": 0})
    with pytest.raises(IllegalColors, match="needs colors"):
        relation_instances("viii", {"i": 1, "j": 1})
    with pytest.raises(IllegalColors, match="unknown relation"):
        relation_instances("xi", {"i": 1})
    assert {"i": 2, "j": 1} in legal_bindings("vii", 2)
    assert {"i": 1, "j": 2} not in legal_bindings("vii", 2)
    assert all(b["j"] >= b["k"] >= b["l"] for b in legal_bindings("ix", 3))


def test_every_move_has_pairs():
    counts = {move: sum(1 for p in MOVE_PAIRS if p.move is move) for move in Move}
    assert all(count >= 2 for count in counts.values()), counts
    assert all(validate(p.before).valid and validate(p.after).valid for p in MOVE_PAIRS)


@pytest.mark.parametrize("pair", MOVE_PAIRS, ids=[p.name for p in MOVE_PAIRS])
def test_move_pairs(table, pair):
    result = check_pair(pair, table)
    assert result.passed, result.detail


def test_theta_51_planarity(table, theta_51):
    verdict = planarity_obstruction(theta_51, table)
    assert verdict.verdict is Verdict.NON_PLANAR_CERTIFICATE
    assert verdict.certified
    assert verdict.witness == "-t^(-3/2)"
    assert verdict.value_at_one == 2
    assert verdict.delta == "t^(7/2) - t^(5/2) - t^(3/2) + 3*t^(1/2) + t^(-1/2) - t^(-3/2)"


def test_planarity_ignores_framing(table, theta_51):
    twisted = theta_51.with_twist("a1", Sign.NEGATIVE)
    assert planarity_obstruction(twisted, table) == planarity_obstruction(theta_51, table)


def test_trivial_theta_is_inconclusive(table, theta_trivial):
    verdict = planarity_obstruction(theta_trivial, table)
    assert verdict.verdict is Verdict.INCONCLUSIVE
    assert verdict.witness is None
    assert verdict.delta == "t^(1/2) + t^(-1/2)"


def test_planarity_preconditions(table, named):
    with pytest.raises(NoVertices):
        planarity_obstruction(named["trefoil"], table)
    with pytest.raises(IllegalColors):
        planarity_obstruction(corpus.theta_trivial(0, 0), table)


def test_chirality(table, theta_51, theta_trivial):
    assert chirality(theta_51, table) is None
    assert chirality(theta_trivial, table) == 0


def test_link_sanity(table):
    results = link_sanity(table)
    assert len(results) == 2 * len(LINK_VALUES)
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_smoothing_the_trefoil_gives_the_hopf_link(table, named):
    trefoil = named["trefoil"]
    x = min(c.id for c in trefoil.crossings)
    smoothed = smooth_crossing(trefoil, x)
    assert len(smoothed.crossings) == 2
    assert len(smoothed.components) == 1
    assert validate(smoothed).valid
    assert link_value(smoothed, table) == LINK_VALUES["hopf"]
    with pytest.raises(UnknownCrossing):
        smooth_crossing(trefoil, "nope")


@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "hopf", "cinquefoil"])
def test_skein_relation(table, named, name):
    d = named[name]
    for x in sorted(c.id for c in d.crossings):
        result = skein_check(d, x, table)
        assert result.passed, result.detail


@pytest.mark.parametrize("seed", range(4))
def test_random_rii_fingers(table, theta_51, seed):
    rng = random.Random(seed)
    sites = list(rii_sites(theta_51))
    finger, target = rng.choice(sites)
    moved = insert_rii(theta_51, finger, target, finger_over=seed % 2 == 0)
    assert len(moved.crossings) == len(theta_51.crossings) + 2
    assert validate(moved).valid
    assert regular_value(moved, table) == regular_value(theta_51, table)
    assert normalized_delta(moved, table).delta == normalized_delta(theta_51, table).delta


def test_rii_needs_a_common_face(theta_51):
    sites = set(rii_sites(theta_51))
    darts = [(e.id, s) for e in theta_51.edges for s in (1, -1)]
    finger, target = next((a, b) for a in darts for b in darts if a[0] != b[0] and (a, b) not in sites)
    with pytest.raises(ValueError):
        insert_rii(theta_51, finger, target)
    with pytest.raises(UnknownEdge):
        insert_rii(theta_51, ("zz", 1), target)


def test_twist_appliers(table, theta_51):
    base = normalized_delta(theta_51, table).delta
    twisted, factor = insert_twist(theta_51, "c2", Sign.NEGATIVE)
    assert factor.min_exponent == -2
    assert normalized_delta(twisted, table).delta == base * factor
    paired = insert_twist_pair(theta_51, "b1")
    assert paired.edge("b1").twists == (Sign.POSITIVE, Sign.NEGATIVE)
    assert normalized_delta(paired, table).delta == base


def test_basepoint_covariance(table, theta_51):
    choices = legal_basepoints(theta_51)
    for first, second in zip(choices, choices[1:4]):
        result = basepoint_covariance(theta_51, first, second, table)
        assert result.passed, result.detail


ENGINE_CORPUS = diagram_corpus(seed=3, random_count=3)


@pytest.mark.parametrize("d", [d for _, d in ENGINE_CORPUS], ids=[name for name, _ in ENGINE_CORPUS])
def test_engines_agree(table, d):
    if not d.is_connected:
        return
    result = cross_engine_check(d, table)
    assert result.passed, result.detail


@pytest.mark.parametrize("seed", range(3))
def test_rewrite_engine_agrees_on_random_planar(table, seed):
    result = cross_pipeline_check(random_planar(seed, max_color=3, steps=5), table)
    assert result.passed, result.detail


def test_random_planar_diagrams():
    for seed in range(10):
        d = random_planar(seed)
        assert d.is_connected and d.is_planar and d.vertices
        assert 1 <= min(e.color for e in d.edges) and d.max_color <= 3
        assert validate(d).valid
    assert random_planar(7) == random_planar(7)


def test_nonvanishing_on_planar_diagrams(table, theta_51):
    diagrams = [(f"planar-{k}", random_planar(k)) for k in range(8)] + [("theta_51", theta_51)]
    report = nonvanishing_report(diagrams, table)
    assert report.passed, [r.detail for r in report.failures()]
    assert "properties/chirality/theta_51" in {r.id for r in report.results}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_planar_delta_is_positive(table, seed):
    d = random_planar(seed)
    delta = normalized_delta(d, table).polynomial
    assert not delta.is_zero
    assert all(coeff > 0 for _, coeff in delta.items())
    assert symmetry_shift(delta) is not None


def test_properties_suite_samples_planar_diagrams(table):
    assert PLANAR_SAMPLES == 100
    results = _property_tasks(table, seed=3)[1]()
    assert len(results) == PLANAR_SAMPLES
    assert results[0].id == "properties/nonvanishing/planar-3"
    assert results[-1].id == "properties/nonvanishing/planar-102"
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_failures_are_reported_not_raised(table, theta_51):
    pair = MOVE_PAIRS[0].model_copy(update={"expected_factor": MOVE_PAIRS[0].expected_factor * 2})
    result = check_pair(pair, table)
    assert not result.passed
    assert "vs" in result.detail


def test_report_renderings(tmp_path):
    report = Report(
        suite="relations",
        results=[
            CheckResult(id="relations/i/i=1", suite="relations", name="circle", passed=True),
            CheckResult(id="relations/v/i=1,j=1", suite="relations", name="bubble", passed=False, detail="1 vs 2"),
        ],
    )
    assert report.summary() == "relations: 1 passed, 1 failed"
    data = json.loads(report.to_json())
    assert data["passed"] is False
    assert [r["id"] for r in data["results"]] == ["relations/i/i=1", "relations/v/i=1,j=1"]
    root = ET.fromstring(report.to_junit())
    (suite,) = root.findall("testsuite")
    assert suite.get("failures") == "1"
    assert root.find("testsuite/testcase/failure").text == "1 vs 2"
    report.write(tmp_path / "report.xml", junit=True)
    assert (tmp_path / "report.xml").read_text().startswith("<testsuites>")
    merged = report.merged(Report(suite="moves"))
    assert merged.suite == "relations+moves"


def test_run_suite_is_ordered(table):
    report = run_suite("relations", table, jobs=2)
    assert report.passed, [r.detail for r in report.failures()]
    ids = [r.id for r in report.results]
    assert ids == sorted(ids)
    with pytest.raises(ValueError):
        run_suite("nope", table)
