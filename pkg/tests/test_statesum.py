import json

import pytest

from moyalex.algebra import LaurentPoly, brace_int, quantum_int
from moyalex.config import DATA_DIR, settings
from moyalex.diagram import braid_closure, delta_weight, legal_basepoint, region_model
from moyalex.diagram.regions import CrossingKind
from moyalex.errors import NotPlanar, StateLimitExceeded, WeightTableError
from moyalex.normalize import normalized_delta
from moyalex.statesum import (
    alexander_matrix,
    bareiss_det,
    bracket,
    bracket_by_determinant,
    calibrate_weights,
    determinant_bracket,
    enumerate_states,
    load_weight_table,
    parse_weight_table,
    planar_P_bracket,
    state_sign,
)
from moyalex.statesum.calibration import theta51_state_values
from moyalex.verify import corpus


def test_shipped_table_calibrates(table):
    report = calibrate_weights(table)
    assert report.passed, [c.detail for c in report.failures()]
    assert {"row-sum", "weighted-row-sum", "basepoint", "theta-51"} <= {c.group for c in report.checks}


def test_broken_table_is_reported(table):
    raw = json.loads((DATA_DIR / "weights_v1.json").read_text())
    raw["corners"]["circle"]["W"]["A"] = "t^(i)"
    report = calibrate_weights(parse_weight_table(raw), moves=False)
    assert not report.passed
    assert "row-sum" in report.failed_groups()


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda raw: raw.pop("version"), "missing"),
        (lambda raw: raw["corners"]["positive"].pop("W"), "exactly the corners"),
        (lambda raw: raw["corners"]["negative"]["S"].update(M=2), "M and m"),
        (lambda raw: raw["corners"]["positive"]["W"].update(A="{__import__('os').getcwd()}"), "cannot read exponent"),
        (lambda raw: raw["corners"]["positive"]["W"].update(A="t^(k)"), "unknown variables"),
        (lambda raw: raw["indices"]["circle"].update(E="i*i"), "not linear"),
    ],
)
def test_malformed_tables(mutate, message):
    raw = json.loads((DATA_DIR / "weights_v1.json").read_text())
    mutate(raw)
    with pytest.raises(WeightTableError, match=message):
        parse_weight_table(raw)


def test_weight_table_override(tmp_path, monkeypatch):
    copy = tmp_path / "weights.json"
    copy.write_text((DATA_DIR / "weights_v1.json").read_text())
    monkeypatch.setattr(settings, "weight_table_override", copy)
    assert settings.has_weight_override
    assert load_weight_table().source == str(copy.resolve())

    monkeypatch.setattr(settings, "weight_table_override", tmp_path / "missing.json")
    with pytest.raises(WeightTableError, match="MOYALEX_WEIGHT_TABLE"):
        load_weight_table()


def test_corner_patterns(table):
    env = {"i": 3}
    assert table.MA(CrossingKind.CIRCLE, "N", env) == brace_int(3)
    assert table.P(CrossingKind.CIRCLE, "N", env) == quantum_int(3)
    assert table.MA(CrossingKind.POSITIVE, "N", {"a": 2, "b": 1}) == -LaurentPoly.t_power(2)


def test_trivial_theta_states(table):
    d = corpus.theta_trivial(2, 3)
    rm = region_model(d)
    states = enumerate_states(rm)
    assert len(states) == 2
    assert bracket(d, table=table) == brace_int(5) ** 2


@pytest.mark.parametrize("i, j", [(1, 1), (1, 2), (2, 3)])
def test_planar_P_bracket_matches_bracket(table, i, j):
    d = corpus.theta_trivial(i, j)
    total = planar_P_bracket(d, table=table)
    assert all(c >= 0 for _, c in total.items())
    weight = delta_weight(region_model(d))
    assert total * weight * brace_int(1) == bracket(d, table=table)


def test_planar_P_bracket_rejects_crossings(table, theta_51):
    with pytest.raises(NotPlanar):
        planar_P_bracket(theta_51, table=table)


def test_theta_51_states(table, theta_51):
    rm = region_model(theta_51)
    assert len(enumerate_states(rm)) == 7
    expected = sum(theta51_state_values(1, 1), LaurentPoly())
    assert expected == LaurentPoly({14: 1, 10: -1, 6: -1, 2: 3, -2: 1, -6: -1})


def _corner_permanent(rm):
    free = rm.free_regions()
    column = {region: k for k, region in enumerate(free)}
    rows = [[0] * len(free) for _ in rm.crossings]
    for row, c in zip(rows, rm.crossings):
        for _, region in c.corners:
            if region in column:
                row[column[region]] += 1
    counts = {0: 1}
    for row in rows:
        step: dict[int, int] = {}
        for used, n in counts.items():
            for k, m in enumerate(row):
                if m and not used & (1 << k):
                    step[used | (1 << k)] = step.get(used | (1 << k), 0) + n * m
        counts = step
    return sum(counts.values())


@pytest.mark.parametrize("name", ["theta_51", "theta_trivial", "unknot", "hopf", "trefoil", "figure-eight"])
def test_state_count_is_a_permanent(named, name):
    d = named[name]
    if d.basepoint is None:
        d = d.with_basepoint(legal_basepoint(d))
    rm = region_model(d)
    assert rm.n_crossings == len(rm.free_regions())
    assert len(enumerate_states(rm)) == _corner_permanent(rm)


def test_theta_51_has_seven_states(theta_51):
    assert len(enumerate_states(region_model(theta_51))) == 7 == len(theta51_state_values(1, 1))


@pytest.mark.parametrize("components", [2, 3])
def test_split_diagrams_have_no_states(table, components):
    d = corpus.unlink(components)
    d = d.with_basepoint(legal_basepoint(d))
    rm = region_model(d)
    assert not rm.connected
    assert rm.n_regions - rm.n_crossings != 2
    assert enumerate_states(rm) == []
    assert bracket(d, table=table).is_zero
    assert normalized_delta(d, table).delta == LaurentPoly()


def test_state_limit(theta_51):
    with pytest.raises(StateLimitExceeded):
        enumerate_states(region_model(theta_51), limit=3)


@pytest.mark.parametrize(
    "d",
    [
        braid_closure(2, [1, 1, 1]),
        braid_closure(3, [1, -2, 1, -2]),
        corpus.theta_51(1, 2),
        corpus.twisted_theta(1, 2, [1, 1]),
    ],
    ids=["trefoil", "figure-eight", "theta_51", "twisted-theta"],
)
def test_determinant_engine_agrees(table, d):
    d = d if d.basepoint else d.with_basepoint(legal_basepoint(d))
    assert bracket_by_determinant(d, table=table) == bracket(d, table=table)
    rm = region_model(d)
    _, epsilon = determinant_bracket(d, table=table)
    assert {state_sign(s, rm, table) for s in enumerate_states(rm)} == {epsilon}


def test_alexander_matrix_rows(table, theta_51):
    rm = region_model(theta_51)
    m = alexander_matrix(rm, table)
    assert m.shape == (rm.n_crossings, rm.n_regions)
    assert all(m.row_sum(p).is_zero for p in range(rm.n_crossings))


def test_bareiss_small():
    a, b = LaurentPoly.monomial(1), LaurentPoly.monomial(-1)
    matrix = [[a, LaurentPoly.constant(1)], [LaurentPoly.constant(1), b]]
    assert bareiss_det(matrix) == LaurentPoly()
    assert bareiss_det([[a, LaurentPoly()], [LaurentPoly(), a]]) == LaurentPoly.monomial(2)
