import logging

import pytest

from moyalex.algebra import ONE, LaurentPoly, brace_int, quantum_int
from moyalex.config import DATA_DIR
from moyalex.diagram import Basepoint, Sign, braid_closure, mirror, read_document, reverse
from moyalex.errors import NotALink, SymbolicFitError
from moyalex.normalize import (
    Engine,
    WellDefined,
    colored_curliness,
    colored_writhe,
    count_curves,
    default_bindings,
    eval_at_one,
    framing_exponent,
    framing_factor,
    link_alexander,
    link_potential,
    normalized_delta,
    split_qint,
    state_contributions,
    symbolic_states,
)
from moyalex.rewrite import surgery
from moyalex.verify import corpus
from moyalex.verify.checks import LINK_VALUES

THETA_51 = LaurentPoly({14: 1, 10: -1, 6: -1, 2: 3, -2: 1, -6: -1})


def test_theta_51_invariant(table, theta_51):
    result = normalized_delta(theta_51, table)
    assert result.delta == THETA_51
    assert result.framing == ONE
    assert result.vertex_count == 2
    assert result.well_defined is WellDefined.AMBIENT
    assert result.unit_canonical is None
    assert result.delta.to_t_string() == "t^(7/2) - t^(5/2) - t^(3/2) + 3*t^(1/2) + t^(-1/2) - t^(-3/2)"
    assert eval_at_one(theta_51, table) == 2


@pytest.mark.parametrize("i, j", [(1, 1), (1, 2), (2, 1), (2, 3)])
def test_trivial_theta_is_quantum_integer(table, i, j):
    assert normalized_delta(corpus.theta_trivial(i, j), table).delta == quantum_int(i + j)
    assert normalized_delta(corpus.theta(i, j), table).delta == quantum_int(i + j)
    assert eval_at_one(corpus.theta_trivial(i, j), table) == i + j


def test_trivial_theta_curves(theta_trivial):
    curves = count_curves(theta_trivial)
    assert curves.cw + curves.ccw == 2
    assert curves.exponent == 4
    assert colored_curliness(theta_trivial) == LaurentPoly.monomial(4)


@pytest.mark.parametrize("engine", [Engine.STATESUM, Engine.DET])
def test_engines_agree_on_theta_51(table, engine):
    d = corpus.theta_51(1, 2)
    assert normalized_delta(d, table, engine).delta == normalized_delta(d, table).delta


def test_rewrite_engine_is_not_a_state_engine(table, theta_51):
    with pytest.raises(ValueError):
        normalized_delta(theta_51, table, Engine.REWRITE)


def test_half_twist_scales_by_color(table, theta_51):
    base = normalized_delta(theta_51, table).delta
    twisted = theta_51.with_twist("c0", Sign.POSITIVE)
    assert framing_exponent(twisted) == 2
    assert framing_factor(twisted) == LaurentPoly.monomial(2)
    assert framing_factor(theta_51) == ONE
    assert normalized_delta(twisted, table).delta == base * LaurentPoly.monomial(2)
    unframed = normalized_delta(twisted, table, include_framing=False)
    assert unframed.delta == base
    assert unframed.framing == ONE


def test_basepoint_does_not_matter(table, theta_51):
    base = normalized_delta(theta_51, table).delta
    for edge in ("a0", "b2", "c4"):
        moved = theta_51.with_basepoint(Basepoint(edge))
        result = normalized_delta(moved, table)
        assert result.delta == base
        assert result.basepoint == edge


def test_mirror_inverts_the_variable(table, theta_51):
    base = normalized_delta(theta_51, table).polynomial
    assert normalized_delta(mirror(theta_51), table).polynomial == base.invert_variable()


def test_zero_colored_rungs_are_defined_up_to_a_unit(table, caplog):
    d = corpus.twisted_theta(1, 1, [1])
    ladder = surgery.ladder(d, d.crossings[0].id)
    caplog.set_level(logging.DEBUG, logger="moyalex.normalize.invariant")
    result = normalized_delta(ladder, table)
    assert result.well_defined is WellDefined.REGULAR_UP_TO_UNIT
    quiet = [r for r in caplog.records if "not trivalent" in r.getMessage()]
    assert quiet and all(r.levelno == logging.DEBUG for r in quiet)


@pytest.mark.parametrize("i, j", [(1, 1), (1, 2)])
def test_reversal_keeps_the_invariant(table, i, j):
    d = corpus.theta_51(i, j)
    reversed_d = reverse(d)
    assert all(e.color > 0 for e in reversed_d.edges)
    assert normalized_delta(reversed_d, table).delta == normalized_delta(d, table).delta


@pytest.mark.parametrize("name", sorted(LINK_VALUES))
def test_link_alexander(table, named, name):
    d = named[name]
    if not d.is_connected:
        assert normalized_delta(d, table).delta == LaurentPoly()
        return
    expected = LINK_VALUES[name]
    assert link_alexander(d, table) == expected
    assert link_alexander(mirror(d), table) == expected.invert_variable()
    assert link_alexander(reverse(d), table) == expected


def test_colored_writhe(named):
    assert colored_writhe(named["trefoil"]) == 3
    assert colored_writhe(named["figure-eight"]) == 0


def test_link_only_operations(table, theta_51):
    with pytest.raises(NotALink):
        link_alexander(theta_51, table)
    with pytest.raises(NotALink):
        link_potential(theta_51, table)
    with pytest.raises(NotALink):
        link_alexander(braid_closure(2, [1, 1, 1], color=2), table)


def test_link_potential_matches_the_mirror(table, named):
    for name in ("trefoil", "hopf", "figure-eight"):
        d = named[name]
        assert link_potential(d, table) * brace_int(1) == -link_alexander(mirror(d), table)


def test_state_contributions_sum_to_the_invariant(table, theta_51):
    rows = state_contributions(theta_51, table)
    assert len(rows) == 7
    total = sum((value for _, value in rows), LaurentPoly())
    assert total == THETA_51


def test_split_qint():
    assert split_qint(LaurentPoly.monomial(6, -1)) == (-1, 3 / 2, 1)
    assert split_qint(quantum_int(3).shift(2)) == (1, 1 / 2, 3)
    assert split_qint(-quantum_int(2)) == (-1, 0, 2)
    for bad in (LaurentPoly({0: 2}), LaurentPoly({6: 1, -2: -1}), LaurentPoly({0: 1, 8: 1}), LaurentPoly()):
        with pytest.raises(SymbolicFitError):
            split_qint(bad)


def test_default_bindings():
    assert default_bindings(["i", "j"]) == [{"i": 1, "j": 1}, {"i": 2, "j": 1}, {"i": 1, "j": 2}, {"i": 3, "j": 5}]


def test_symbolic_theta_51_states(table):
    doc = read_document(DATA_DIR / "theta_51.json")
    states = symbolic_states(doc, table)
    assert len(states) == 7
    assert {str(s.qint) for s in states} == {"i + j"}
    assert "t^(3*i/2 + 3*j/2)*[i + j]" in {str(s) for s in states}
    assert sorted(s.sign for s in states) == [-1, -1, -1, 1, 1, 1, 1]


def test_symbolic_states_need_variables(table):
    doc = read_document(DATA_DIR / "theta_51.json")
    with pytest.raises(SymbolicFitError):
        symbolic_states(doc.model_copy(update={"edges": [e.model_copy(update={"color": 1}) for e in doc.edges]}), table)
