import pytest

from moyalex.algebra import LaurentPoly, RationalFunc, quantum_int
from moyalex.diagram import Sign, validate
from moyalex.errors import NoReducibleEdge, NonPositiveColor, RewriteBudgetExceeded
from moyalex.normalize import normalized_delta
from moyalex.rewrite import (
    CITATIONS,
    FormalSum,
    RewriteTrace,
    canonical_form,
    evaluate,
    measure,
    reduce_color_step,
    reducible_edges,
    remove_half_twist,
    resolve_crossing,
    rewrite_to_planar,
    surgery,
)
from moyalex.verify import corpus


def test_canonical_form_ignores_ids():
    a = corpus.theta(1, 2)
    assert canonical_form(a).edges[0].id == "e0"
    assert canonical_form(canonical_form(a)) == canonical_form(a)
    assert len(FormalSum([(1, a), (2, canonical_form(a))])) == 1
    assert FormalSum([(1, a), (2, a)]).coefficient(a) == 3
    assert FormalSum([(1, a), (-1, a)]) == FormalSum()


def test_formal_sum_arithmetic():
    a, b = corpus.theta(1, 1), corpus.circle(1)
    s = FormalSum([(1, a), (LaurentPoly.monomial(2), b)])
    assert (s - s) == FormalSum()
    assert (s * 2).coefficient(b) == LaurentPoly.monomial(2, 2)
    assert (2 * s + s).coefficient(a) == 3
    assert -s == s * -1


def test_half_twist_rule():
    d = corpus.theta(1, 2).with_twist(corpus.theta(1, 2).edges[0].id, Sign.NEGATIVE)
    edge = next(e for e in d.edges if e.twists)
    (coeff, untwisted), = remove_half_twist(d, edge.id).terms
    assert coeff == LaurentPoly.monomial(-edge.color)
    assert not untwisted.has_twists


def test_half_twist_coefficients():
    d = corpus.theta(1, 2)
    one = next(e.id for e in d.edges if e.color == 1)
    two = next(e.id for e in d.edges if e.color == 2)
    (coeff, _), = remove_half_twist(d.with_twist(two, Sign.POSITIVE), two).terms
    assert coeff == LaurentPoly.monomial(2)
    (coeff, _), = remove_half_twist(d.with_twist(one, Sign.NEGATIVE), one).terms
    assert coeff == LaurentPoly.monomial(-1)

    pair = d.with_twist(one, Sign.POSITIVE).with_twist(one, Sign.NEGATIVE)
    (first, once), = remove_half_twist(pair, one).terms
    twisted = next(e.id for e in once.edges if e.twists)
    (second, bare), = remove_half_twist(once, twisted).terms
    assert first * second == RationalFunc(1)
    assert canonical_form(bare) == canonical_form(d)


def _crossing_terms(d):
    (x,) = d.crossings[:1]
    out = resolve_crossing(d, x.id)
    ladder = out.coefficient(surgery.ladder(d, x.id))
    merge_split = out.coefficient(surgery.merge_split(d, x.id))
    return x.sign, ladder, merge_split


@pytest.mark.parametrize(
    "word, sign, ladder, merge_split",
    [
        ([1], Sign.POSITIVE, LaurentPoly.monomial(4, -1), RationalFunc(LaurentPoly.monomial(2), quantum_int(2))),
        ([-1], Sign.NEGATIVE, LaurentPoly.monomial(-4, -1), RationalFunc(LaurentPoly.monomial(-2), quantum_int(2))),
    ],
)
def test_crossing_coefficients_for_equal_colors(word, sign, ladder, merge_split):
    got = _crossing_terms(corpus.twisted_theta(1, 1, word))
    assert got == (sign, RationalFunc.of(ladder), merge_split)


def test_crossing_coefficients_for_colors_1_2():
    sign, ladder, merge_split = _crossing_terms(corpus.twisted_theta(1, 2, [1, 1]))
    assert sign is Sign.POSITIVE
    assert ladder == RationalFunc(LaurentPoly.monomial(6, -1), quantum_int(1) * quantum_int(2))
    assert merge_split == RationalFunc(LaurentPoly.monomial(4), quantum_int(1) * quantum_int(3))


def test_crossing_rule_lowers_the_measure(theta_51):
    before = measure(theta_51)
    out = resolve_crossing(theta_51, "x1")
    assert len(out) == 2
    for _, d in out:
        assert measure(d) < before
        assert validate(d).valid


def test_color_reduction_needs_high_colors():
    with pytest.raises(NoReducibleEdge):
        reduce_color_step(corpus.theta(1, 1))


def test_color_reduction_step():
    d = corpus.theta(1, 2)
    (edge,) = reducible_edges(d)
    out = reduce_color_step(d)
    assert len(out) == 2
    assert all(measure(m) < measure(d) for _, m in out)
    q = quantum_int
    assert out.coefficient(surgery.square(d, edge)) == RationalFunc(q(3), q(1) * q(2) * q(2))
    assert out.coefficient(surgery.cut(d, edge)) == -(q(1) * q(3))


def test_color_reduction_needs_a_planar_diagram(theta_51):
    with pytest.raises(ValueError):
        reduce_color_step(theta_51)


@pytest.mark.parametrize(
    "i, j, max_base_color",
    [(1, 1, None), (1, 2, None), (2, 2, None), (1, 3, None), (1, 1, 2), (1, 2, 2)],
)
def test_planar_theta_by_rewriting(table, i, j, max_base_color):
    trace = RewriteTrace()
    assert evaluate(corpus.theta(i, j), table, trace=trace, max_base_color=max_base_color) == quantum_int(i + j)
    assert any(step.rule == "color" for step in trace.steps) == (max_base_color is not None and i + j > 2)


@pytest.mark.parametrize("i, j", [(1, 1), (1, 2)])
def test_rewriting_the_5_1_theta_at_higher_colors(table, i, j):
    d = corpus.theta_51(i, j)
    trace = RewriteTrace()
    value = evaluate(d, table, trace=trace)
    assert value == RationalFunc.of(normalized_delta(d, table).delta)
    rules = {step.rule for step in trace.steps}
    assert "crossing" in rules and "color" not in rules
    assert trace.base_terms <= 2 ** len(d.crossings)


def test_rewriting_matches_state_sum_on_a_twisted_theta(table):
    d = corpus.twisted_theta(1, 1, [1, 1])
    assert evaluate(d, table) == RationalFunc.of(normalized_delta(d, table).delta)


def test_rewriting_the_5_1_theta(table, theta_51):
    trace = RewriteTrace()
    value = evaluate(theta_51, table, trace=trace, jobs=2)
    assert value == LaurentPoly({14: 1, 10: -1, 6: -1, 2: 3, -2: 1, -6: -1})
    assert trace.steps[0].rule == "crossing"
    assert all(all(m < step.measure for m in step.outputs) for step in trace.steps)
    assert {step.citation for step in trace.steps} <= set(CITATIONS.values())
    assert trace.lines()[-1].startswith("base terms:")


def test_rewrite_budget(theta_51):
    with pytest.raises(RewriteBudgetExceeded):
        rewrite_to_planar(FormalSum.single(theta_51), max_terms=1)


def test_negative_colors_are_rejected(theta_trivial):
    d = theta_trivial.with_colors({"a": -1})
    with pytest.raises(NonPositiveColor):
        evaluate(d)


def test_split_diagrams_vanish(table):
    trace = RewriteTrace()
    assert evaluate(corpus.unlink(2), table, trace=trace).is_zero
    assert trace.dropped == 1
