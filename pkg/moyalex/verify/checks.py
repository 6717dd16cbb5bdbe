"""Executable checks: move pairs, relations, planarity, engines and link sanity.

Every check returns a CheckResult and never raises for the condition it
tests; errors from the engines are reported as failures.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Union

from pydantic import BaseModel

from ..algebra import LaurentPoly, RationalFunc, symmetry_shift
from ..diagram.graph import Basepoint, MOYDiagram, Sign, mirror, reverse
from ..diagram.regions import build_regions, delta_weight, legal_basepoint, legal_basepoints, region_indices
from ..diagram.tangle import braid_closure
from ..errors import IllegalColors, MoyalexError, NoVertices
from ..normalize.invariant import Engine, eval_at_one, link_alexander, normalized_delta, regular_value
from ..statesum.matrix import determinant_bracket, state_sign
from ..statesum.states import bracket, iter_states
from ..statesum.weights import CornerWeightTable, default_table
from . import corpus
from .corpus import REGULAR_MOVES, CorpusPair, Move
from .moves import insert_rii, insert_twist, insert_twist_pair, rii_sites, smooth_crossing
from .relations import RELATIONS, legal_bindings, relation_instances
from .report import CheckResult, Report

logger = logging.getLogger(__name__)

SUITES = ("relations", "moves", "properties", "engines")
PLANAR_SAMPLES = 100

Value = Union[LaurentPoly, RationalFunc]


def _rf(value: Union[int, Value]) -> RationalFunc:
    return RationalFunc.of(value)


def _tag(colors: Mapping[str, int]) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(colors.items()))


def difference(lhs: Value, rhs: Value) -> str:
    """Both sides and the lowest term of their difference."""
    lhs, rhs = _rf(lhs), _rf(rhs)
    diff = lhs - rhs
    lead = ""
    if not diff.is_zero:
        num = diff.numerator
        exp = num.min_exponent
        lead = f"; first differing term {LaurentPoly.monomial(exp, num.coefficient(exp)).to_t_string()}"
        if not diff.is_polynomial:
            lead += f" over {diff.denominator.to_t_string()}"
    return f"{lhs.to_t_string()} vs {rhs.to_t_string()}{lead}"


def _guard(check_id: str, suite: str, name: str, colors: Mapping[str, int], body: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = body()
    except MoyalexError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(id=check_id, suite=suite, name=name, passed=passed, detail=detail, colors=dict(colors))


def diagram_value(d: MOYDiagram, table: Optional[CornerWeightTable] = None, engine: Engine = Engine.STATESUM) -> RationalFunc:
    """Normalized invariant as a rational function; zero for split diagrams."""
    if not d.is_connected:
        return RationalFunc(0)
    return _rf(normalized_delta(d, table, engine).delta)


# Move pairs


def check_pair(pair: CorpusPair, table: Optional[CornerWeightTable] = None, engine: Engine = Engine.STATESUM) -> CheckResult:
    """Regular moves compare |delta|^-1 <D|delta> up to the expected factor,
    framed moves the normalized invariant, crossing changes the value at 1."""
    table = table or default_table()

    def body() -> tuple[bool, str]:
        if pair.move in REGULAR_MOVES:
            before = regular_value(pair.before, table, engine)
            after = regular_value(pair.after, table, engine) * pair.expected_factor
        elif pair.move is Move.TWIST:
            before = diagram_value(pair.before, table, engine)
            after = diagram_value(pair.after, table, engine) * pair.expected_factor
        else:
            one_before, one_after = eval_at_one(pair.before, table), eval_at_one(pair.after, table)
            return one_before == one_after, f"values at 1: {one_before} vs {one_after}"
        return before == after, difference(before, after)

    return _guard(f"moves/{pair.name}", "moves", pair.move.value, pair.colors, body)


# Relations


def check_relation(
    rel_id: str,
    colors: Mapping[str, int],
    table: Optional[CornerWeightTable] = None,
    engine: Engine = Engine.STATESUM,
) -> CheckResult:
    """Evaluate every side of a relation and compare; raises IllegalColors for bad colors."""
    table = table or default_table()
    instances = relation_instances(rel_id, colors)
    relation = RELATIONS[rel_id]

    def body() -> tuple[bool, str]:
        details = []
        ok = True
        for inst in instances:
            lhs = diagram_value(inst.lhs, table, engine)
            rhs = inst.constant
            for coeff, d in inst.terms:
                rhs = rhs + coeff * diagram_value(d, table, engine)
            if lhs != rhs:
                ok = False
                details.append(f"({rel_id}) {inst.label}: {difference(lhs, rhs)}")
        return ok, "; ".join(details) or f"({rel_id}) holds on {len(instances)} side(s)"

    return _guard(f"relations/{rel_id}/{_tag(colors)}", "relations", relation.name, colors, body)


# Planarity


class Verdict(str, Enum):
    NON_PLANAR_CERTIFICATE = "NonPlanarCertificate"
    INCONCLUSIVE = "Inconclusive"


class PlanarityVerdict(BaseModel):
    verdict: Verdict
    delta: str
    witness: Optional[str] = None  # lowest term with a negative coefficient
    value_at_one: Optional[int] = None

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.NON_PLANAR_CERTIFICATE


def planarity_obstruction(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> PlanarityVerdict:
    """A negative coefficient of the unframed invariant rules out a planar representative."""
    if not d.vertices:
        raise NoVertices(f"{d.name or 'diagram'} has no vertices")
    colors = [e.color for e in d.edges]
    if any(c < 0 for c in colors) or not any(colors):
        raise IllegalColors("planarity needs non-negative colors, not all zero")
    result = normalized_delta(d, table, include_framing=False)
    if not result.is_polynomial:
        logger.warning("%s: invariant is not a Laurent polynomial; verdict is inconclusive", d.name or "diagram")
        return PlanarityVerdict(verdict=Verdict.INCONCLUSIVE, delta=result.rational.to_t_string())
    delta = result.polynomial
    negative = [(exp, coeff) for exp, coeff in delta.items() if coeff < 0]
    witness = LaurentPoly.monomial(*negative[0]).to_t_string() if negative else None
    return PlanarityVerdict(
        verdict=Verdict.NON_PLANAR_CERTIFICATE if negative else Verdict.INCONCLUSIVE,
        delta=delta.to_t_string(),
        witness=witness,
        value_at_one=delta.evaluate_at_one(),
    )


# Engines


def _with_basepoint(d: MOYDiagram) -> MOYDiagram:
    return d if d.basepoint is not None else d.with_basepoint(legal_basepoint(d))


def cross_engine_check(d: MOYDiagram, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    """det = epsilon * <D|delta> with one sign epsilon shared by every state."""
    table = table or default_table()
    name = name or d.name or "diagram"

    def body() -> tuple[bool, str]:
        marked = _with_basepoint(d)
        rm = region_indices(marked, build_regions(marked))
        signs = {state_sign(state, rm, table) for state in iter_states(rm)}
        det, epsilon = determinant_bracket(marked, table=table)
        br = bracket(marked, table=table)
        if len(signs) > 1:
            return False, "state signs disagree"
        if signs and signs != {epsilon}:
            return False, f"state sign {signs.pop()} but epsilon {epsilon}"
        return det == br * epsilon, f"epsilon {epsilon}; {difference(det, br * epsilon)}"

    return _guard(f"engines/sign/{name}", "engines", "determinant equals signed state sum", {}, body)


def cross_pipeline_check(d: MOYDiagram, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    """Rewriting evaluator against the state-sum pipeline."""
    from ..rewrite import evaluate

    table = table or default_table()
    name = name or d.name or "diagram"

    def body() -> tuple[bool, str]:
        rewritten = evaluate(d, table)
        direct = diagram_value(d, table)
        return rewritten == direct, difference(rewritten, direct)

    return _guard(f"engines/rewrite/{name}", "engines", "rewrite evaluator equals state sum", {}, body)


def basepoint_covariance(
    d: MOYDiagram,
    first: Basepoint,
    second: Basepoint,
    table: Optional[CornerWeightTable] = None,
    name: Optional[str] = None,
) -> CheckResult:
    """|delta'| <D|delta> = |delta| <D|delta'>."""
    table = table or default_table()
    name = name or d.name or "diagram"

    def body() -> tuple[bool, str]:
        w1 = delta_weight(region_indices(d.with_basepoint(first), build_regions(d.with_basepoint(first))))
        w2 = delta_weight(region_indices(d.with_basepoint(second), build_regions(d.with_basepoint(second))))
        lhs = w2 * bracket(d, first, table)
        rhs = w1 * bracket(d, second, table)
        return lhs == rhs, difference(lhs, rhs)

    return _guard(f"moves/basepoint/{name}/{first.edge}-{second.edge}", "moves", "basepoint covariance", {}, body)


# Properties


def chirality(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> Optional[int]:
    """k with Delta(t) = t^k Delta(1/t) (k in quarter powers of t), or None when the diagram is chiral."""
    result = normalized_delta(d, table)
    return symmetry_shift(result.polynomial)


def chirality_check(d: MOYDiagram, expect_chiral: bool, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    name = name or d.name or "diagram"

    def body() -> tuple[bool, str]:
        shift = chirality(d, table)
        chiral = shift is None
        return chiral == expect_chiral, "chiral" if chiral else f"symmetric with shift q^{shift}"

    return _guard(f"properties/chirality/{name}", "properties", "chirality test", {}, body)


def nonvanishing_report(
    diagrams: Iterable[tuple[str, MOYDiagram]],
    table: Optional[CornerWeightTable] = None,
) -> Report:
    """Delta != 0 with non-negative coefficients and a mirror symmetry on planar members;
    chirality of the knotted trivalent ones."""
    table = table or default_table()
    report = Report(suite="properties")
    for name, d in diagrams:
        if not (d.is_connected and d.is_trivalent and d.has_positive_colors and d.vertices):
            continue
        if d.crossings or d.has_twists:

            def chiral(d=d) -> tuple[bool, str]:
                shift = chirality(d, table)
                return True, "chiral" if shift is None else f"symmetric with shift q^{shift}"

            report.results.append(_guard(f"properties/chirality/{name}", "properties", "chirality test", {}, chiral))
            continue

        def planar(d=d) -> tuple[bool, str]:
            result = normalized_delta(d, table)
            if not result.is_polynomial:
                return False, f"not a Laurent polynomial: {result.rational.to_t_string()}"
            delta = result.polynomial
            if delta.is_zero:
                return False, "vanishes"
            negative = [coeff for _, coeff in delta.items() if coeff < 0]
            if negative:
                return False, f"negative coefficient in {delta.to_t_string()}"
            if symmetry_shift(delta) is None:
                return False, f"no mirror symmetry: {delta.to_t_string()}"
            return True, delta.to_t_string()

        report.results.append(_guard(f"properties/nonvanishing/{name}", "properties", "non-vanishing", {}, planar))
    return report


def link_value(d: MOYDiagram, table: Optional[CornerWeightTable] = None) -> LaurentPoly:
    if not d.is_connected:
        return LaurentPoly()
    return link_alexander(d, table)


# t^(-1/2) - t^(1/2)
SKEIN_FACTOR = LaurentPoly.monomial(-2) - LaurentPoly.monomial(2)


def skein_check(d: MOYDiagram, crossing_id: str, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    """Delta(L+) - Delta(L-) = (t^(-1/2) - t^(1/2)) Delta(L0) at one crossing."""
    name = name or d.name or "link"

    def body() -> tuple[bool, str]:
        x = d.node_map[crossing_id]
        switched = d.switch_crossing(crossing_id)
        positive, negative = (d, switched) if x.sign is Sign.POSITIVE else (switched, d)
        lhs = link_value(positive, table) - link_value(negative, table)
        rhs = SKEIN_FACTOR * link_value(smooth_crossing(d, crossing_id), table)
        return lhs == rhs, difference(lhs, rhs)

    return _guard(f"properties/skein/{name}/{crossing_id}", "properties", "skein relation", {}, body)


LINK_VALUES = {
    "unknot": LaurentPoly.constant(1),
    "unlink2": LaurentPoly(),
    "trefoil": LaurentPoly({4: 1, 0: -1, -4: 1}),
    "hopf": LaurentPoly({2: -1, -2: 1}),
    "figure-eight": LaurentPoly({4: -1, 0: 3, -4: -1}),
    "cinquefoil": LaurentPoly({8: 1, 4: -1, 0: 1, -4: -1, -8: 1}),
}


def link_sanity(table: Optional[CornerWeightTable] = None) -> list[CheckResult]:
    """Known Alexander polynomials, and mirror / reversal symmetry of each."""
    named = corpus.named_diagrams()
    results = []
    for name, expected in LINK_VALUES.items():
        d = named[name]

        def value(d=d, expected=expected) -> tuple[bool, str]:
            got = link_value(d, table)
            return got == expected, difference(got, expected)

        def symmetric(d=d) -> tuple[bool, str]:
            base = link_value(d, table)
            mirrored = link_value(mirror(d), table)
            reversed_ = link_value(reverse(d), table)
            ok = mirrored == base.invert_variable() and reversed_ == base
            return ok, f"mirror {mirrored.to_t_string()}, reverse {reversed_.to_t_string()}"

        results.append(_guard(f"properties/link/{name}", "properties", "link Alexander polynomial", {}, value))
        results.append(_guard(f"properties/link-symmetry/{name}", "properties", "mirror and reversal", {}, symmetric))
    return results


# Fuzzing moves


def rii_fuzz(d: MOYDiagram, rng: random.Random, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    """Random RII finger: the regular value is unchanged."""
    name = name or d.name or "diagram"
    sites = list(rii_sites(d))
    if not sites:
        return CheckResult(id=f"moves/rii-fuzz/{name}", suite="moves", name="random RII", passed=True, detail="no site")
    finger, target = rng.choice(sites)
    over = rng.random() < 0.5

    def body() -> tuple[bool, str]:
        moved = insert_rii(d, finger, target, finger_over=over)
        before, after = regular_value(d, table), regular_value(moved, table)
        return before == after, difference(before, after)

    return _guard(f"moves/rii-fuzz/{name}/{finger[0]}-{target[0]}", "moves", "random RII", {}, body)


def twist_fuzz(d: MOYDiagram, rng: random.Random, table: Optional[CornerWeightTable] = None, name: Optional[str] = None) -> CheckResult:
    """Random half twist scales the invariant by t^(+-c/4); an opposite pair leaves it alone."""
    name = name or d.name or "diagram"
    edge = rng.choice(sorted(e.id for e in d.edges if e.color > 0))
    sign = rng.choice(list(Sign))

    def body() -> tuple[bool, str]:
        base = diagram_value(d, table)
        twisted, factor = insert_twist(d, edge, sign)
        single = diagram_value(twisted, table)
        pair = diagram_value(insert_twist_pair(d, edge, sign), table)
        ok = single == base * factor and pair == base
        return ok, f"single: {difference(single, base * factor)}; pair: {difference(pair, base)}"

    return _guard(f"moves/twist-fuzz/{name}/{edge}", "moves", "random half twist", {}, body)


# Suites


def _relation_tasks(table: CornerWeightTable, max_color: int = 3) -> list[Callable[[], CheckResult]]:
    tasks = []
    for rel_id in RELATIONS:
        for colors in legal_bindings(rel_id, max_color):
            tasks.append(lambda rel_id=rel_id, colors=colors: check_relation(rel_id, colors, table))
    return tasks


def _move_tasks(table: CornerWeightTable, seed: int) -> list[Callable[[], CheckResult]]:
    tasks: list[Callable[[], CheckResult]] = [lambda p=p: check_pair(p, table) for p in corpus.move_corpus()]
    rng = random.Random(seed)
    diagrams = [(n, d) for n, d in corpus.diagram_corpus(seed, random_count=6) if d.is_connected and len(d.crossings) <= 6]
    for name, d in diagrams:
        r = random.Random(rng.random())
        tasks.append(lambda d=d, name=name, r=r: rii_fuzz(d, r, table, name))
        if d.vertices:
            tasks.append(lambda d=d, name=name, r=r: twist_fuzz(d, r, table, name))
    marked = [(n, d, legal_basepoints(d)) for n, d in diagrams]
    marked = [m for m in marked if len(m[2]) >= 2]
    for _ in range(20):
        name, d, choices = rng.choice(marked)
        first, second = rng.sample(choices, 2)
        tasks.append(lambda d=d, first=first, second=second, name=name: basepoint_covariance(d, first, second, table, name))
    return tasks


def _property_tasks(table: CornerWeightTable, seed: int) -> list[Callable[[], CheckResult]]:
    tasks: list[Callable[[], CheckResult]] = [lambda: link_sanity(table)]
    planar = [(f"planar-{seed + k}", corpus.random_planar(seed + k)) for k in range(PLANAR_SAMPLES)]
    tasks.append(lambda: nonvanishing_report(planar, table).results)
    tasks.append(lambda: chirality_check(corpus.theta_51(), True, table, "theta_51"))

    def planarity(name: str, d: MOYDiagram, certified: bool) -> CheckResult:
        def body() -> tuple[bool, str]:
            verdict = planarity_obstruction(d, table)
            return verdict.certified == certified, f"{verdict.verdict.value} {verdict.witness or ''}".strip()

        return _guard(f"properties/planarity/{name}", "properties", "planarity obstruction", {}, body)

    tasks.append(lambda: planarity("theta_51", corpus.theta_51(), True))
    tasks.append(lambda: planarity("theta_trivial", corpus.theta_trivial(), False))

    rng = random.Random(seed)
    triples = 0
    while triples < 10:
        strands = rng.randint(2, 3)
        d = braid_closure(strands, corpus.random_braid_word(rng, strands, rng.randint(2, 6)), name="braid")
        if not d.crossings or not d.is_connected:
            continue
        x = rng.choice(sorted(c.id for c in d.crossings))
        tasks.append(lambda d=d, x=x, k=triples: skein_check(d, x, table, f"braid{k}"))
        triples += 1
    return tasks


def _engine_tasks(table: CornerWeightTable, seed: int) -> list[Callable[[], CheckResult]]:
    diagrams = [(n, d) for n, d in corpus.diagram_corpus(seed) if d.is_connected]
    tasks: list[Callable[[], CheckResult]] = [lambda n=n, d=d: cross_engine_check(d, table, n) for n, d in diagrams]
    for name, d in corpus.framed_trivalent(diagrams):
        tasks.append(lambda n=name, d=d: cross_pipeline_check(d, table, n))
    return tasks


def run_suite(name: str, table: Optional[CornerWeightTable] = None, jobs: int = 1, seed: int = 0) -> Report:
    """Run one suite (or 'all'); results are ordered by id whatever the job count."""
    table = table or default_table()
    names = SUITES if name == "all" else (name,)
    tasks: list[Callable] = []
    for suite in names:
        if suite == "relations":
            tasks += _relation_tasks(table)
        elif suite == "moves":
            tasks += _move_tasks(table, seed)
        elif suite == "properties":
            tasks += _property_tasks(table, seed)
        elif suite == "engines":
            tasks += _engine_tasks(table, seed)
        else:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or 'all'")
    logger.info("running %d checks in suite %s with %d job(s)", len(tasks), name, jobs)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(lambda task: task(), tasks))
    else:
        outputs = [task() for task in tasks]
    results: list[CheckResult] = []
    for out in outputs:
        results.extend(out if isinstance(out, list) else [out])
    report = Report(suite=name, results=sorted(results, key=lambda r: r.id))
    logger.info(report.summary())
    return report
