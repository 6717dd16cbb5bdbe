"""Both sides of the local relations (i)-(x), closed in a fixed context."""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping

from ..algebra import LaurentPoly, RationalFunc, quantum_int
from ..diagram.graph import MOYDiagram, Sign
from ..diagram.tangle import Tangle
from ..errors import IllegalColors


@dataclass
class RelationInstance:
    """lhs = constant + sum of coefficient * diagram over terms."""

    label: str
    lhs: MOYDiagram
    terms: list[tuple[RationalFunc, MOYDiagram]] = field(default_factory=list)
    constant: RationalFunc = field(default_factory=lambda: RationalFunc(0))


Builder = Callable[[Mapping[str, int]], list[RelationInstance]]


def _q(k: int) -> LaurentPoly:
    return quantum_int(k)


def _closed(bottom, *steps: Callable[[Tangle], None]) -> MOYDiagram:
    t = Tangle(bottom)
    for step in steps:
        step(t)
    return t.close()


def _ctx(i: int, j: int) -> Callable[[Tangle], None]:
    def close(t: Tangle) -> None:
        t.merge(0)
        t.split(0, i, j)

    return close


def circle_value(c: Mapping[str, int]) -> list[RelationInstance]:
    i = c["i"]
    out = []
    for clockwise in (True, False):

        def circle(t: Tangle, clockwise=clockwise) -> None:
            t.cup(0, i, left_up=clockwise)
            t.cap(0)

        out.append(
            RelationInstance(
                "clockwise" if clockwise else "counterclockwise",
                _closed([], circle),
                constant=RationalFunc(1, _q(i)),
            )
        )
    return out


def split_union(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j = c["i"], c["j"]

    def theta_and_circle(t: Tangle) -> None:
        t.split(0, i, j)
        t.merge(0)
        t.cup(1, i)
        t.cap(1)

    return [RelationInstance("theta with a circle", _closed([i + j], theta_and_circle))]


def half_twist(c: Mapping[str, int]) -> list[RelationInstance]:
    i = c["i"]
    plain = _closed([i])
    out = []
    for sign in Sign:

        def twisted(t: Tangle, sign=sign) -> None:
            t.twist(0, sign)

        factor = RationalFunc(LaurentPoly.monomial(sign.value_int * i))
        out.append(RelationInstance(f"{sign.value} half twist", _closed([i], twisted), [(factor, plain)]))
    return out


def crossing_resolution(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j = c["i"], c["j"]
    ctx = _ctx(i, j)

    def ladder(t: Tangle) -> None:
        if i <= j:
            t.split(1, j - i, i)
            t.merge(0)
        else:
            t.split(0, j, i - j)
            t.merge(1)

    def merge_split(t: Tangle) -> None:
        t.merge(0)
        t.split(0, j, i)

    out = []
    for sign in Sign:
        s = sign.value_int

        def crossing(t: Tangle, sign=sign) -> None:
            t.crossing(0, sign)

        c1 = RationalFunc(LaurentPoly.monomial(2 * s * (i + j), -1), _q(i) * _q(j))
        if i <= j:
            c2 = RationalFunc(LaurentPoly.monomial(2 * s * j), _q(i) * _q(i + j))
        else:
            c2 = RationalFunc(LaurentPoly.monomial(2 * s * i), _q(j) * _q(i + j))
        out.append(
            RelationInstance(
                f"{sign.value} crossing",
                _closed([i, j], crossing, ctx),
                [(c1, _closed([i, j], ladder, ctx)), (c2, _closed([i, j], merge_split, ctx))],
            )
        )
    return out


def bubble(c: Mapping[str, int]) -> list[RelationInstance]:
    """A color-i arc attached to a color-j strand on either side."""
    i, j = c["i"], c["j"]

    def right(t: Tangle) -> None:
        t.cup(1, i, left_up=True)
        t.merge(0)
        t.split(0, j, i)
        t.cap(1)

    def left(t: Tangle) -> None:
        t.cup(0, i, left_up=False)
        t.merge(1)
        t.split(1, i, j)
        t.cap(0)

    factor = RationalFunc(_q(j) * _q(i + j))
    plain = _closed([j])
    return [
        RelationInstance("right", _closed([j], right), [(factor, plain)]),
        RelationInstance("left", _closed([j], left), [(factor, plain)]),
    ]


def digon(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j = c["i"], c["j"]

    def split_merge(t: Tangle) -> None:
        t.split(0, i - j, j)
        t.merge(0)

    return [RelationInstance("digon", _closed([i], split_merge), [(RationalFunc(_q(i) ** 2), _closed([i]))])]


def opposite_digon(c: Mapping[str, int]) -> list[RelationInstance]:
    """Digon whose sides run against each other, on strands j up and i down."""
    i, j = c["i"], c["j"]
    bottom = [(j, True), (i, False)]

    def lhs(t: Tangle) -> None:
        t.split(0, (i, False), (i + j, True))
        t.merge(1)
        t.split(1, (i + j, True), (i, False))
        t.merge(0)

    def joined(t: Tangle) -> None:
        t.merge(0)
        t.split(0, j, (i, False))

    c1 = RationalFunc(_q(i + j) ** 3, _q(i))
    c2 = RationalFunc(_q(j) ** 2 * _q(i + j) ** 2)
    return [
        RelationInstance(
            "opposite digon",
            _closed(bottom, lhs),
            [(c1, _closed(bottom, joined)), (c2, _closed(bottom))],
        )
    ]


def associativity(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j, k = c["i"], c["j"], c["k"]
    factor = RationalFunc(_q(i + j), _q(j + k))

    def merge_twice(t: Tangle) -> None:
        t.merge(0)
        t.merge(0)

    def split_left_first(t: Tangle) -> None:
        t.split(0, i + j, k)
        t.split(0, i, j)

    def split_right_first(t: Tangle) -> None:
        t.split(0, i, j + k)
        t.split(1, j, k)

    def merge_right_first(t: Tangle) -> None:
        t.merge(1)
        t.merge(0)

    return [
        RelationInstance(
            "splits",
            _closed([i + j + k], split_left_first, merge_twice),
            [(factor, _closed([i + j + k], split_right_first, merge_twice))],
        ),
        RelationInstance(
            "merges",
            _closed([i, j, k], merge_twice, split_left_first),
            [(factor, _closed([i, j, k], merge_right_first, split_left_first))],
        ),
    ]


def square_switch(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j, k, l = c["i"], c["j"], c["k"], c["l"]
    ctx = _ctx(i, j)

    def square(t: Tangle) -> None:
        t.split(1, k, j - k)
        t.merge(0)
        t.split(0, i + k - l, l)
        t.merge(1)

    def h_shape(t: Tangle) -> None:
        t.merge(0)
        t.split(0, i + k - l, j + l - k)

    def rung(t: Tangle) -> None:
        t.split(1, k - l, j + l - k)
        t.merge(0)

    c1 = RationalFunc(_q(j) * _q(l) * _q(i + k), _q(i + j))
    c2 = RationalFunc(_q(i + k) * _q(j - k))
    return [
        RelationInstance(
            "square",
            _closed([i, j], square, ctx),
            [(c1, _closed([i, j], h_shape, ctx)), (c2, _closed([i, j], rung, ctx))],
        )
    ]


def zero_rung(c: Mapping[str, int]) -> list[RelationInstance]:
    i, j = c["i"], c["j"]
    ctx = _ctx(i, j)

    def rung(t: Tangle) -> None:
        t.split(1, 0, j)
        t.merge(0)

    return [
        RelationInstance(
            "zero rung",
            _closed([i, j], rung, ctx),
            [(RationalFunc(_q(i) * _q(j)), _closed([i, j], ctx))],
        )
    ]


@dataclass(frozen=True)
class Relation:
    id: str
    name: str
    colors: tuple[str, ...]
    condition: Callable[[Mapping[str, int]], bool]
    condition_text: str
    build: Builder


def _always(_: Mapping[str, int]) -> bool:
    return True


RELATIONS: dict[str, Relation] = {
    r.id: r
    for r in [
        Relation("i", "circle", ("i",), _always, "", circle_value),
        Relation("ii", "split union", ("i", "j"), _always, "", split_union),
        Relation("iii", "half twist", ("i",), _always, "", half_twist),
        Relation("iv", "crossing resolution", ("i", "j"), _always, "", crossing_resolution),
        Relation("v", "bubble", ("i", "j"), _always, "", bubble),
        Relation("vi", "digon", ("i", "j"), lambda c: c["i"] >= c["j"], "i >= j", digon),
        Relation("vii", "opposite digon", ("i", "j"), lambda c: c["i"] >= c["j"], "i >= j", opposite_digon),
        Relation("viii", "associativity", ("i", "j", "k"), _always, "", associativity),
        Relation(
            "ix",
            "square switch",
            ("i", "j", "k", "l"),
            lambda c: c["j"] >= c["k"] >= c["l"],
            "j >= k >= l",
            square_switch,
        ),
        Relation("x", "zero rung", ("i", "j"), _always, "", zero_rung),
    ]
}


def relation_instances(rel_id: str, colors: Mapping[str, int]) -> list[RelationInstance]:
    """Build every side of a relation; raises IllegalColors on bad bindings."""
    relation = RELATIONS.get(rel_id)
    if relation is None:
        raise IllegalColors(f"unknown relation {rel_id!r}; expected one of {', '.join(RELATIONS)}")
    missing = [name for name in relation.colors if name not in colors]
    if missing:
        raise IllegalColors(f"relation ({rel_id}) needs colors {', '.join(missing)}")
    bad = {name: colors[name] for name in relation.colors if colors[name] < 1}
    if bad:
        raise IllegalColors(f"relation ({rel_id}) needs positive colors, got {bad}")
    if not relation.condition(colors):
        raise IllegalColors(f"relation ({rel_id}) needs {relation.condition_text}, got {dict(colors)}")
    return relation.build(colors)


def legal_bindings(rel_id: str, max_color: int = 3) -> list[dict[str, int]]:
    """All bindings in 1..max_color that satisfy the relation's side condition."""
    relation = RELATIONS[rel_id]
    out = []
    for values in product(range(1, max_color + 1), repeat=len(relation.colors)):
        binding = dict(zip(relation.colors, values))
        if relation.condition(binding):
            out.append(binding)
    return out
