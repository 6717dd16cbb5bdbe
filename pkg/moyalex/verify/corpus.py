"""Named diagrams, random generators and the move-pair corpus."""

import logging
import random
from enum import Enum
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict

from ..algebra import ONE, LaurentPoly
from ..config import DATA_DIR
from ..diagram.graph import MOYDiagram, Sign
from ..diagram.io import load
from ..diagram.tangle import Tangle, braid_closure
from ..rewrite.formal import canonical_form

logger = logging.getLogger(__name__)

COLORS = (1, 2)


class Move(str, Enum):
    R0 = "R0"  # planar isotopy
    RI = "RI"
    RII = "RII"
    RIII = "RIII"
    RIV = "RIV"
    RV = "RV"
    TWIST = "twist"  # framed moves on half twists and kinks
    CROSSING_CHANGE = "crossing-change"


# Regular moves compare |delta|^-1 <D|delta>, framed moves compare the
# normalized invariant, crossing changes compare its value at t = 1.
REGULAR_MOVES = {Move.R0, Move.RI, Move.RII, Move.RIII, Move.RIV, Move.RV}


class CorpusPair(BaseModel):
    """Diagrams related by one move, with the factor that relates their values."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    move: Move
    before: MOYDiagram
    after: MOYDiagram
    expected_factor: LaurentPoly = ONE
    colors: dict[str, int] = {}


def _closed(bottom, build: Callable[[Tangle], None], name: Optional[str] = None) -> MOYDiagram:
    t = Tangle(bottom, name=name)
    build(t)
    return t.close()


def _theta_context(t: Tangle, i: int, j: int) -> None:
    t.merge(0)
    t.split(0, i, j)


# Named diagrams


def circle(i: int = 1, clockwise: bool = True) -> MOYDiagram:
    t = Tangle([], name=f"circle({i})")
    t.cup(0, i, left_up=clockwise)
    t.cap(0)
    return t.close()


def unlink(components: int = 2, color: int = 1) -> MOYDiagram:
    return braid_closure(components, [], color, name=f"unlink{components}")


def theta(i: int, j: int) -> MOYDiagram:
    """Planar theta-curve with edge colors i, j and i+j."""

    def build(t: Tangle) -> None:
        t.split(0, i, j)
        t.merge(0)

    return _closed([i + j], build, f"theta({i},{j})")


def twisted_theta(i: int, j: int, word: list[int]) -> MOYDiagram:
    """Theta-curve whose i and j edges braid around each other along the word (+1 / -1)."""

    def build(t: Tangle) -> None:
        for s in word:
            t.crossing(0, Sign.POSITIVE if s > 0 else Sign.NEGATIVE)
        left, right = t.strands[0].color, t.strands[1].color
        t.merge(0)
        t.split(0, i, j)
        if (left, right) != (i, j):
            raise ValueError("the word must return the strands to their starting order")

    return _closed([i, j], build, f"theta({i},{j}){''.join('+' if s > 0 else '-' for s in word)}")


def theta_51(i: int = 1, j: int = 1) -> MOYDiagram:
    return load(DATA_DIR / "theta_51.json", {"i": i, "j": j})


def theta_trivial(i: int = 1, j: int = 1) -> MOYDiagram:
    return load(DATA_DIR / "theta_trivial.json", {"i": i, "j": j})


def named_diagrams() -> dict[str, MOYDiagram]:
    return {
        "unknot": braid_closure(1, [], name="unknot"),
        "unlink2": unlink(2),
        "hopf": braid_closure(2, [1, 1], name="hopf"),
        "trefoil": braid_closure(2, [1, 1, 1], name="trefoil"),
        "figure-eight": braid_closure(3, [1, -2, 1, -2], name="figure-eight"),
        "cinquefoil": braid_closure(2, [1] * 5, name="cinquefoil"),
        "theta_trivial": theta_trivial(),
        "theta_51": theta_51(),
    }


# Random diagrams


def random_braid_word(rng: random.Random, strands: int, length: int) -> list[int]:
    return [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]


def random_planar(seed: int, max_color: int = 3, steps: int = 8) -> MOYDiagram:
    """Connected planar trivalent diagram with colors in 1..max_color.

    Cups, splits and merges are drawn at random; the open strands are then
    closed greedily by caps and merges. Draws that come out disconnected,
    without vertices or with a larger color are discarded.
    """
    rng = random.Random(seed)
    attempt = 0
    while True:
        attempt += 1
        t = Tangle([], name=f"planar-{seed}")
        t.cup(0, rng.randint(1, max_color), left_up=rng.random() < 0.5)
        for _ in range(steps):
            _random_slice(rng, t, max_color)
        while t.strands:
            _closing_slice(t, max_color)
        d = t.close()
        if d.is_connected and d.vertices and d.max_color <= max_color:
            logger.debug("random planar diagram %d after %d attempts", seed, attempt)
            return d


def _random_slice(rng: random.Random, t: Tangle, max_color: int) -> None:
    strands = t.strands
    options = ["cup"]
    splittable = [k for k, s in enumerate(strands) if s.color >= 2]
    mergeable = [
        k
        for k in range(len(strands) - 1)
        if 0 < abs(strands[k].flow + strands[k + 1].flow) <= max_color
    ]
    if splittable:
        options += ["split", "split"]
    if mergeable:
        options += ["merge", "merge"]
    op = rng.choice(options)
    if op == "cup":
        t.cup(rng.randint(0, len(strands)), rng.randint(1, max_color), left_up=rng.random() < 0.5)
    elif op == "split":
        k = rng.choice(splittable)
        s = strands[k]
        left = rng.randint(1, s.color - 1)
        t.split(k, (left, s.up), (s.color - left, s.up))
    else:
        t.merge(rng.choice(mergeable))


def _closing_slice(t: Tangle, max_color: int) -> None:
    strands = t.strands
    for k in range(len(strands) - 1):
        a, b = strands[k], strands[k + 1]
        if a.color == b.color and a.up != b.up:
            t.cap(k)
            return
    sums = [abs(strands[k].flow + strands[k + 1].flow) for k in range(len(strands) - 1)]
    small = [k for k, total in enumerate(sums) if 0 < total <= max_color]
    t.merge(small[0] if small else 0)


def diagram_corpus(seed: int = 0, random_count: int = 10) -> list[tuple[str, MOYDiagram]]:
    """Named diagrams, braid closures up to 8 crossings, knotted and random planar thetas."""
    rng = random.Random(seed)
    corpus = list(named_diagrams().items())
    for i, j in [(1, 2), (2, 3)]:
        corpus.append((f"theta_51({i},{j})", theta_51(i, j)))
    corpus.append(("theta(1,2)", theta(1, 2)))
    corpus.append(("theta(2,1)", theta(2, 1)))
    for word in ([1, 1], [1, 1, 1, 1], [-1, -1], [1, -1, 1, 1]):
        corpus.append((f"twisted-theta(1,1){word}", twisted_theta(1, 1, word)))
    corpus.append(("twisted-theta(1,2)[1,1]", twisted_theta(1, 2, [1, 1])))
    for k in range(8):
        strands = rng.randint(2, 4)
        word = random_braid_word(rng, strands, rng.randint(2, 8))
        corpus.append((f"braid{strands}{word}", braid_closure(strands, word, name=f"braid{strands}")))
    for k in range(random_count):
        corpus.append((f"planar-{seed + k}", random_planar(seed + k)))
    return corpus


def framed_trivalent(corpus: list[tuple[str, MOYDiagram]]) -> list[tuple[str, MOYDiagram]]:
    """Members that are connected, trivalent and positive-colored."""
    return [(name, d) for name, d in corpus if d.is_connected and d.is_trivalent and d.has_positive_colors]


# Move pairs


def kinked(i: int, sign: Sign, side: str, theta_context: Optional[int] = None) -> MOYDiagram:
    """A strand of color i with one kink; with theta_context=j it is the i edge of a theta."""

    def build(t: Tangle) -> None:
        if side == "right":
            t.cup(1, i, left_up=True)
            t.crossing(0, sign)
            t.cap(1)
        elif side == "left":
            t.cup(0, i, left_up=False)
            t.crossing(1, sign)
            t.cap(0)
        else:
            raise ValueError(f"kink side must be 'left' or 'right', not {side!r}")
        if theta_context is not None:
            _theta_context(t, i, theta_context)

    bottom = [i] if theta_context is None else [i, theta_context]
    return _closed(bottom, build, f"kink({i},{sign.value},{side})")


def _strand(i: int, theta_context: Optional[int] = None, twists: tuple[Sign, ...] = ()) -> MOYDiagram:
    def build(t: Tangle) -> None:
        for s in twists:
            t.twist(0, s)
        if theta_context is not None:
            _theta_context(t, i, theta_context)

    bottom = [i] if theta_context is None else [i, theta_context]
    return _closed(bottom, build)


def kink_pair(i: int, sign: Sign, side: str, theta_context: Optional[int] = None) -> CorpusPair:
    """Kinked strand against the plain one; the factor is 1, t^i, t^-i or 1."""
    from ..statesum.calibration import KINK_FACTORS

    return CorpusPair(
        name=f"RI {sign.value}{side} i={i}" + (f" theta j={theta_context}" if theta_context else ""),
        move=Move.RI,
        before=kinked(i, sign, side, theta_context),
        after=_strand(i, theta_context),
        expected_factor=LaurentPoly.t_power(KINK_FACTORS[(sign, side)] * i),
        colors={"i": i},
    )


def rii_pair(i: int, j: int, sign: Sign) -> CorpusPair:
    def before(t: Tangle) -> None:
        t.crossing(0, sign)
        t.crossing(0, sign.flipped())
        _theta_context(t, i, j)

    def after(t: Tangle) -> None:
        _theta_context(t, i, j)

    return CorpusPair(
        name=f"RII {sign.value} i={i} j={j}",
        move=Move.RII,
        before=_closed([i, j], before),
        after=_closed([i, j], after),
        colors={"i": i, "j": j},
    )


def riii_pair(i: int, j: int, k: int, sign: Sign) -> CorpusPair:
    def closing(t: Tangle) -> None:
        t.merge(0)
        t.merge(0)
        t.split(0, i, j + k)
        t.split(1, j, k)

    def braid(positions: list[int]) -> Callable[[Tangle], None]:
        def build(t: Tangle) -> None:
            for p in positions:
                t.crossing(p, sign)
            closing(t)

        return build

    return CorpusPair(
        name=f"RIII {sign.value} i={i} j={j} k={k}",
        move=Move.RIII,
        before=_closed([i, j, k], braid([0, 1, 0])),
        after=_closed([i, j, k], braid([1, 0, 1])),
        colors={"i": i, "j": j, "k": k},
    )


def riv_pair(i: int, j: int, k: int, sign: Sign, strand_left: bool = True) -> CorpusPair:
    """A strand of color k slides across the split of an i+j strand.

    With strand_left the k strand starts on the left, otherwise on the right.
    """
    m = i + j

    if strand_left:

        def before(t: Tangle) -> None:
            t.crossing(0, sign)
            t.split(0, i, j)
            t.merge(0)
            t.crossing(0, sign)

        def after(t: Tangle) -> None:
            t.split(1, i, j)
            t.crossing(0, sign)
            t.crossing(1, sign)
            t.merge(0)
            t.crossing(0, sign)

        bottom = [k, m]
    else:

        def before(t: Tangle) -> None:
            t.crossing(0, sign)
            t.split(1, i, j)
            t.merge(1)
            t.crossing(0, sign)

        def after(t: Tangle) -> None:
            t.split(0, i, j)
            t.crossing(1, sign)
            t.crossing(0, sign)
            t.merge(1)
            t.crossing(0, sign)

        bottom = [m, k]
    return CorpusPair(
        name=f"RIV {sign.value} i={i} j={j} k={k} {'left' if strand_left else 'right'}",
        move=Move.RIV,
        before=_closed(bottom, before),
        after=_closed(bottom, after),
        colors={"i": i, "j": j, "k": k},
    )


def rv_pair(i: int, j: int, sign: Sign, at_split: bool = True) -> CorpusPair:
    """Flip a vertex: its two thin edges cross right next to it, or do not."""
    if at_split:

        def before(t: Tangle) -> None:
            t.split(0, i, j)
            t.crossing(0, sign)
            t.merge(0)

        def after(t: Tangle) -> None:
            t.split(0, j, i)
            t.merge(0)

        bottom = [i + j]
    else:

        def before(t: Tangle) -> None:
            t.crossing(0, sign)
            t.merge(0)
            t.split(0, i, j)

        def after(t: Tangle) -> None:
            t.merge(0)
            t.split(0, i, j)

        bottom = [i, j]
    return CorpusPair(
        name=f"RV {sign.value} i={i} j={j} {'split' if at_split else 'merge'}",
        move=Move.RV,
        before=_closed(bottom, before),
        after=_closed(bottom, after),
        colors={"i": i, "j": j},
    )


def kink_twist_pair(i: int, j: int, sign: Sign, side: str) -> CorpusPair:
    """A kink is two half twists of its sign."""
    return CorpusPair(
        name=f"kink-twist {sign.value}{side} i={i} j={j}",
        move=Move.TWIST,
        before=kinked(i, sign, side, theta_context=j),
        after=_strand(i, j, twists=(sign, sign)),
        colors={"i": i, "j": j},
    )


def twist_cancel_pair(i: int, j: int) -> CorpusPair:
    return CorpusPair(
        name=f"twist-cancel i={i} j={j}",
        move=Move.TWIST,
        before=_strand(i, j, twists=(Sign.POSITIVE, Sign.NEGATIVE)),
        after=_strand(i, j),
        colors={"i": i, "j": j},
    )


def r0_pair(name: str, d: MOYDiagram) -> CorpusPair:
    """Same diagram under new ids and rotation starting points."""
    return CorpusPair(name=f"R0 {name}", move=Move.R0, before=d, after=canonical_form(d))


def crossing_change_pair(name: str, d: MOYDiagram, crossing_id: str) -> CorpusPair:
    return CorpusPair(
        name=f"crossing-change {name} {crossing_id}",
        move=Move.CROSSING_CHANGE,
        before=d,
        after=d.switch_crossing(crossing_id),
    )


def move_corpus() -> list[CorpusPair]:
    """At least two pairs for every move type."""
    pairs: list[CorpusPair] = []
    for i in COLORS:
        for sign in Sign:
            for side in ("right", "left"):
                pairs.append(kink_pair(i, sign, side))
                pairs.append(kink_pair(i, sign, side, theta_context=1))
    for sign in Sign:
        for i in COLORS:
            for j in COLORS:
                pairs.append(rii_pair(i, j, sign))
                pairs.append(rv_pair(i, j, sign, at_split=True))
                pairs.append(rv_pair(i, j, sign, at_split=False))
                pairs.append(kink_twist_pair(i, j, sign, "right"))
                pairs.append(kink_twist_pair(i, j, sign, "left"))
        pairs.append(riii_pair(1, 1, 1, sign))
        pairs.append(riii_pair(1, 2, 1, sign))
        pairs.append(riv_pair(1, 1, 1, sign))
        pairs.append(riv_pair(1, 2, 1, sign, strand_left=False))
    pairs.append(twist_cancel_pair(1, 1))
    pairs.append(twist_cancel_pair(2, 1))
    for name in ("trefoil", "theta_51"):
        d = named_diagrams()[name]
        pairs.append(r0_pair(name, d))
        for x in sorted(d.crossings, key=lambda x: x.id)[:2]:
            pairs.append(crossing_change_pair(name, d, x.id))
    return pairs
