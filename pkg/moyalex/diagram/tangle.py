"""Slice-by-slice construction of closed diagrams.

Strands are read left to right along a horizontal line that moves upward.
Each operation replaces a few adjacent strands; ``close`` joins the top
strands to the bottom ones around the right-hand side.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .editor import DiagramEditor
from .graph import Basepoint, HalfEdge, IN, MOYDiagram, OUT, Side, Sign

StrandSpec = Union[int, tuple[int, bool]]


@dataclass
class Strand:
    color: int
    up: bool
    edge: str

    @property
    def flow(self) -> int:
        return self.color if self.up else -self.color


def _spec(spec: StrandSpec) -> tuple[int, bool]:
    if isinstance(spec, int):
        return spec, True
    color, up = spec
    return color, up


class Tangle:
    """Builder for oriented diagrams.

    >>> t = Tangle([1, 1])
    >>> x = t.crossing(0, Sign.POSITIVE)
    >>> d = t.close("hopf-like")
    """

    def __init__(self, bottom: Sequence[StrandSpec] = (), name: Optional[str] = None):
        self.name = name
        self.editor = DiagramEditor()
        self.strands: list[Strand] = []
        for spec in bottom:
            color, up = _spec(spec)
            self.strands.append(Strand(color, up, self.editor.new_edge(color)))
        self.bottom = list(self.strands)
        self._levels: list[list[tuple[str, bool]]] = []
        self._snapshot()

    def _snapshot(self) -> None:
        if self.strands:
            self._levels.append([(s.edge, s.up) for s in self.strands])

    def _check(self, pos: int, count: int) -> list[Strand]:
        if pos < 0 or pos + count > len(self.strands):
            raise IndexError(f"positions {pos}..{pos + count - 1} out of range for {len(self.strands)} strands")
        return self.strands[pos : pos + count]

    def _node(self, pos: int, count: int, above: Sequence[tuple[int, bool]], over_index: Optional[int] = None) -> str:
        below = self._check(pos, count)
        below_refs = [HalfEdge(s.edge, IN if s.up else OUT) for s in below]
        new = [Strand(color, up, self.editor.new_edge(color)) for color, up in above]
        above_refs = [HalfEdge(s.edge, OUT if s.up else IN) for s in new]
        rotation = below_refs + above_refs[::-1]
        if over_index is None:
            node_id = self.editor.add_vertex(rotation)
        else:
            node_id = self.editor.add_crossing(rotation, below_refs[over_index])
        self.strands[pos : pos + count] = new
        self._snapshot()
        return node_id

    # Slices

    def crossing(self, pos: int, sign: Union[Sign, bool] = Sign.POSITIVE) -> str:
        """Cross strands pos and pos+1; both must run upward."""
        a, b = self._check(pos, 2)
        if not (a.up and b.up):
            raise ValueError("crossings are built on upward strands; reverse the result for other orientations")
        positive = sign is True or sign is Sign.POSITIVE
        return self._node(pos, 2, [(b.color, True), (a.color, True)], over_index=0 if positive else 1)

    def split(self, pos: int, left: StrandSpec, right: StrandSpec) -> str:
        left_spec, right_spec = _spec(left), _spec(right)
        (strand,) = self._check(pos, 1)
        flow = sum(c if up else -c for c, up in (left_spec, right_spec))
        if flow != strand.flow:
            raise ValueError(f"split at {pos} does not conserve flow ({strand.flow} -> {flow})")
        return self._node(pos, 1, [left_spec, right_spec])

    def merge(self, pos: int) -> str:
        a, b = self._check(pos, 2)
        flow = a.flow + b.flow
        return self._node(pos, 2, [(abs(flow), flow >= 0)])

    def cup(self, pos: int, color: int, left_up: bool = True) -> str:
        """Open a new arc at pos; the left leg runs upward when left_up."""
        if pos < 0 or pos > len(self.strands):
            raise IndexError(f"cup position {pos} out of range")
        edge = self.editor.new_edge(color)
        self.strands[pos:pos] = [Strand(color, left_up, edge), Strand(color, not left_up, edge)]
        self._snapshot()
        return edge

    def cap(self, pos: int) -> None:
        a, b = self._check(pos, 2)
        if a.up == b.up or a.color != b.color:
            raise ValueError(f"cannot cap strands {pos} and {pos + 1}")
        if a.up:
            self.editor.join(a.edge, b.edge)
        else:
            self.editor.join(b.edge, a.edge)
        del self.strands[pos : pos + 2]

    def twist(self, pos: int, sign: Sign = Sign.POSITIVE) -> None:
        (strand,) = self._check(pos, 1)
        self.editor.add_twist(strand.edge, sign)

    def mark(self, pos: int) -> None:
        """Put the basepoint on strand pos."""
        (strand,) = self._check(pos, 1)
        self.editor.basepoint = Basepoint(strand.edge)

    # Closure

    def close(self, name: Optional[str] = None) -> MOYDiagram:
        if len(self.strands) != len(self.bottom):
            raise ValueError(f"closure needs {len(self.bottom)} strands, have {len(self.strands)}")
        for top, bottom in zip(self.strands, self.bottom):
            if top.color != bottom.color or top.up != bottom.up:
                raise ValueError("top and bottom strands do not match")
            if top.up:
                self.editor.join(top.edge, bottom.edge)
            else:
                self.editor.join(bottom.edge, top.edge)
        self.strands = []
        draft = self.editor.finish(name or self.name, outer=())
        return self.editor.finish(name or self.name, outer=self._outer(draft))

    def _outer(self, draft: MOYDiagram) -> list[Side]:
        # Left of a component's leftmost strand at its lowest level is unbounded for it.
        resolve = self.editor.resolve
        found: dict[int, Side] = {}
        for level in self._levels:
            for edge, up in level:
                edge = resolve(edge)
                if edge not in draft.edge_map:
                    continue
                comp = draft.component_of(edge)
                if comp not in found:
                    found[comp] = Side(edge, "left" if up else "right")
            if len(found) == len(draft.components):
                break
        return [found[k] for k in sorted(found)]


def braid_closure(strands: int, word: Sequence[int], color: int = 1, name: Optional[str] = None) -> MOYDiagram:
    """Closure of a braid word; generator k > 0 is a positive crossing of strands k and k+1."""
    t = Tangle([color] * strands, name=name)
    for g in word:
        t.crossing(abs(g) - 1, Sign.POSITIVE if g > 0 else Sign.NEGATIVE)
    return t.close()
