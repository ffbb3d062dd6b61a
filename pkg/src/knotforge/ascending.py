"""Descending diagrams and ascending-number bounds.

A based oriented diagram is a knot diagram with a basepoint edge and a travel
direction.  Walking from the basepoint, every crossing first met from below
has to be changed to make the diagram descending; the number of such changes,
minimised over basepoints and directions, is the diagram ascending number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import conway as cw
from .diagram import Diagram, DiagramError, MultiComponent, OrientedDiagram, orient


class InconsistentBounds(DiagramError):
    pass


@dataclass(frozen=True)
class BasedOrientedDiagram:
    oriented: OrientedDiagram
    basepoint: object          # an edge label of the diagram

    def __post_init__(self):
        if self.basepoint not in self.oriented.diagram.edges():
            raise DiagramError(f"basepoint {self.basepoint!r} is not an edge")

    @property
    def direction(self) -> int:
        return self.oriented.directions[0]


def based(d: Diagram, basepoint, direction: int = 1) -> BasedOrientedDiagram:
    return BasedOrientedDiagram(orient(d, (direction,) if d.num_components() == 1 else None),
                                basepoint)


def _route(bod: BasedOrientedDiagram) -> list:
    """Ports entered, starting with the one at the end of the basepoint edge."""
    od = bod.oriented
    walk = od.walks()[0]
    d = od.diagram
    for i, (c, s) in enumerate(walk):
        if d.crossings[c][s] == bod.basepoint:
            return walk[i:] + walk[:i]
    raise DiagramError(f"basepoint {bod.basepoint!r} not on the strand")


def wrong_crossings(bod: BasedOrientedDiagram) -> list:
    """Crossings first reached as under-crossings, in the order they are met."""
    d = bod.oriented.diagram
    if d.num_components() != 1:
        raise MultiComponent(f"diagram has {d.num_components()} components")
    seen = set()
    wrong = []
    for c, s in _route(bod):
        if c in seen:
            continue
        seen.add(c)
        if not d.is_over((c, s)):
            wrong.append(c)
    return wrong


def descending_change_count(bod: BasedOrientedDiagram) -> int:
    return len(wrong_crossings(bod))


def make_descending(bod: BasedOrientedDiagram) -> Diagram:
    wrong = set(wrong_crossings(bod))
    d = bod.oriented.diagram
    over = [1 - o if c in wrong else o for c, o in enumerate(d.over)]
    return Diagram(d.crossings, over, list(d.tags), d.free_loops, list(d.axes))


@dataclass(frozen=True)
class AscendingResult:
    a_d: int
    basepoint: object
    direction: int
    table: tuple = ()          # ((edge, direction, count), ...) when requested

    def witness(self) -> dict:
        return {"arc": self.basepoint, "orientation": self.direction}


def _as_diagram(d) -> Diagram:
    if isinstance(d, OrientedDiagram):
        return d.diagram
    if isinstance(d, Diagram):
        return d
    from .builder import build_diagram
    return build_diagram(d)


def diagram_ascending_number(d, all_starts: bool = False) -> AscendingResult:
    """Exact minimum over every basepoint edge and both directions.

    The witness is the lexicographically smallest (edge, direction) pair
    attaining the minimum, with direction +1 ordered before -1.
    """
    d = _as_diagram(d)
    if d.num_components() != 1:
        raise MultiComponent(f"diagram has {d.num_components()} components")
    if d.n == 0:
        raise DiagramError("0-crossing diagram has no basepoint edge")
    best = None
    rows = []
    for direction in (1, -1):
        od = orient(d, (direction,))
        walk = od.walks()[0]
        n = len(walk)
        for i in range(n):
            e = d.crossings[walk[i][0]][walk[i][1]]
            seen = set()
            count = 0
            for j in range(n):
                c, s = walk[(i + j) % n]
                if c in seen:
                    continue
                seen.add(c)
                if not d.is_over((c, s)):
                    count += 1
            rows.append((e, direction, count))
            key = (count, _order(e), -direction)
            if best is None or key < best[0]:
                best = (key, e, direction)
    (count, _, _), e, direction = best
    table = tuple(sorted(rows, key=lambda r: (_order(r[0]), -r[1]))) if all_starts else ()
    return AscendingResult(count, e, direction, table)


@dataclass(frozen=True)
class MinimalResult:
    """Best diagram ascending number over the flype orbit of a symbol's diagram."""
    a_d: int
    best: AscendingResult
    variant: int            # index in ``flype_variants`` order; 0 is the symbol's own diagram
    diagram: Diagram = field(compare=False, repr=False)
    variants: int = 0

    def witness(self) -> dict:
        return {**self.best.witness(), "variant": self.variant}


def minimal_ascending_number(symbol, limit: int = 20000) -> MinimalResult:
    """Minimum of the diagram ascending number over all diagrams reached from
    the symbol's minimal diagram by flypes (all minimal diagrams, for
    alternating knots)."""
    from .builder import flype_variants
    best = None
    count = 0
    for k, d in enumerate(flype_variants(symbol, limit)):
        count += 1
        res = diagram_ascending_number(d)
        if best is None or res.a_d < best[0].a_d:
            best = (res, k, d)
    res, k, d = best
    return MinimalResult(res.a_d, res, k, d, count)


def _order(e):
    return (0, e) if isinstance(e, int) else (1, repr(e))


# ------------------------------------------------------------------ bounds

def is_twist_knot(obj) -> bool:
    """True for the rational symbols ``p 2`` (p >= 1) and ``3``."""
    from .catalog import KnotRecord
    if isinstance(obj, KnotRecord):
        obj = obj.conway
    try:
        ast = cw.parse(obj) if isinstance(obj, str) else obj
    except cw.ConwayError:
        return False
    if isinstance(ast, cw.IntegerTangle):
        return ast.value in (3, -3)
    if isinstance(ast, cw.Sequence) and len(ast.children) == 2:
        a, b = (c.value for c in ast.children) if all(
            isinstance(c, cw.IntegerTangle) for c in ast.children) else (0, 0)
        return (a >= 1 and b == 2) or (a <= -1 and b == -2)
    return False


@dataclass(frozen=True)
class Witness:
    bound: str          # "lower" or "upper"
    value: int
    source: str
    detail: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class AscendingBounds:
    lower: int
    upper: int
    witnesses: tuple

    def __post_init__(self):
        if self.lower > self.upper:
            raise InconsistentBounds(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __str__(self) -> str:
        if self.exact:
            return str(self.lower)
        return "[" + ",".join(str(v) for v in range(self.lower, self.upper + 1)) + "]"

    def contains(self, lo: int, hi: int) -> bool:
        return self.lower <= lo and hi <= self.upper

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "text": str(self),
                "witnesses": [{"bound": w.bound, "value": w.value, "source": w.source, **w.detail}
                              for w in self.witnesses]}


def knot_ascending_bounds(record, extra_diagrams: Iterable = (), bridge: Optional[int] = None,
                          minimal: Optional[MinimalResult] = None) -> AscendingBounds:
    """Combine the unknotting, signature, twist-knot, bridge and crossing-number bounds
    with the diagram ascending numbers of the record's minimal diagrams (the
    flype orbit of its symbol) and of any extra diagrams of the same knot."""
    c = record.crossings
    from .builder import build_diagram
    from .signature import matrix_oracle_signature
    lows = [Witness("lower", record.u.lower, "unknotting number")]
    sigma = matrix_oracle_signature(build_diagram(record.conway)).sigma
    lows.append(Witness("lower", abs(sigma) // 2, "signature", {"sigma": sigma}))
    twist = is_twist_knot(record)
    if c > 0 and not twist:
        lows.append(Witness("lower", 2, "not a twist knot"))
    if bridge is not None:
        lows.append(Witness("lower", bridge - 1, "bridge number"))
    ups = [Witness("upper", (c - 1) // 2, "crossing number")]
    if twist:
        ups.append(Witness("upper", 1, "twist knot"))
    if minimal is None:
        minimal = minimal_ascending_number(record.conway)
    ups.append(Witness("upper", minimal.a_d, "minimal diagram",
                       {"diagram": record.conway, **minimal.witness()}))
    for k, extra in enumerate(extra_diagrams):
        label = extra if isinstance(extra, str) else f"extra[{k}]"
        res = diagram_ascending_number(extra)
        ups.append(Witness("upper", res.a_d, "extra diagram", {"diagram": label, **res.witness()}))
    lo = max(w.value for w in lows)
    hi = min(w.value for w in ups)
    keep = tuple(w for w in lows if w.value == lo) + tuple(w for w in ups if w.value == hi)
    return AscendingBounds(lo, hi, keep)
