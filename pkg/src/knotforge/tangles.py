"""Four-ended tangles and their closures.

Boundary points are named NW, NE, SW, SE.  A tangle stores crossings (slots
0..3 counter-clockwise, laid out as NE, NW, SW, SE for a horizontal twist) and
a symmetric ``links`` map between *points*: ports ``4*c + s`` and boundary
stubs (negative integers).  Joining two stubs splices their inner partners.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from .diagram import Diagram

NE, NW, SW, SE = "NE", "NW", "SW", "SE"
BOUNDARY = (NE, NW, SW, SE)

# Over-strand parity of a positive crossing inside a horizontal twist.  With
# slots NE=0, NW=1, SW=2, SE=3 the NW-SE strand passes over, which makes the
# numerator closure of [3] the right-handed trefoil.
POSITIVE_OVER = 1

_stub_ids = count(1)


def _new_stub() -> int:
    return -next(_stub_ids)


@dataclass
class Tangle:
    over: list = field(default_factory=list)
    tags: list = field(default_factory=list)
    links: dict = field(default_factory=dict)
    boundary: dict = field(default_factory=dict)
    free_loops: int = 0
    axes: list = field(default_factory=list)   # corner parity holding the twist's bigons

    @property
    def n(self) -> int:
        return len(self.over)

    def copy(self) -> "Tangle":
        return Tangle(list(self.over), list(self.tags), dict(self.links),
                      dict(self.boundary), self.free_loops, list(self.axes))

    def shifted(self, k: int) -> "Tangle":
        """Renumber crossings by +k and give the stubs fresh ids."""
        stub_map = {p: _new_stub() for p in self.links if p < 0}

        def f(p):
            return stub_map[p] if p < 0 else p + 4 * k

        links = {f(p): f(q) for p, q in self.links.items()}
        boundary = {name: stub_map[p] for name, p in self.boundary.items()}
        return Tangle(list(self.over), list(self.tags), links, boundary, self.free_loops,
                      list(self.axes))


def _link(links: dict, a: int, b: int) -> None:
    links[a] = b
    links[b] = a


def _join(t: Tangle, a: int, b: int) -> None:
    """Glue boundary stubs ``a`` and ``b`` of ``t`` and discard them."""
    x = t.links.pop(a)
    y = t.links.pop(b)
    if x == b:
        t.free_loops += 1
        return
    _link(t.links, x, y)


def integer_tangle(k: int, tag=None) -> Tangle:
    """Horizontal twist with ``|k|`` crossings; ``[0]`` joins NW-NE and SW-SE."""
    t = Tangle()
    if k == 0:
        a, b, c, d = (_new_stub() for _ in range(4))
        _link(t.links, a, b)
        _link(t.links, c, d)
        t.boundary = {NW: a, NE: b, SW: c, SE: d}
        return t
    over = POSITIVE_OVER if k > 0 else 1 - POSITIVE_OVER
    m = abs(k)
    t.over = [over] * m
    t.tags = [(tag, i) for i in range(m)]
    t.axes = [1] * m      # bigons sit in the east and west corners (1 and 3)
    for i in range(m - 1):
        _link(t.links, 4 * i + 0, 4 * (i + 1) + 1)
        _link(t.links, 4 * i + 3, 4 * (i + 1) + 2)
    names = {NW: 4 * 0 + 1, SW: 4 * 0 + 2, NE: 4 * (m - 1) + 0, SE: 4 * (m - 1) + 3}
    for name, port in names.items():
        stub = _new_stub()
        _link(t.links, stub, port)
        t.boundary[name] = stub
    return t


def tangle_sum(t: Tangle, u: Tangle) -> Tangle:
    """Place ``u`` to the right of ``t``: t.NE-u.NW and t.SE-u.SW."""
    a = t.copy()
    b = u.shifted(t.n)
    res = Tangle(a.over + b.over, a.tags + b.tags, {**a.links, **b.links}, {},
                 a.free_loops + b.free_loops, a.axes + b.axes)
    _join(res, a.boundary[NE], b.boundary[NW])
    _join(res, a.boundary[SE], b.boundary[SW])
    res.boundary = {NW: a.boundary[NW], SW: a.boundary[SW],
                    NE: b.boundary[NE], SE: b.boundary[SE]}
    return res


def _remap_ports(t: Tangle, slot_map) -> Tangle:
    def f(p):
        if p < 0:
            return p
        c, s = divmod(p, 4)
        return 4 * c + slot_map(s)
    links = {f(p): f(q) for p, q in t.links.items()}
    # corner k lies between slots k and k+1; it moves to corner slot_map(k+1)
    axes = [slot_map(a + 1) % 2 for a in t.axes]
    return Tangle(list(t.over), list(t.tags), links, dict(t.boundary), t.free_loops, axes)


def reflect(t: Tangle) -> Tangle:
    """Planar reflection in the NW-SE diagonal (the ``t 0`` operation, fraction 1/F)."""
    # Slot s -> 2 - s reverses the cyclic order and keeps parities.
    r = _remap_ports(t, lambda s: (2 - s) % 4)
    b = t.boundary
    r.boundary = {NW: b[NW], SE: b[SE], NE: b[SW], SW: b[NE]}
    return r


def flip(t: Tangle) -> Tangle:
    """Turn the tangle over about its horizontal axis (an isotopy of the tangle).

    The picture is reflected top to bottom and every crossing changes height;
    relabelling slots s -> 3 - s keeps them counter-clockwise and leaves the
    over parity unchanged.
    """
    r = _remap_ports(t, lambda s: (3 - s) % 4)
    b = t.boundary
    r.boundary = {NW: b[SW], SW: b[NW], NE: b[SE], SE: b[NE]}
    return r


def rotate(t: Tangle, quarter_turns: int = 1) -> Tangle:
    """Rotate the picture counter-clockwise by 90 degrees per quarter turn."""
    r = t.copy()
    for _ in range(quarter_turns % 4):
        b = r.boundary
        r.boundary = {NW: b[NE], SW: b[NW], SE: b[SW], NE: b[SE]}
    return r


def mirror(t: Tangle) -> Tangle:
    r = t.copy()
    r.over = [1 - o for o in r.over]
    return r


def numerator(t: Tangle) -> Diagram:
    """Closure joining NW-NE and SW-SE."""
    r = t.copy()
    _join(r, r.boundary[NW], r.boundary[NE])
    _join(r, r.boundary[SW], r.boundary[SE])
    r.boundary = {}
    return to_diagram(r)


def denominator(t: Tangle) -> Diagram:
    r = t.copy()
    _join(r, r.boundary[NW], r.boundary[SW])
    _join(r, r.boundary[NE], r.boundary[SE])
    r.boundary = {}
    return to_diagram(r)


def to_diagram(t: Tangle) -> Diagram:
    """Convert a tangle with no boundary left into a Diagram."""
    if t.boundary or any(p < 0 for p in t.links):
        raise ValueError("tangle still has open ends")
    edge_of: dict = {}
    next_edge = 0
    for p in range(4 * t.n):
        if p in edge_of:
            continue
        q = t.links[p]
        edge_of[p] = edge_of[q] = next_edge
        next_edge += 1
    crossings = [tuple(edge_of[4 * c + s] for s in range(4)) for c in range(t.n)]
    return Diagram(crossings, list(t.over), list(t.tags), t.free_loops, list(t.axes))
