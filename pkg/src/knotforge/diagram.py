"""Planar link diagrams as 4-valent maps.

A crossing is four edge labels in counter-clockwise order plus an ``over``
parity: slots ``over`` and ``over + 2`` carry the over-strand.  Every edge label
appears exactly twice.  A *port* is a pair ``(crossing, slot)``; the
combinatorial map is given by ``partner`` (the other end of the edge) and the
rotation ``(c, s) -> (c, s + 1)``.  Faces are orbits of rotation after partner.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

Port = tuple  # (crossing, slot)


class DiagramError(ValueError):
    pass


class MultiComponent(DiagramError):
    pass


@dataclass
class Diagram:
    crossings: list                 # each a tuple of 4 edge labels, ccw
    over: list                      # parity of the over-strand slots, per crossing
    tags: list = field(default_factory=list)
    free_loops: int = 0
    axes: list = field(default_factory=list)    # per crossing: corner parity of its twist, or None

    def __post_init__(self):
        self.crossings = [tuple(c) for c in self.crossings]
        self.over = [int(o) & 1 for o in self.over]
        if len(self.over) != len(self.crossings):
            raise DiagramError("one over-parity per crossing required")
        if not self.tags:
            self.tags = [None] * len(self.crossings)
        if not self.axes:
            self.axes = [None] * len(self.crossings)
        seen: dict = {}
        for c, edges in enumerate(self.crossings):
            if len(edges) != 4:
                raise DiagramError(f"crossing {c} is not 4-valent")
            for s, e in enumerate(edges):
                seen.setdefault(e, []).append((c, s))
        for e, ports in seen.items():
            if len(ports) != 2:
                raise DiagramError(f"edge {e!r} occurs {len(ports)} times")
        self._ends = seen
        self._cache: dict = {}

    # ------------------------------------------------------------ map basics
    @property
    def n(self) -> int:
        return len(self.crossings)

    def edges(self) -> list:
        return sorted(self._ends, key=_edge_key)

    def ends(self, e) -> list:
        return self._ends[e]

    def partner(self, port: Port) -> Port:
        c, s = port
        a, b = self._ends[self.crossings[c][s]]
        if a == (c, s):
            return b
        return a

    def is_over(self, port: Port) -> bool:
        c, s = port
        return s % 2 == self.over[c]

    def faces(self) -> list:
        """Faces as lists of darts; the face left of the walk."""
        if "faces" not in self._cache:
            seen = set()
            faces = []
            for c in range(self.n):
                for s in range(4):
                    d = (c, s)
                    if d in seen:
                        continue
                    orbit = []
                    while d not in seen:
                        seen.add(d)
                        orbit.append(d)
                        pc, ps = self.partner(d)
                        d = (pc, (ps + 1) % 4)
                    faces.append(orbit)
            self._cache["faces"] = faces
        return self._cache["faces"]

    def face_index(self) -> dict:
        if "face_index" not in self._cache:
            idx = {}
            for f, orbit in enumerate(self.faces()):
                for d in orbit:
                    idx[d] = f
            self._cache["face_index"] = idx
        return self._cache["face_index"]

    def corner_face(self, c: int, k: int) -> int:
        """Face in the corner between slots ``k`` and ``k + 1`` of crossing ``c``."""
        return self.face_index()[(c, (k + 1) % 4)]

    def connected_components(self) -> int:
        if self.n == 0:
            return 0
        seen = {0}
        todo = [0]
        while todo:
            c = todo.pop()
            for s in range(4):
                o, _ = self.partner((c, s))
                if o not in seen:
                    seen.add(o)
                    todo.append(o)
        comps = 1
        for c in range(self.n):
            if c not in seen:
                comps += 1
                stack = [c]
                seen.add(c)
                while stack:
                    x = stack.pop()
                    for s in range(4):
                        o, _ = self.partner((x, s))
                        if o not in seen:
                            seen.add(o)
                            stack.append(o)
        return comps

    def euler_ok(self) -> bool:
        """V - E + F = 1 + (number of connected pieces) for a planar map."""
        if self.n == 0:
            return True
        return self.n - 2 * self.n + len(self.faces()) == 1 + self.connected_components()

    # -------------------------------------------------------------- strands
    def components(self) -> list:
        """Closed strands as lists of ports ``(c, s)`` entered, in travel order.

        Each component starts at its lexicographically smallest edge, leaving
        through the smaller of that edge's two ports.
        """
        if "components" in self._cache:
            return self._cache["components"]
        used = set()
        comps = []
        for e in self.edges():
            a, b = self._ends[e]
            start = min(a, b)
            if start in used:
                continue
            walk = []
            out = start
            while True:
                used.add(out)
                inp = self.partner(out)
                used.add(inp)
                walk.append(inp)
                out = (inp[0], (inp[1] + 2) % 4)
                if out == start:
                    break
            comps.append(walk)
        self._cache["components"] = comps
        return comps

    def num_components(self) -> int:
        return len(self.components()) + self.free_loops

    def incoming(self) -> dict:
        """Map crossing -> {strand parity: incoming slot} under the default orientation."""
        if "incoming" not in self._cache:
            inc: dict = {}
            for walk in self.components():
                for c, s in walk:
                    inc.setdefault(c, {})[s % 2] = s
            self._cache["incoming"] = inc
        return self._cache["incoming"]

    def signs(self, incoming: Optional[dict] = None) -> list:
        inc = self.incoming() if incoming is None else incoming
        out = []
        for c in range(self.n):
            o = self.over[c]
            a_over = inc[c][o]
            a_under = inc[c][1 - o]
            out.append(1 if (a_under - a_over) % 4 == 1 else -1)
        return out

    def writhe(self) -> int:
        return sum(self.signs())

    def is_knot(self) -> bool:
        return self.num_components() == 1

    # ------------------------------------------------------- shape queries
    def is_alternating(self) -> bool:
        for e, ((c1, s1), (c2, s2)) in self._ends.items():
            if self.is_over((c1, s1)) == self.is_over((c2, s2)):
                return False
        return True

    def is_reduced(self) -> bool:
        """No face meets a crossing in two corners (no nugatory crossing)."""
        for c in range(self.n):
            fs = [self.corner_face(c, k) for k in range(4)]
            if len(set(fs)) < 4:
                return False
        return True

    def is_connected(self) -> bool:
        return self.n == 0 or self.connected_components() == 1

    def checkerboard(self) -> dict:
        """Two-colouring of faces: colour 0 is the face at crossing 0's B-corners.

        B-corners of crossing ``c`` are ``over + 1`` and ``over + 3``.
        """
        if "checker" in self._cache:
            return self._cache["checker"]
        nf = len(self.faces())
        colour: dict = {}
        for root in range(self.n):
            start = self.corner_face(root, (self.over[root] + 1) % 4)
            if start in colour:
                continue
            colour[start] = 0
            todo = deque([start])
            while todo:
                f = todo.popleft()
                for d in self.faces()[f]:
                    # the face across the edge leaving dart d
                    c, s = d
                    g = self.corner_face(c, s)
                    if g == f:
                        continue
                    if g not in colour:
                        colour[g] = 1 - colour[f]
                        todo.append(g)
                    elif colour[g] == colour[f]:
                        raise DiagramError("faces admit no checkerboard colouring")
        if len(colour) != nf:
            raise DiagramError("disconnected diagram: colour each piece separately")
        self._cache["checker"] = colour
        return colour

    def state_circles(self, state: str = "A") -> int:
        """Number of loops in the all-A (or all-B) Kauffman smoothing."""
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for e, (p, q) in self._ends.items():
            union(p, q)
        for c in range(self.n):
            o = self.over[c] if state == "A" else 1 - self.over[c]
            union((c, (o + 1) % 4), (c, (o + 2) % 4))
            union((c, (o + 3) % 4), (c, o))
        roots = {find((c, s)) for c in range(self.n) for s in range(4)}
        return len(roots) + self.free_loops

    # ------------------------------------------------------------ transforms
    def mirror(self) -> "Diagram":
        return Diagram(self.crossings, [1 - o for o in self.over], list(self.tags),
                       self.free_loops, list(self.axes))

    def relabelled(self) -> "Diagram":
        """Same diagram with edges renamed 0..2n-1 in order of first appearance."""
        names: dict = {}
        for edges in self.crossings:
            for e in edges:
                names.setdefault(e, len(names))
        return Diagram([tuple(names[e] for e in edges) for edges in self.crossings],
                       self.over, list(self.tags), self.free_loops, list(self.axes))

    # --------------------------------------------------------------- export
    def pd_code(self) -> list:
        """PD code ``X[i, j, k, l]``: ccw from the incoming under-strand.

        Edges are numbered 1..2n along the orientation of each component.
        """
        number: dict = {}
        k = 1
        for walk in self.components():
            for c, s in walk:
                # the edge arriving at (c, s)
                e = self.crossings[c][s]
                number[e] = k
                k += 1
        inc = self.incoming()
        out = []
        for c in range(self.n):
            start = inc[c][1 - self.over[c]]
            out.append(tuple(number[self.crossings[c][(start + j) % 4]] for j in range(4)))
        return out

    def gauss_code(self) -> list:
        """Signed Gauss code per component: +c over, -c under (1-based crossings)."""
        out = []
        for walk in self.components():
            out.append([(c + 1) if self.is_over((c, s)) else -(c + 1) for c, s in walk])
        return out

    def to_json(self) -> dict:
        return {
            "crossings": [list(map(_jsonable, c)) for c in self.crossings],
            "over": list(self.over),
            "free_loops": self.free_loops,
            "pd": [list(x) for x in self.pd_code()],
            "components": self.num_components(),
            "writhe": self.writhe(),
        }


# ------------------------------------------------------------ orientation

@dataclass(frozen=True)
class OrientedDiagram:
    """A diagram with a travel direction (+1 or -1) for each strand of
    ``diagram.components()``; +1 is the default traversal."""
    diagram: Diagram
    directions: tuple

    @property
    def n(self) -> int:
        return self.diagram.n

    def walks(self) -> list:
        """Ports entered, in travel order, per component."""
        out = []
        for walk, sgn in zip(self.diagram.components(), self.directions):
            if sgn > 0:
                out.append(list(walk))
            else:
                out.append([(c, (s + 2) % 4) for c, s in reversed(walk)])
        return out

    def incoming(self) -> dict:
        inc: dict = {}
        for walk in self.walks():
            for c, s in walk:
                inc.setdefault(c, {})[s % 2] = s
        return inc

    def incoming_ports(self) -> set:
        return {p for walk in self.walks() for p in walk}

    def signs(self) -> list:
        return self.diagram.signs(self.incoming())

    def writhe(self) -> int:
        return sum(self.signs())


def orient(d: Diagram, directions: Optional[tuple] = None) -> OrientedDiagram:
    """Canonical orientation: every strand runs forward from its smallest edge."""
    k = len(d.components())
    if directions is None:
        if d.num_components() != 1:
            raise MultiComponent(f"diagram has {d.num_components()} components")
        directions = (1,) * k
    if len(directions) != k:
        raise DiagramError(f"need {k} directions, got {len(directions)}")
    return OrientedDiagram(d, tuple(1 if x > 0 else -1 for x in directions))


def reverse(od: OrientedDiagram) -> OrientedDiagram:
    return OrientedDiagram(od.diagram, tuple(-x for x in od.directions))


# ----------------------------------------------------------- twist regions

@dataclass(frozen=True)
class TwistRegion:
    crossings: tuple
    sign: int
    kind: Optional[str]     # "parallel", "antiparallel", or None for a lone crossing of unknown axis

    @property
    def length(self) -> int:
        return len(self.crossings)

    @property
    def parallel(self) -> bool:
        return self.kind == "parallel"


def _bigon_pairs(d: Diagram) -> list:
    """(c1, k1, c2, k2): crossings sharing an alternating bigon, with its corners."""
    out = []
    for orbit in d.faces():
        if len(orbit) != 2:
            continue
        (c1, s1), (c2, s2) = orbit
        if c1 == c2:
            continue
        # the bigon is a twist only when the strands alternate across it
        if d.is_over(d.partner((c1, s1))) == d.is_over((c1, s1)):
            continue
        out.append((c1, (s1 - 1) % 4, c2, (s2 - 1) % 4))
    return out


def kind_at(od: OrientedDiagram, c: int, corner: int) -> str:
    """Twist kind seen from ``corner``: both strands enter (or both leave) there iff parallel."""
    inc = od.incoming_ports()
    a = (c, corner) in inc
    b = (c, (corner + 1) % 4) in inc
    return "parallel" if a == b else "antiparallel"


def twist_regions(od: OrientedDiagram) -> list:
    """Maximal chains of alternating bigons, ordered by smallest crossing."""
    d = od.diagram
    parent = list(range(d.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    corner: dict = {}
    for c1, k1, c2, k2 in _bigon_pairs(d):
        parent[find(c1)] = find(c2)
        corner.setdefault(c1, k1)
        corner.setdefault(c2, k2)
    groups: dict = {}
    for c in range(d.n):
        groups.setdefault(find(c), []).append(c)
    signs = od.signs()
    out = []
    for members in sorted(groups.values()):
        c0 = members[0]
        if c0 in corner:
            kind = kind_at(od, c0, corner[c0])
        elif d.axes[c0] is not None:
            kind = kind_at(od, c0, d.axes[c0])
        else:
            kind = None
        out.append(TwistRegion(tuple(members), signs[c0], kind))
    return out


def _edge_key(e):
    return (0, e, "") if isinstance(e, int) else (1, 0, repr(e))


def _jsonable(e):
    return e if isinstance(e, (int, str)) else repr(e)


def from_pd(pd: list) -> Diagram:
    """Build a diagram from PD code (each tuple starts at the incoming under-strand)."""
    return Diagram([tuple(x) for x in pd], [1] * len(pd))
