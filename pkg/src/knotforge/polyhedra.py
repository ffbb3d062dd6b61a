"""Basic polyhedra 6*, 8*, 9*, 10* as medial graphs of small planar graphs.

Each basic polyhedron is the alternating diagram on the medial graph of a
planar graph ``G``: one crossing per edge of ``G``.  ``G`` is given by a
straight-line embedding, from which the counter-clockwise rotation system is
read off.  The slot order is the listed order of the (directed) edges.

At an edge ``u -> v`` drawn with ``u`` to the west, the four medial ports are
NE (toward the clockwise neighbour at ``v``), NW (counter-clockwise neighbour at
``u``), SW (clockwise at ``u``) and SE (counter-clockwise at ``v``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .tangles import NE, NW, SE, SW


@dataclass(frozen=True)
class PolyhedronTemplate:
    base: int
    coords: tuple          # vertex -> (x, y)
    edges: tuple           # slot order; each (u, v) directed
    flips: tuple = ()      # slots whose filler is reflected (frame across the edge)

    def flipped(self, k: int) -> bool:
        return k in self.flips

    @property
    def size(self) -> int:
        return len(self.edges)

    def rotation(self) -> dict:
        nbrs: dict = {v: [] for v in range(len(self.coords))}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)

        def angle(a, b):
            (x0, y0), (x1, y1) = self.coords[a], self.coords[b]
            return math.atan2(y1 - y0, x1 - x0)

        return {v: sorted(ns, key=lambda w: angle(v, w)) for v, ns in nbrs.items()}

    def adjacency(self) -> list:
        """Pairs ``((slot, port), (slot, port))`` of joined template ports."""
        return _adjacency(self)


@lru_cache(maxsize=None)
def _adjacency(t: PolyhedronTemplate) -> list:
    rot = t.rotation()
    index = {}
    for k, (u, v) in enumerate(t.edges):
        index[(u, v)] = k
        index[(v, u)] = k

    def nxt(x, y, step):
        ring = rot[x]
        return ring[(ring.index(y) + step) % len(ring)]

    def port(k, x, direction):
        u, v = t.edges[k]
        if x == v:
            return NE if direction == "prev" else SE
        return NW if direction == "next" else SW

    pairs = []
    for k, (u, v) in enumerate(t.edges):
        for x, y in ((u, v), (v, u)):
            f_other = nxt(x, y, +1)
            kf = index[(x, f_other)]
            pairs.append(((k, port(k, x, "next")), (kf, port(kf, x, "prev"))))
    return pairs


def _ring(n, r, phase=90.0):
    return [(r * math.cos(math.radians(phase + 360.0 * i / n)),
             r * math.sin(math.radians(phase + 360.0 * i / n))) for i in range(n)]


def _pyramid(n):
    coords = tuple([(0.0, 0.0)] + _ring(n, 2.0))
    return coords


# Planar graphs G (vertex 0 is the centre where relevant).
#   6*  tetrahedron: centre + triangle
#   8*  square pyramid: apex + square
#   9*  triangular prism: inner and outer triangle with spokes
#   10* pentagonal pyramid: apex + pentagon
_COORDS = {
    6: _pyramid(3),
    8: _pyramid(4),
    9: tuple(_ring(3, 1.0) + _ring(3, 3.0)),
    10: _pyramid(5),
}

# Slot orders frozen by golden tests against tabulated invariants
# (component counts of links, signature formulas, unknotting bounds).
_EDGES = {
    6: ((1, 2), (0, 2), (0, 3), (3, 1), (2, 3), (0, 1)),
    8: ((0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (3, 4), (0, 4), (4, 1)),
    9: ((0, 1), (1, 4), (4, 3), (3, 0), (0, 2), (2, 5), (5, 3),
        (1, 2), (4, 5)),
    10: ((0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (3, 4), (0, 4), (4, 5),
         (0, 5), (5, 1)),
}

_FLIPS = {6: (0, 2), 8: (0, 2, 4), 9: (1,), 10: ()}


def template(base: int) -> PolyhedronTemplate:
    if base not in _EDGES:
        raise KeyError(f"no template for {base}*")
    return PolyhedronTemplate(base, _COORDS[base], _EDGES[base], _FLIPS[base])


def with_order(base: int, edges, flips=()) -> PolyhedronTemplate:
    """Template with an explicit slot order (used when calibrating slot order)."""
    return PolyhedronTemplate(base, _COORDS[base], tuple(edges), tuple(flips))
