"""Compose Conway ASTs into tangles and closed diagrams."""

from __future__ import annotations

from itertools import product
from typing import Iterator, Optional

from . import conway as cw
from .diagram import Diagram
from .polyhedra import PolyhedronTemplate, template
from .tangles import (
    BOUNDARY, Tangle, _join, flip, integer_tangle, mirror, numerator, reflect,
    tangle_sum, to_diagram,
)


class SlotMismatch(ValueError):
    pass


def compose(ast, path: tuple = ()) -> Tangle:
    """Tangle for a non-polyhedral AST.  Crossings are tagged ``(path, i)``."""
    if isinstance(ast, cw.IntegerTangle):
        return integer_tangle(ast.value, tag=path)
    if isinstance(ast, (cw.Sequence, cw.Product)):
        items = ast.children if isinstance(ast, cw.Sequence) else ast.factors
        t = compose(items[0], path + (0,))
        for k in range(1, len(items)):
            t = tangle_sum(reflect(t), compose(items[k], path + (k,)))
        return t
    if isinstance(ast, cw.Ramification):
        t = reflect(compose(ast.children[0], path + (0,)))
        for k in range(1, len(ast.children)):
            t = tangle_sum(t, reflect(compose(ast.children[k], path + (k,))))
        return t
    if isinstance(ast, cw.Plus):
        base = compose(ast.base, path + (0,))
        tail = integer_tangle(1, tag=path + (1,)) if ast.tail is None \
            else compose(ast.tail, path + (1,))
        return tangle_sum(base, tail)
    if isinstance(ast, cw.Negation):
        return mirror(compose(ast.child, path + (0,)))
    if isinstance(ast, cw.Polyhedron):
        raise SlotMismatch("a basic polyhedron has no four-ended tangle form")
    raise TypeError(f"not a Conway AST node: {ast!r}")


def _split_twist(t: Tangle, a: int, tag) -> Iterator[Tangle]:
    """Flype images of ``t + [a]``: x crossings moved to the left turn ``t`` over x times."""
    sgn = 1 if a > 0 else -1
    for x in range(abs(a) + 1):
        body = flip(t) if x % 2 else t
        parts = []
        if x:
            parts.append(integer_tangle(sgn * x, tag=tag))
        parts.append(body)
        if abs(a) - x:
            parts.append(integer_tangle(sgn * (abs(a) - x), tag=tag))
        out = parts[0]
        for q in parts[1:]:
            out = tangle_sum(out, q)
        yield out


def compose_variants(ast, path: tuple = ()) -> Iterator[Tangle]:
    """Every tangle obtained from ``compose(ast)`` by flyping horizontal twists
    across the tangle they are added to.  Crossing tags match ``compose``."""
    if isinstance(ast, cw.IntegerTangle):
        yield integer_tangle(ast.value, tag=path)
        return
    if isinstance(ast, (cw.Sequence, cw.Product)):
        items = ast.children if isinstance(ast, cw.Sequence) else ast.factors
        partial = list(compose_variants(items[0], path + (0,)))
        for k in range(1, len(items)):
            nxt = []
            item = items[k]
            for t in partial:
                r = reflect(t)
                if isinstance(item, cw.IntegerTangle) and item.value:
                    nxt.extend(_split_twist(r, item.value, path + (k,)))
                else:
                    nxt.extend(tangle_sum(r, u) for u in compose_variants(item, path + (k,)))
            partial = nxt
        yield from partial
        return
    if isinstance(ast, cw.Ramification):
        choices = [list(compose_variants(c, path + (k,))) for k, c in enumerate(ast.children)]
        for combo in product(*choices):
            t = reflect(combo[0])
            for u in combo[1:]:
                t = tangle_sum(t, reflect(u))
            yield t
        return
    if isinstance(ast, cw.Plus):
        for base in compose_variants(ast.base, path + (0,)):
            if ast.tail is None or isinstance(ast.tail, cw.IntegerTangle):
                a = 1 if ast.tail is None else ast.tail.value
                yield from _split_twist(base, a, path + (1,))
            else:
                for tail in compose_variants(ast.tail, path + (1,)):
                    yield tangle_sum(base, tail)
        return
    if isinstance(ast, cw.Negation):
        for t in compose_variants(ast.child, path + (0,)):
            yield mirror(t)
        return
    raise SlotMismatch("a basic polyhedron has no four-ended tangle form")


def fill_polyhedron(ast: cw.Polyhedron, tmpl: Optional[PolyhedronTemplate] = None) -> Diagram:
    tmpl = tmpl or template(ast.base)
    if len(ast.slots) != tmpl.size:
        raise SlotMismatch(f"{ast.base}* needs {tmpl.size} slots, got {len(ast.slots)}")
    return _fill(ast, [compose(slot, (k,)) for k, slot in enumerate(ast.slots)], tmpl)


def _fill(ast: cw.Polyhedron, tangles, tmpl: PolyhedronTemplate) -> Diagram:
    big = Tangle()
    bounds = []
    for k, t in enumerate(tangles):
        if tmpl.flipped(k):
            t = reflect(t)
        t = t.shifted(big.n)
        big.over += t.over
        big.tags += t.tags
        big.axes += t.axes
        big.links.update(t.links)
        big.free_loops += t.free_loops
        bounds.append(t.boundary)
    for (k1, p1), (k2, p2) in tmpl.adjacency():
        _join(big, bounds[k1][p1], bounds[k2][p2])
    return to_diagram(big)


def _closure_summands(ast, path: tuple = ()) -> Optional[list]:
    """Summands ``(node, path, reflected)`` of a root sum whose numerator
    closure is a ring of tangles, or None for other roots."""
    if isinstance(ast, cw.Ramification):
        return [(c, path + (k,), True) for k, c in enumerate(ast.children)]
    if isinstance(ast, cw.Plus):
        inner = _closure_summands(ast.base, path + (0,))
        if inner is None:
            return None
        tail = cw.IntegerTangle(1) if ast.tail is None else ast.tail
        return inner + [(tail, path + (1,), False)]
    return None


def _is_rational(node) -> bool:
    if isinstance(node, cw.IntegerTangle):
        return True
    return isinstance(node, cw.Sequence) and all(isinstance(c, cw.IntegerTangle) for c in node.children)


def _arrangements(summands: list) -> Iterator[list]:
    """Cyclic rotations of the ring, and its reversal when every summand is
    rational (rational tangles survive turning the diagram over)."""
    n = len(summands)
    orders = [summands[k:] + summands[:k] for k in range(n)]
    if all(_is_rational(node) for node, _, _ in summands):
        rev = summands[::-1]
        orders += [rev[k:] + rev[:k] for k in range(n)]
    seen = set()
    for order in orders:
        key = tuple(p for _, p, _ in order)
        if key not in seen:
            seen.add(key)
            yield order


def _ring_variants(order: list) -> Iterator[Tangle]:
    def pieces(node, path, reflected):
        for t in compose_variants(node, path):
            yield reflect(t) if reflected else t

    node, path, refl = order[0]
    partial = list(pieces(node, path, refl))
    for node, path, refl in order[1:]:
        nxt = []
        for t in partial:
            if not refl and isinstance(node, cw.IntegerTangle) and node.value:
                nxt.extend(_split_twist(t, node.value, path))
            else:
                nxt.extend(tangle_sum(t, u) for u in pieces(node, path, refl))
        partial = nxt
    yield from partial


def flype_variants(ast, limit: int = 20000) -> Iterator[Diagram]:
    """Closed diagrams reachable from the symbol's diagram by twist flypes and,
    for a closed ring of summands, by rotating (or turning over) the ring.
    At most ``limit`` of them; the symbol's own diagram comes first."""
    if isinstance(ast, str):
        ast = cw.parse(ast)
    if isinstance(ast, cw.Polyhedron):
        tmpl = template(ast.base)
        if len(ast.slots) != tmpl.size:
            raise SlotMismatch(f"{ast.base}* needs {tmpl.size} slots, got {len(ast.slots)}")
        choices = [list(compose_variants(s, (k,))) for k, s in enumerate(ast.slots)]
        gen = (_fill(ast, combo, tmpl) for combo in product(*choices))
    else:
        ring = _closure_summands(ast)
        if ring is None:
            gen = (numerator(t) for t in compose_variants(ast))
        else:
            gen = (numerator(t) for order in _arrangements(ring) for t in _ring_variants(order))
    for k, d in enumerate(gen):
        if k >= limit:
            return
        yield d


def build_diagram(ast, tmpl: Optional[PolyhedronTemplate] = None) -> Diagram:
    """Closed diagram: numerator closure, or the filled basic polyhedron."""
    if isinstance(ast, str):
        ast = cw.parse(ast)
    if isinstance(ast, cw.Polyhedron):
        return fill_polyhedron(ast, tmpl)
    return numerator(compose(ast))
