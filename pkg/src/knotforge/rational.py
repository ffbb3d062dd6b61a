"""Continued fractions for rational (2-bridge) knots and the BJ unknotting recursion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

from . import conway as cw


class NotRational(ValueError):
    pass


@dataclass(frozen=True, order=True)
class KnotFraction:
    """Canonical p/q: 0 <= q < p, the smallest of q, q^-1, p-q, (p-q)^-1 mod p."""
    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @property
    def is_knot(self) -> bool:
        return self.p % 2 == 1


def canonical(num: int, den: int) -> KnotFraction:
    p = abs(num)
    if p == 0:
        raise ZeroDivisionError("fraction 0/q closes to a split link")
    if p == 1:
        return KnotFraction(1, 0)
    q = (den if num > 0 else -den) % p
    if gcd(p, q) != 1:
        raise ValueError(f"{num}/{den} is not in lowest terms")
    cands = []
    for r in (q, p - q):
        cands += [r, pow(r, -1, p)]
    return KnotFraction(p, min(cands))


def _value(terms: Iterable[int]) -> tuple:
    """(numerator, denominator) of a_k + 1/(a_{k-1} + ... + 1/a_1)."""
    it = iter(terms)
    num, den = next(it), 1
    for a in it:
        num, den = a * num + den, num
    return num, den


def sequence_terms(ast) -> list:
    """Integer entries of a rational symbol such as "2 2 1 2"."""
    if isinstance(ast, str):
        ast = cw.parse(ast)
    if isinstance(ast, cw.IntegerTangle):
        return [ast.value]
    if isinstance(ast, cw.Sequence) and all(isinstance(c, cw.IntegerTangle) for c in ast.children):
        return [c.value for c in ast.children]
    raise NotRational(f"not a rational symbol: {cw.print_canonical(ast)!r}")


def is_rational(ast) -> bool:
    try:
        sequence_terms(ast)
    except (NotRational, cw.ConwayError):
        return False
    return True


def fraction_of(ast) -> KnotFraction:
    num, den = _value(sequence_terms(ast))
    return canonical(num, den)


def is_knot(f: KnotFraction) -> bool:
    return f.is_knot


def _euclid(p: int, q: int) -> list:
    """Positive expansion of p/q (q >= 1), last term >= 2 unless p/q = 1."""
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out[::-1]          # entries listed from a_1 (innermost) to a_k


def crossing_number(f: KnotFraction) -> int:
    if f.p == 1:
        return 0
    return sum(_euclid(f.p, f.q))


@lru_cache(maxsize=None)
def minimal_expansions(f: KnotFraction) -> tuple:
    """All positive expansions whose closures are minimal diagrams of f or its mirror."""
    if f.p == 1:
        return ((),)
    seen = set()
    for r in range(1, f.p):
        if gcd(r, f.p) != 1 or canonical(f.p, r) != f:
            continue
        base = _euclid(f.p, r)
        forms = [tuple(base)]
        if base[-1] > 1:
            forms.append(tuple(base[:-1]) + (base[-1] - 1, 1))
        for e in forms:
            if e[0] == 1 and len(e) > 1:
                continue      # a leading 1 folds into the next twist
            seen.add(e)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class BJResult:
    fraction: KnotFraction
    u_bj: int
    witness_path: tuple     # fractions from the knot down to the unknot


@lru_cache(maxsize=None)
def _bj(f: KnotFraction) -> tuple:
    if f.p == 1:
        return 0, (f,)
    c = crossing_number(f)
    best: Optional[tuple] = None
    for e in minimal_expansions(f):
        for j in range(len(e)):
            changed = list(e)
            changed[j] -= 2
            num, den = _value(changed)
            if num == 0:
                continue
            g = canonical(num, den)
            if crossing_number(g) >= c:
                continue
            u, path = _bj(g)
            cand = (u + 1, (f,) + path)
            if best is None or cand < best:
                best = cand
    if best is None:
        raise RuntimeError(f"no crossing change simplifies {f}")
    return best


def bj_unknotting(f) -> int:
    return bj(f).u_bj


def bj(f) -> BJResult:
    if not isinstance(f, KnotFraction):
        f = fraction_of(f)
    if not f.is_knot:
        raise ValueError(f"{f} is a two-component link")
    u, path = _bj(f)
    return BJResult(f, u, path)
