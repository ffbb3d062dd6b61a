"""Knot signature: combinatorial formula on reduced alternating diagrams and a
Goeritz-matrix oracle (with the Gordon-Litherland correction) for any diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, DiagramError, MultiComponent


class NotAlternating(DiagramError):
    pass


class NotReduced(DiagramError):
    pass


@dataclass(frozen=True)
class SignatureValue:
    sigma: int
    method: str


def white_black(d: Diagram) -> tuple:
    """(W, B): W counts faces in the colour class of crossing 0's B-corners."""
    colour = d.checkerboard()
    w = sum(1 for c in colour.values() if c == 0)
    return w, len(colour) - w


def _require_knot(d: Diagram):
    if d.num_components() != 1:
        raise MultiComponent(f"diagram has {d.num_components()} components")


def traczyk_signature(d: Diagram) -> SignatureValue:
    """sigma = (-w + W - B) / 2 for a reduced alternating knot diagram."""
    _require_knot(d)
    if d.n == 0:
        raise NotReduced("0-crossing diagram")
    if not d.is_alternating():
        raise NotAlternating("combinatorial formula needs an alternating diagram")
    if not d.is_reduced():
        raise NotReduced("diagram has a nugatory crossing")
    white, black = white_black(d)
    total = -d.writhe() + white - black
    return SignatureValue(total // 2, "traczyk")


# ----------------------------------------------------------------- oracle

def _inertia(rows) -> tuple:
    """(positive, negative, zero) eigenvalue counts of a symmetric rational matrix,
    by symmetric Gaussian elimination (congruence preserves inertia)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] + a[j][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            if a[i][i] == 0:
                for k in range(n):
                    a[i][k] -= 2 * a[j][k]
                for k in range(n):
                    a[k][i] -= 2 * a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def _det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def goeritz(d: Diagram, shaded: int = 1) -> tuple:
    """Reduced Goeritz matrix, per-crossing incidence signs and the correction.

    Regions of checkerboard colour ``shaded`` are the vertices.  A crossing has
    incidence -1 when the shaded regions sit in its A-corners, +1 otherwise.
    It is of type II when the shaded corners are bounded by one incoming and one
    outgoing strand end.  Returns ``(matrix, mu)`` with mu the sum of
    incidences over type II crossings.
    """
    colour = d.checkerboard()
    regions = sorted(f for f, c in colour.items() if c == shaded)
    pos = {f: i for i, f in enumerate(regions)}
    m = len(regions)
    g = [[0] * m for _ in range(m)]
    inc = d.incoming()
    mu = 0
    for c in range(d.n):
        o = d.over[c]
        shaded_corners = [k for k in range(4) if colour[d.corner_face(c, k)] == shaded]
        eta = -1 if shaded_corners[0] % 2 == o else 1
        f1 = d.corner_face(c, shaded_corners[0])
        f2 = d.corner_face(c, shaded_corners[1])
        if f1 != f2:
            i, j = pos[f1], pos[f2]
            g[i][j] -= eta
            g[j][i] -= eta
            g[i][i] += eta
            g[j][j] += eta
        ins = {inc[c][0], inc[c][1]}
        k = shaded_corners[0]
        mixed = (k in ins) != ((k + 1) % 4 in ins)
        if mixed:
            mu += eta
    reduced = [row[1:] for row in g[1:]]
    return reduced, mu


def matrix_oracle_signature(d: Diagram, shaded: int = 1) -> SignatureValue:
    """Signature as signature(G) - mu from the Goeritz form of one shading."""
    _require_knot(d)
    if d.n == 0:
        return SignatureValue(0, "matrix_oracle")
    g, mu = goeritz(d, shaded)
    p, n_, _ = _inertia(g) if g else (0, 0, 0)
    return SignatureValue((p - n_) - mu, "matrix_oracle")


def determinant(d: Diagram) -> int:
    if d.n == 0:
        return 1
    g, _ = goeritz(d, 1)
    if not g:
        return 1
    return abs(int(_det(g)))


def murasugi_lower_bound(sigma) -> int:
    s = sigma.sigma if isinstance(sigma, SignatureValue) else int(sigma)
    return abs(s) // 2
