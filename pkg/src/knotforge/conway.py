"""Conway notation: tokenizer, parser, canonical printer.

Grammar (whitespace separates juxtaposed factors)::

    symbol      = polyhedral | expr
    polyhedral  = BASE "*" [slots] | slots            (slots must contain "." or ":")
    slots       = slot { SEP slot }                   SEP = "." | ":" | "::"
    slot        = [ expr ]                            (empty slot = 1)
    expr        = ram { "+" [ tail ] }
    tail        = INT | "(" expr ")"
    ram         = branch { ("," | ADJ_MINUS) branch }
    branch      = factor { factor }
    factor      = [ "-" ] INT | [ "-" ] "(" expr ")"

``BASE`` is one of 6, 8, 9, 10.  The separators advance the slot position by
one, two or four, so ``a:b`` is ``a.1.b`` and ``a::b`` is ``a.1.1.1.b``.
A leading ``.`` (no base) only marks the octahedral polyhedron: ``.2.2 0`` is
``6*2.2 0``.  Without base or leading dot, ``a.b.c`` and ``a:b:c`` are 6*
abbreviations placed by ``BARE_LAYOUTS``.  ``ADJ_MINUS`` is a minus sign written directly after a digit
(``2 1-2``); it opens a new ramification branch.  A minus in front of a
run of integers negates the whole run: ``-2 1`` is the tangle ``-(2 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

__all__ = [
    "ConwayError", "LexError", "ArityError", "PolyhedronError", "SourceSpan",
    "IntegerTangle", "Sequence", "Ramification", "Plus", "Product", "Negation",
    "Polyhedron", "ConwayAst", "POLYHEDRON_SIZES", "parse", "print_canonical",
    "crossing_count", "to_json", "iter_nodes",
]

POLYHEDRON_SIZES = {6: 6, 8: 8, 9: 9, 10: 10}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


class ConwayError(ValueError):
    def __init__(self, message: str, span: Optional[SourceSpan] = None, text: str = ""):
        self.span = span
        self.text = text
        where = f" at {span.start}..{span.end}" if span is not None else ""
        super().__init__(f"{message}{where}")


class LexError(ConwayError):
    pass


class ArityError(ConwayError):
    pass


class PolyhedronError(ConwayError):
    pass


# Spans are carried for error reporting and JSON output only; structural
# equality ignores them.
_span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IntegerTangle:
    value: int
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Sequence:
    children: tuple
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Ramification:
    children: tuple
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Plus:
    base: "ConwayAst"
    tail: Optional["ConwayAst"] = None
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Product:
    factors: tuple
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Negation:
    child: "ConwayAst"
    span: Optional[SourceSpan] = _span


@dataclass(frozen=True)
class Polyhedron:
    base: int
    slots: tuple
    span: Optional[SourceSpan] = _span


ConwayAst = Union[IntegerTangle, Sequence, Ramification, Plus, Product, Negation, Polyhedron]


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(r"\s+|\d+|::|[-,()+.:*]")


@dataclass(frozen=True)
class _Tok:
    kind: str      # "int" or the punctuation itself
    text: str
    start: int
    end: int
    spaced: bool   # preceded by whitespace


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    spaced = True
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}",
                           SourceSpan(pos, pos + 1), text)
        s = m.group()
        if s.isspace():
            spaced = True
        else:
            kind = "int" if s.isdigit() else s
            toks.append(_Tok(kind, s, pos, m.end(), spaced))
            spaced = False
        pos = m.end()
    return toks


# ------------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text: str, toks: list[_Tok], offset: int = 0):
        self.text = text
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> Optional[_Tok]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def span_from(self, start: int) -> SourceSpan:
        end = self.toks[self.i - 1].end if self.i > 0 else start
        return SourceSpan(start, max(start, end))

    def error(self, cls, msg, tok: Optional[_Tok] = None):
        if tok is None:
            tok = self.peek()
        if tok is None:
            span = SourceSpan(len(self.text), len(self.text))
        else:
            span = SourceSpan(tok.start, tok.end)
        raise cls(msg, span, self.text)

    # expr = ram { "+" [tail] }
    def expr(self):
        start_tok = self.peek()
        if start_tok is None:
            self.error(ArityError, "empty expression")
        node = self.ram()
        while self.peek() is not None and self.peek().kind == "+":
            self.take()
            tail = None
            nxt = self.peek()
            if nxt is not None and not nxt.spaced and nxt.kind in ("int", "("):
                tail = self.factor(allow_sign=False)
            node = Plus(node, tail, self.span_from(start_tok.start))
        return node

    def ram(self):
        start = self.peek().start
        branches = [self.branch()]
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.kind == ",":
                self.take()
                branches.append(self.branch())
            elif tok.kind == "-" and not tok.spaced and self.toks[self.i - 1].kind == "int":
                branches.append(self.branch())
            else:
                break
        if len(branches) == 1:
            return branches[0]
        return Ramification(tuple(branches), self.span_from(start))

    def branch(self):
        tok = self.peek()
        if tok is None or tok.kind in (",", ")", "+", ".", ":", "::"):
            self.error(ArityError, "empty ramification branch", tok)
        start = tok.start
        tok_is_minus = tok.kind == "-" and self.peek(1) is not None and self.peek(1).kind == "int"
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok is None or not tok.spaced:
                break
            if tok.kind == "int" or tok.kind == "(" or (
                    tok.kind == "-" and self.peek(1) is not None
                    and self.peek(1).kind in ("int", "(") and not self.peek(1).spaced):
                factors.append(self.factor())
            else:
                break
        for j, f in enumerate(factors):
            if isinstance(f, IntegerTangle) and f.value == 0 and (
                    len(factors) == 1 or j != len(factors) - 1):
                raise ArityError("0 tangle allowed only as the last factor", f.span, self.text)
        if len(factors) == 1:
            return factors[0]
        span = self.span_from(start)
        if all(isinstance(f, IntegerTangle) for f in factors):
            if tok_is_minus:
                # "-2 1" is the mirrored tangle -(2 1): the sign covers the run
                factors = [factors[0]] + [IntegerTangle(-f.value, f.span) for f in factors[1:]]
            return Sequence(tuple(factors), span)
        return Product(tuple(factors), span)

    def factor(self, allow_sign: bool = True):
        tok = self.peek()
        if tok is None:
            self.error(ArityError, "missing operand")
        start = tok.start
        negative = False
        if tok.kind == "-" and allow_sign:
            self.take()
            negative = True
            tok = self.peek()
            if tok is None or tok.spaced:
                self.error(ArityError, "dangling minus sign", tok)
        if tok.kind == "int":
            self.take()
            value = int(tok.text)
            if negative and value == 0:
                self.error(ArityError, "negative zero tangle", tok)
            return IntegerTangle(-value if negative else value, self.span_from(start))
        if tok.kind == "(":
            self.take()
            if self.peek() is not None and self.peek().kind == ")":
                self.error(ArityError, "empty parentheses")
            inner = self.expr()
            close = self.peek()
            if close is None or close.kind != ")":
                self.error(ArityError, "expected ')'", close)
            self.take()
            if negative:
                if isinstance(inner, IntegerTangle):
                    return IntegerTangle(-inner.value, self.span_from(start))
                return Negation(inner, self.span_from(start))
            return inner
        self.error(LexError if tok.kind == "*" else ArityError, f"unexpected {tok.text!r}", tok)


def _split_top(toks: list[_Tok]) -> list:
    """Split a token list at top-level slot separators."""
    parts, current, depth = [], [], 0
    for tok in toks:
        if tok.kind == "(":
            depth += 1
        elif tok.kind == ")":
            depth -= 1
        if depth == 0 and tok.kind in (".", ":", "::"):
            parts.append(current)
            parts.append(tok)
            current = []
        else:
            current.append(tok)
    parts.append(current)
    return parts


_ADVANCE = {".": 1, ":": 2, "::": 4}

# Abbreviated 6* symbols without a leading "." or a base.  Each style lists,
# per part, the full slot it fills and whether the filler is reflected
# (written ``t 0``).  Frozen by regression against the tabulated knots.
BARE_LAYOUTS = {
    ".": ((1, False), (0, False), (4, False), (3, True)),
    ":": ((1, False), (2, True), (4, False)),
}


def reflected(node):
    """``node 0`` with a doubled trailing 0 cancelled (reflection is an involution)."""
    if isinstance(node, IntegerTangle) and abs(node.value) == 1:
        return node
    if isinstance(node, (Sequence, Product)):
        items = node.children if isinstance(node, Sequence) else node.factors
        if items[-1] == IntegerTangle(0):
            rest = items[:-1]
            if len(rest) == 1:
                return rest[0]
            return type(node)(rest)
        if isinstance(node, Sequence):
            return Sequence(items + (IntegerTangle(0),))
        return Product(items + (IntegerTangle(0),))
    if isinstance(node, IntegerTangle):
        return Sequence((node, IntegerTangle(0)))
    return Product((node, IntegerTangle(0)))


def _parse_polyhedron(text: str, toks: list[_Tok], base: int, base_start: int):
    size = POLYHEDRON_SIZES[base]
    slots: list = [None] * size
    pos = 0
    for part in _split_top(toks):
        if isinstance(part, _Tok):
            pos += _ADVANCE[part.kind]
            if pos >= size:
                raise PolyhedronError(f"too many slots for {base}*",
                                      SourceSpan(part.start, part.end), text)
            continue
        if not part:
            continue
        sub = _Parser(text, part)
        node = sub.expr()
        if sub.peek() is not None:
            sub.error(ArityError, f"unexpected {sub.peek().text!r}")
        slots[pos] = node
    filled = tuple(s if s is not None else IntegerTangle(1) for s in slots)
    return Polyhedron(base, filled, SourceSpan(base_start, len(text.rstrip())))


def _parse_bare(text: str, toks: list[_Tok]):
    """6* abbreviations such as ``2.2.2.2 0`` or ``3:2:2``."""
    parts, seps = [], set()
    for part in _split_top(toks):
        if isinstance(part, _Tok):
            seps.add(part.kind)
            continue
        if not part:
            raise PolyhedronError("empty slot in an abbreviated 6* symbol",
                                  SourceSpan(toks[0].start, toks[-1].end), text)
        sub = _Parser(text, part)
        node = sub.expr()
        if sub.peek() is not None:
            sub.error(ArityError, f"unexpected {sub.peek().text!r}")
        parts.append(node)
    if len(seps) != 1 or next(iter(seps)) not in BARE_LAYOUTS:
        raise PolyhedronError("abbreviated 6* symbols use a single separator kind",
                              SourceSpan(toks[0].start, toks[-1].end), text)
    layout = BARE_LAYOUTS[next(iter(seps))]
    if len(parts) > len(layout):
        raise PolyhedronError("too many slots for 6*", SourceSpan(toks[0].start, toks[-1].end), text)
    slots: list = [IntegerTangle(1)] * 6
    for node, (pos, flip) in zip(parts, layout):
        slots[pos] = reflected(node) if flip else node
    return Polyhedron(6, tuple(slots), SourceSpan(toks[0].start, len(text.rstrip())))


def parse(text: str) -> ConwayAst:
    """Parse a Conway symbol.

    >>> parse("2 2 1 2")
    Sequence(children=(IntegerTangle(value=2), IntegerTangle(value=2), IntegerTangle(value=1), IntegerTangle(value=2)))
    >>> parse("3") == IntegerTangle(3)
    True
    """
    if not text or not text.strip():
        raise ArityError("empty Conway symbol", SourceSpan(0, len(text or "")), text or "")
    toks = _tokenize(text)
    top_level_kinds = set()
    depth = 0
    for tok in toks:
        if tok.kind == "(":
            depth += 1
        elif tok.kind == ")":
            depth -= 1
            if depth < 0:
                raise ArityError("unbalanced ')'", SourceSpan(tok.start, tok.end), text)
        elif depth == 0:
            top_level_kinds.add(tok.kind)
    if depth != 0:
        raise ArityError("unbalanced '('", SourceSpan(len(text), len(text)), text)

    star = [j for j, t in enumerate(toks) if t.kind == "*"]
    if star:
        j = star[0]
        if j != 1 or toks[0].kind != "int" or len(star) > 1:
            raise PolyhedronError("a basic polyhedron is written BASE* (e.g. 8*)",
                                  SourceSpan(toks[j].start, toks[j].end), text)
        base = int(toks[0].text)
        if base not in POLYHEDRON_SIZES:
            raise PolyhedronError(f"unknown basic polyhedron {base}*",
                                  SourceSpan(toks[0].start, toks[1].end), text)
        return _parse_polyhedron(text, toks[2:], base, toks[0].start)
    if top_level_kinds & {".", ":", "::"}:
        if toks[0].kind == ".":
            # a leading "." only marks the 6* family: ".2.2 0" is 6*2.2 0
            return _parse_polyhedron(text, toks[1:], 6, toks[0].start)
        return _parse_bare(text, toks)

    p = _Parser(text, toks)
    node = p.expr()
    if p.peek() is not None:
        p.error(ArityError, f"unexpected {p.peek().text!r}")
    return node


# ------------------------------------------------------------------ printer

def _wrap(node) -> str:
    s = print_canonical(node)
    if isinstance(node, (IntegerTangle, Negation)):
        return s
    return f"({s})"


def print_canonical(ast: ConwayAst) -> str:
    """Deterministic text for an AST; ``parse`` inverts it.

    Polyhedra are always printed with an explicit base and every slot up to
    the last non-unit one, e.g. ``6*2.2 0`` for ``.2.2 0``.
    """
    if isinstance(ast, IntegerTangle):
        return str(ast.value)
    if isinstance(ast, Sequence):
        vals = [c.value for c in ast.children]
        if vals[0] < 0:
            return "-" + " ".join(str(-v) for v in vals)
        return " ".join(str(v) for v in vals)
    if isinstance(ast, Product):
        out = []
        for f in ast.factors:
            out.append(print_canonical(f) if isinstance(f, (IntegerTangle, Negation)) else _wrap(f))
        return " ".join(out)
    if isinstance(ast, Ramification):
        out = []
        for c in ast.children:
            if isinstance(c, (Ramification, Plus)):
                out.append(_wrap(c))
            else:
                out.append(print_canonical(c))
        return ",".join(out)
    if isinstance(ast, Plus):
        base = print_canonical(ast.base)
        if ast.tail is None:
            return base + "+"
        tail = print_canonical(ast.tail) if isinstance(ast.tail, IntegerTangle) and ast.tail.value > 0 \
            else _wrap(ast.tail)
        return f"{base}+{tail}"
    if isinstance(ast, Negation):
        child = ast.child
        if isinstance(child, IntegerTangle):
            return str(-child.value)
        if isinstance(child, Negation):
            return "-(" + print_canonical(child) + ")"
        return "-" + _wrap(child)
    if isinstance(ast, Polyhedron):
        slots = list(ast.slots)
        while slots and slots[-1] == IntegerTangle(1):
            slots.pop()
        parts = []
        for s in slots:
            if isinstance(s, (Ramification, Plus)):
                parts.append(_wrap(s))
            else:
                parts.append(print_canonical(s))
        return f"{ast.base}*" + ".".join(parts)
    raise TypeError(f"not a Conway AST node: {ast!r}")


# ------------------------------------------------------------------ queries

def iter_nodes(ast: ConwayAst, path: tuple = ()) -> Iterator[tuple[tuple, ConwayAst]]:
    """Yield ``(path, node)`` pairs in pre-order; paths index child positions."""
    yield path, ast
    if isinstance(ast, (Sequence, Ramification)):
        for k, c in enumerate(ast.children):
            yield from iter_nodes(c, path + (k,))
    elif isinstance(ast, Product):
        for k, c in enumerate(ast.factors):
            yield from iter_nodes(c, path + (k,))
    elif isinstance(ast, Polyhedron):
        for k, c in enumerate(ast.slots):
            yield from iter_nodes(c, path + (k,))
    elif isinstance(ast, Plus):
        yield from iter_nodes(ast.base, path + (0,))
        if ast.tail is not None:
            yield from iter_nodes(ast.tail, path + (1,))
    elif isinstance(ast, Negation):
        yield from iter_nodes(ast.child, path + (0,))


def crossing_count(ast: ConwayAst) -> int:
    """Crossings in the diagram the symbol describes.

    >>> crossing_count(parse("3:2:2"))
    10
    """
    total = 0
    for _, node in iter_nodes(ast):
        if isinstance(node, IntegerTangle):
            total += abs(node.value)
        elif isinstance(node, Plus) and node.tail is None:
            total += 1
    return total


def to_json(ast: ConwayAst) -> dict:
    def span(node):
        return None if node.span is None else [node.span.start, node.span.end]

    if isinstance(ast, IntegerTangle):
        return {"kind": "integer", "value": ast.value, "span": span(ast)}
    if isinstance(ast, Sequence):
        return {"kind": "sequence", "children": [to_json(c) for c in ast.children], "span": span(ast)}
    if isinstance(ast, Ramification):
        return {"kind": "ramification", "children": [to_json(c) for c in ast.children], "span": span(ast)}
    if isinstance(ast, Product):
        return {"kind": "product", "factors": [to_json(c) for c in ast.factors], "span": span(ast)}
    if isinstance(ast, Plus):
        return {"kind": "plus", "base": to_json(ast.base),
                "tail": None if ast.tail is None else to_json(ast.tail), "span": span(ast)}
    if isinstance(ast, Negation):
        return {"kind": "negation", "child": to_json(ast.child), "span": span(ast)}
    if isinstance(ast, Polyhedron):
        return {"kind": "polyhedron", "base": f"{ast.base}*",
                "slots": [to_json(c) for c in ast.slots], "span": span(ast)}
    raise TypeError(ast)
