"""Knot families obtained by lengthening twists, their signature formulas, and
the ascending-number theorems checked on explicit non-minimal diagrams.

A family is stored as a generating symbol plus a set of parameterized integer
slots.  Parameters are increments ``t_i >= 0``: slot ``a`` becomes
``sgn(a) * (|a| + 2 t_i)``.  The familiar ``(2p+1)``/``(2p)`` shapes are a
display layer on top (``p_i = t_i + p0_i``).
"""

from __future__ import annotations

import ast as pyast
import re
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Optional

from . import conway as cw
from .ascending import AscendingBounds, diagram_ascending_number, knot_ascending_bounds
from .builder import build_diagram
from .diagram import DiagramError, orient, twist_regions
from .signature import determinant, matrix_oracle_signature, traczyk_signature, white_black


class FamilyError(ValueError):
    pass


class NonMaximalTwist(FamilyError):
    pass


class OutOfDomain(FamilyError):
    pass


# ------------------------------------------------------ restricted formulas

_BINOPS = {pyast.Add: lambda a, b: a + b, pyast.Sub: lambda a, b: a - b,
           pyast.Mult: lambda a, b: a * b}
_CMPS = {pyast.Lt: lambda a, b: a < b, pyast.LtE: lambda a, b: a <= b,
         pyast.Gt: lambda a, b: a > b, pyast.GtE: lambda a, b: a >= b,
         pyast.Eq: lambda a, b: a == b, pyast.NotEq: lambda a, b: a != b}
_FUNCS = {"abs": abs, "max": max, "min": min}


def evaluate_expression(text: str, env: dict):
    """Evaluate an integer formula or condition such as ``2*p1-2*p3`` or
    ``(p1 >= p3) or (p2 >= p3)``.  Only arithmetic, comparisons, ``and``/``or``
    and abs/max/min are accepted."""

    def ev(node):
        if isinstance(node, pyast.Expression):
            return ev(node.body)
        if isinstance(node, pyast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, pyast.Name):
            if node.id not in env:
                raise FamilyError(f"unknown variable {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, pyast.UnaryOp) and isinstance(node.op, pyast.USub):
            return -ev(node.operand)
        if isinstance(node, pyast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, pyast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, pyast.And) else any(vals)
        if isinstance(node, pyast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if not _CMPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, pyast.Call) and isinstance(node.func, pyast.Name) \
                and node.func.id in _FUNCS and not node.keywords:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise FamilyError(f"unsupported syntax in {text!r}")

    return ev(pyast.parse(text, mode="eval"))


# ------------------------------------------------------------ AST surgery

def _children(node) -> tuple:
    if isinstance(node, (cw.Sequence, cw.Ramification)):
        return node.children
    if isinstance(node, cw.Product):
        return node.factors
    if isinstance(node, cw.Polyhedron):
        return node.slots
    if isinstance(node, cw.Plus):
        return (node.base,) if node.tail is None else (node.base, node.tail)
    if isinstance(node, cw.Negation):
        return (node.child,)
    return ()


def node_at(tree, path: tuple):
    for k in path:
        tree = _children(tree)[k]
    return tree


def replace_at(tree, path: tuple, new):
    if not path:
        return new
    k, rest = path[0], path[1:]
    kids = list(_children(tree))
    kids[k] = replace_at(kids[k], rest, new)
    if isinstance(tree, cw.Sequence):
        return replace(tree, children=tuple(kids))
    if isinstance(tree, cw.Ramification):
        return replace(tree, children=tuple(kids))
    if isinstance(tree, cw.Product):
        return replace(tree, factors=tuple(kids))
    if isinstance(tree, cw.Polyhedron):
        return replace(tree, slots=tuple(kids))
    if isinstance(tree, cw.Plus):
        return replace(tree, base=kids[0], tail=kids[1] if len(kids) > 1 else None)
    if isinstance(tree, cw.Negation):
        return replace(tree, child=kids[0])
    raise FamilyError(f"cannot descend into {tree!r}")


# ------------------------------------------------------------- FamilySpec

_MARK_RE = re.compile(r"\(2p(\d+)(\+1)?\)")
_MARK_BASE = 1000


@dataclass(frozen=True)
class FamilySpec:
    """Generating AST plus parameterized slots ``pid -> path``."""
    generating: object
    slots: tuple                 # ((pid, path), ...) in parameter order
    pattern: str = ""

    def __post_init__(self):
        for pid, path in self.slots:
            node = node_at(self.generating, path)
            if not isinstance(node, cw.IntegerTangle):
                raise FamilyError(f"slot {pid} is not an integer tangle")
            if abs(node.value) < 2:
                raise FamilyError(f"slot {pid} has |a| = {abs(node.value)}; twists of length 1 are not lengthened")

    @property
    def params(self) -> tuple:
        return tuple(pid for pid, _ in self.slots)

    def base(self, pid) -> int:
        return node_at(self.generating, dict(self.slots)[pid]).value

    def p0(self, pid) -> int:
        """Value of the display parameter p at t = 0."""
        return abs(self.base(pid)) // 2

    def odd(self, pid) -> bool:
        return abs(self.base(pid)) % 2 == 1

    @classmethod
    def from_pattern(cls, pattern: str, generating: Optional[str] = None) -> "FamilySpec":
        """Read a family pattern such as ``(2p1+1) (2p2) 1 (2p3)``.

        Each ``(2pi)``/``(2pi+1)`` becomes a slot whose generating value is 2
        or 3.  When ``generating`` is given the result must reproduce it.
        """
        marks = {}

        def sub(m):
            pid = f"p{m.group(1)}"
            if pid in marks:
                raise FamilyError(f"parameter {pid} used twice in {pattern!r}")
            marks[pid] = 3 if m.group(2) else 2
            return str(_MARK_BASE + int(m.group(1)))

        marked = _MARK_RE.sub(sub, pattern)
        if "p" in marked:
            raise FamilyError(f"unrecognised parameter syntax in {pattern!r}")
        tree = cw.parse(marked)
        found = {}
        for path, node in cw.iter_nodes(tree):
            if isinstance(node, cw.IntegerTangle) and abs(node.value) > _MARK_BASE:
                pid = f"p{abs(node.value) - _MARK_BASE}"
                sign = 1 if node.value > 0 else -1
                found[pid] = path
                tree = replace_at(tree, path, cw.IntegerTangle(sign * marks[pid]))
        if set(found) != set(marks):
            raise FamilyError(f"lost parameters while parsing {pattern!r}")
        slots = tuple(sorted(found.items(), key=lambda kv: int(kv[0][1:])))
        spec = cls(tree, slots, pattern)
        if generating is not None:
            want = cw.print_canonical(cw.parse(generating))
            got = cw.print_canonical(tree)
            if got != want:
                raise FamilyError(f"pattern {pattern!r} generates {got!r}, not {want!r}")
        return spec

    @classmethod
    def from_symbol(cls, symbol: str, paths=None) -> "FamilySpec":
        """Parameterize the given slot paths (default: every twist of length >= 2)."""
        tree = cw.parse(symbol)
        if paths is None:
            paths = [p for p, n in cw.iter_nodes(tree)
                     if isinstance(n, cw.IntegerTangle) and abs(n.value) >= 2]
        slots = tuple((f"p{k + 1}", tuple(p)) for k, p in enumerate(paths))
        return cls(tree, slots, symbol)

    def display(self) -> str:
        """Pattern text with ``(2pi)``/``(2pi+1)`` shapes in the slots."""
        tree = self.generating
        for k, (pid, path) in enumerate(self.slots):
            node = node_at(tree, path)
            sgn = 1 if node.value > 0 else -1
            tree = replace_at(tree, path, cw.IntegerTangle(sgn * (_MARK_BASE + k + 1)))
        text = cw.print_canonical(tree)
        for k, pid in enumerate(self.params):
            shape = f"(2{pid}+1)" if self.odd(pid) else f"(2{pid})"
            text = re.sub(rf"(?<!\d){_MARK_BASE + k + 1}(?!\d)", shape, text)
        return text


def expand_family(spec: FamilySpec, assignment: dict):
    """Member of the family at increments ``assignment`` (missing ids mean 0)."""
    extra = set(assignment) - set(spec.params)
    if extra:
        raise OutOfDomain(f"unknown parameters {sorted(extra)}")
    tree = spec.generating
    for pid, path in spec.slots:
        t = assignment.get(pid, 0)
        if t < 0:
            raise OutOfDomain(f"{pid} = {t} is negative")
        a = node_at(tree, path).value
        sgn = 1 if a > 0 else -1
        tree = replace_at(tree, path, cw.IntegerTangle(sgn * (abs(a) + 2 * t)))
    return tree


def increments_from_p(spec: FamilySpec, pvals: dict) -> dict:
    out = {}
    for pid in spec.params:
        t = pvals[pid] - spec.p0(pid)
        if t < 0:
            raise OutOfDomain(f"{pid} = {pvals[pid]} is below the generating value {spec.p0(pid)}")
        out[pid] = t
    return out


# ------------------------------------------------------ signature formulas

@dataclass(frozen=True)
class SignatureFormula:
    """sigma(t) = constant + sum coeffs[pid] * t[pid]."""
    constant: int
    coeffs: tuple                # ((pid, coefficient), ...)
    p0: tuple = ()               # ((pid, p at t=0), ...) for the p-form
    kinds: tuple = field(default=(), compare=False)    # ((pid, kind, sign), ...)

    def coefficient(self, pid) -> int:
        return dict(self.coeffs)[pid]

    @property
    def p_constant(self) -> int:
        base = dict(self.p0)
        return self.constant - sum(c * base.get(pid, 0) for pid, c in self.coeffs)

    def p_form(self) -> str:
        """The formula in the p-variables, e.g. ``-2p1-2p2-2p3+2``."""
        terms = []
        for pid, c in self.coeffs:
            if c:
                terms.append(f"{c:+d}{pid}".replace("+1p", "+p").replace("-1p", "-p"))
        if self.p_constant or not terms:
            terms.append(f"{self.p_constant:+d}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    def __str__(self) -> str:
        return self.p_form()


def _slot_region(spec: FamilySpec, d, regions, pid):
    path = dict(spec.slots)[pid]
    mine = {c for c, tag in enumerate(d.tags) if tag is not None and tag[0] == path}
    if not mine:
        raise FamilyError(f"slot {pid} has no crossings in the built diagram")
    hits = [r for r in regions if mine & set(r.crossings)]
    if len(hits) != 1:
        raise NonMaximalTwist(f"slot {pid} spreads over {len(hits)} twist regions")
    if hits[0].kind is None:
        raise NonMaximalTwist(f"slot {pid}: twist kind undetermined")
    return hits[0]


def derive_signature_formula(spec: FamilySpec) -> SignatureFormula:
    """Each full twist added to a parallel region of sign c moves sigma by -2c;
    antiparallel regions leave it alone.  The constant is the generating knot's
    signature from the combinatorial formula."""
    d = build_diagram(spec.generating)
    const = traczyk_signature(d).sigma
    regions = twist_regions(orient(d))
    coeffs, kinds = [], []
    for pid in spec.params:
        reg = _slot_region(spec, d, regions, pid)
        coeffs.append((pid, -2 * reg.sign if reg.parallel else 0))
        kinds.append((pid, reg.kind, reg.sign))
    return SignatureFormula(const, tuple(coeffs), tuple((p, spec.p0(p)) for p in spec.params),
                            tuple(kinds))


def evaluate_formula(f: SignatureFormula, assignment: dict) -> int:
    """Value at increments ``assignment``; missing ids count as 0."""
    return f.constant + sum(c * assignment.get(pid, 0) for pid, c in f.coeffs)


def evaluate_p(f: SignatureFormula, pvals: dict) -> int:
    return f.p_constant + sum(c * pvals[pid] for pid, c in f.coeffs)


@dataclass(frozen=True)
class StepMeasurement:
    pid: str
    kind: str
    sign: int
    d_sigma: int
    d_writhe: int
    d_white: int
    d_black: int

    @property
    def expected(self) -> tuple:
        """(dw, dW, dB) predicted for one added full twist."""
        if self.kind == "parallel":
            return (2, 0, 2) if self.sign > 0 else (-2, 2, 0)
        return (2, 2, 0) if self.sign > 0 else (-2, 0, 2)

    @property
    def expected_sigma(self) -> int:
        return -2 * self.sign if self.kind == "parallel" else 0

    @property
    def ok(self) -> bool:
        return (self.d_writhe, self.d_white, self.d_black) == self.expected \
            and self.d_sigma == self.expected_sigma


def _wwb(tree):
    d = build_diagram(tree)
    white, black = white_black(d)
    return traczyk_signature(d).sigma, d.writhe(), white, black, d


def measure_step(spec: FamilySpec, pid: str, at: Optional[dict] = None) -> StepMeasurement:
    """Rebuild with one more full twist in ``pid`` and measure the changes.

    Both diagrams are alternating, so every crossing sees the same colour at
    its B-corners and W, B mean the same thing before and after.
    """
    at = dict(at or {})
    s0, w0, W0, B0, d0 = _wwb(expand_family(spec, at))
    at2 = dict(at)
    at2[pid] = at2.get(pid, 0) + 1
    s1, w1, W1, B1, _ = _wwb(expand_family(spec, at2))
    reg = _slot_region(spec, d0, twist_regions(orient(d0)), pid)
    return StepMeasurement(pid, reg.kind, reg.sign, s1 - s0, w1 - w0, W1 - W0, B1 - B0)


# ------------------------------------------------------------ table checks

@dataclass(frozen=True)
class FamilyCheck:
    name: str
    supported: bool
    sign: int = 0
    formula: Optional[SignatureFormula] = None
    mismatches: tuple = ()
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.supported and not self.mismatches


def spec_for_row(row) -> FamilySpec:
    return FamilySpec.from_pattern(row.family, row.conway)


def _grid(spec: FamilySpec, n: int):
    for vals in product(range(1, n + 1), repeat=len(spec.params)):
        yield dict(zip(spec.params, vals))


def magnitude_check(row, grid: int = 3) -> FamilyCheck:
    """Compare the derived formula with the row's signature column on
    p in {1..grid}^k, allowing one global sign for the whole family."""
    try:
        spec = spec_for_row(row)
        f = derive_signature_formula(spec)
    except (FamilyError, DiagramError, cw.ConwayError) as exc:
        return FamilyCheck(row.name, False, error=f"{type(exc).__name__}: {exc}")
    pts = []
    for pv in _grid(spec, grid):
        pts.append((pv, evaluate_p(f, pv), evaluate_expression(row.sigma, pv)))
    best = None
    for s in (1, -1):
        bad = tuple((tuple(pv.values()), got, want) for pv, got, want in pts if got != s * want)
        if best is None or len(bad) < len(best[1]):
            best = (s, bad)
    return FamilyCheck(row.name, True, best[0], f, best[1])


def unknotting_table_check(row, grid: int = 3) -> FamilyCheck:
    """Where the row's condition holds, |sigma|/2 must equal its u formula."""
    if not row.u:
        return FamilyCheck(row.name, True, error="no unknotting formula")
    try:
        spec = spec_for_row(row)
        f = derive_signature_formula(spec)
    except (FamilyError, DiagramError, cw.ConwayError) as exc:
        return FamilyCheck(row.name, False, error=f"{type(exc).__name__}: {exc}")
    bad = []
    for pv in _grid(spec, grid):
        if row.condition and not evaluate_expression(row.condition, pv):
            continue
        half = abs(evaluate_p(f, pv)) // 2
        u = evaluate_expression(row.u, pv)
        if half != u:
            bad.append((tuple(pv.values()), half, u))
    return FamilyCheck(row.name, True, 0, f, tuple(bad))


# --------------------------------------------------------- family theorems

_REP_RE = re.compile(r"(\(-1\)|1)\^\{([^}]*)\}")
_VAL_RE = re.compile(r"\{([^}]*)\}")


def _linear(expr: str, params: dict) -> int:
    return evaluate_expression(re.sub(r"(\d)([a-z])", r"\1*\2", expr), params)


def expand_template(text: str, **params) -> str:
    """``1^{2p-2}`` -> ``1,1,...``; ``(-1)^{2q}`` -> ``-1,-1,...``; ``{2p+1}`` -> its value."""

    def rep(m):
        n = _linear(m.group(2), params)
        if n < 1:
            raise OutOfDomain(f"repetition count {n} in {m.group(0)!r}")
        unit = "-1" if m.group(1) == "(-1)" else "1"
        return ",".join([unit] * n)

    text = _REP_RE.sub(rep, text)
    return _VAL_RE.sub(lambda m: str(_linear(m.group(1), params)), text)


@dataclass(frozen=True)
class FamilyTheorem:
    key: str
    knot: str                    # family knot symbol with {expr} holes
    template: str                # ascending diagram, exponent notation
    formula: str                 # a(K) = u(K) as an expression
    domain: tuple                # ((param, minimum), ...)
    minimal: bool = False        # realized on the minimal diagram itself
    repaired: str = ""           # a template that is the family knot where ``template`` is not

    @property
    def params(self) -> tuple:
        return tuple(p for p, _ in self.domain)

    def knot_symbol(self, **pv) -> str:
        return expand_template(self.knot, **pv)

    def template_symbol(self, repaired: bool = False, **pv) -> str:
        text = self.repaired if repaired and self.repaired else self.template
        return expand_template(text, **pv)

    def value(self, **pv) -> int:
        return _linear(self.formula, pv)

    def in_domain(self, **pv) -> bool:
        return all(pv[p] >= lo for p, lo in self.domain)

    def instances(self, max_crossings: int = 16):
        """Parameter dicts, smallest first, whose template has at most ``max_crossings`` crossings."""
        out = []
        lows = [lo for _, lo in self.domain]

        def walk(prefix):
            k = len(prefix)
            if k == len(lows):
                out.append(dict(zip(self.params, prefix)))
                return
            v = lows[k]
            while True:
                trial = prefix + [v] + lows[k + 1:]
                if self._size(dict(zip(self.params, trial))) > max_crossings:
                    break
                walk(prefix + [v])
                v += 1

        walk([])
        return out

    def _size(self, pv) -> int:
        return cw.crossing_count(cw.parse(self.template_symbol(**pv)))


def _th(key, knot, template, formula, domain, minimal=False, repaired=""):
    return FamilyTheorem(key, knot, template, formula, tuple(domain), minimal, repaired)


FAMILY_THEOREMS = (
    _th("2p+1", "{2p+1}", "{2p+1}", "p", [("p", 1)], minimal=True),
    _th("(2p)3", "{2p} 3",
        "((((1,(-1,(((1^{2p-2}),-1),-1))),1),-1),-1,-1)", "p", [("p", 2)],
        # 2p-2 ones in one ramification lengthen an antiparallel twist, which
        # leaves (2p)3 for p >= 3; the parallel region grows as (2p-3,1)
        repaired="((((1,(-1,((({2p-3},1),-1),-1))),1),-1),-1,-1)"),
    # the branch is the tangle (-2)(1); "-2 1" would negate the whole run here
    _th("(2p+1)2(2q)", "{2p+1} 2 {2q}", "{2p+1},-2 -1,{2q}", "p+q", [("p", 1), ("q", 1)]),
    _th("(2p)1,(2q)1,2", "{2p} 1,{2q} 1,2", "{2p} 1,{2q} 1,-2,1", "p+q", [("p", 1), ("q", 1)]),
    _th("5(2p)", "5 {2p}",
        "((1,(-1,(((((1,(1,(-1,-1))),1),-1),-1),-1))),1^{2p-2})", "p", [("p", 2)]),
    _th("(2p+1)4(2q)", "{2p+1} 4 {2q}",
        "(((-1,(1,((((-1,((1^{2p}),1)),-1),1),1))),-1),(-1)^{2q})", "p+q", [("p", 1), ("q", 1)]),
    _th("3,3,(2p)+", "3,3,{2p}+",
        "-(1,1) 1 1,-(1,1) 1 1,((-1)^{2p+1}) 1", "p+2", [("p", 1)]),
    _th("3 2 2(2p)", "3 2 2 {2p}",
        "(((((1,(-1,(((-1,(1,1)),-1),-1))),1),-1),-1),(-1)^{2p})", "p+1", [("p", 1)]),
    _th("(2p)2 1 2(2q)", "{2p} 2 1 2 {2q}",
        "((((((((1,(1,(1^{2p}))),-1),-1),1),1),-1),-1),(-1)^{2q})", "p+q", [("p", 1), ("q", 1)]),
    _th("(2p)3,(2q)1,2", "{2p} 3,{2q} 1,2",
        "(((-1,(-1,-(1^{2p}))),1),1),((((-(1^{2q}),1),-1),1),1),-(1,1),1", "p+q",
        [("p", 1), ("q", 1)]),
    _th("(3,2)((2p)1,2)", "(3,2) ({2p} 1,2)",
        "(((1,-(1,1)),1),-(1,1),1) (((((-(1^{2p}),1),-1),1),1),-(1,1),1)", "p+2", [("p", 1)]),
)


def theorem(key: str) -> FamilyTheorem:
    for th in FAMILY_THEOREMS:
        if th.key == key:
            return th
    raise KeyError(f"no family theorem {key!r}")


@dataclass(frozen=True)
class TheoremCheck:
    key: str
    params: tuple
    template: str
    knot: str
    crossings: int
    template_a_d: int
    half_sigma: int
    expected: int
    same_knot: bool
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        """Change count on the template equals the formula and |sigma|/2."""
        return self.template_a_d == self.expected == self.half_sigma


def family_theorem_check(th: FamilyTheorem, repaired: bool = False, **pv) -> TheoremCheck:
    """Template change count, |sigma|/2 of the family knot and the formula value.

    ``same_knot`` records whether the template has the family knot's
    determinant and |sigma|; it is reported, not folded into ``ok``.
    """
    if not th.in_domain(**pv):
        raise OutOfDomain(f"{th.key}: {pv} outside {dict(th.domain)}")
    tsym = th.template_symbol(repaired=repaired, **pv)
    ksym = th.knot_symbol(**pv)
    td = build_diagram(tsym)
    kd = build_diagram(ksym)
    res = diagram_ascending_number(td)
    ks = matrix_oracle_signature(kd).sigma
    ts = matrix_oracle_signature(td).sigma
    # sigma and determinant must agree up to mirror image
    same = abs(ts) == abs(ks) and determinant(td) == determinant(kd)
    return TheoremCheck(th.key, tuple(sorted(pv.items())), tsym, ksym, td.n, res.a_d,
                        abs(ks) // 2, th.value(**pv), same, res.witness())


def theorem_diagrams_for(symbol: str, max_crossings: int = 16) -> list:
    """Template symbols of every theorem instance whose family knot is ``symbol``."""
    want = cw.print_canonical(cw.parse(symbol))
    out = []
    for th in FAMILY_THEOREMS:
        for pv in th.instances(max_crossings):
            if cw.print_canonical(cw.parse(th.knot_symbol(**pv))) == want and not th.minimal:
                out.append((th.key, pv, th.template_symbol(repaired=True, **pv)))
    return out


def record_bounds(record, max_crossings: int = 16) -> AscendingBounds:
    """Ascending bounds of a catalog knot, using the theorem templates of any
    family the knot belongs to as extra diagrams."""
    extras = [sym for _, _, sym in theorem_diagrams_for(record.conway, max_crossings)]
    return knot_ascending_bounds(record, extra_diagrams=extras)
