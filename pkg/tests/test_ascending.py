import pytest
from hypothesis import given, strategies as st

from knotforge import catalog
from knotforge.ascending import (
    AscendingBounds, InconsistentBounds, based, descending_change_count,
    diagram_ascending_number, is_twist_knot, knot_ascending_bounds, make_descending,
    minimal_ascending_number, wrong_crossings,
)
from knotforge.builder import build_diagram
from knotforge.diagram import DiagramError, MultiComponent, orient


def brute_force(d):
    """Independent minimum: walk each start with explicit over/under bookkeeping."""
    best = None
    for direction in (1, -1):
        for e in d.edges():
            bod = based(d, e, direction)
            fixed = make_descending(bod)
            changed = sum(1 for a, b in zip(d.over, fixed.over) if a != b)
            best = changed if best is None else min(best, changed)
    return best


def test_trefoil_starts():
    # starting just before an over-crossing needs one change, before an under-crossing two
    d = build_diagram("3")
    counts = [descending_change_count(based(d, e, direction))
              for direction in (1, -1) for e in d.edges()]
    assert min(counts) == 1
    assert sorted(set(counts)) == [1, 2]
    assert counts.count(1) == counts.count(2)


def test_descending_diagram_is_idempotent():
    d = build_diagram("3 2,2 2,3 1,3")
    for e in d.edges()[:6]:
        bod = based(d, e)
        after = make_descending(bod)
        assert descending_change_count(based(after, e)) == 0
        assert wrong_crossings(based(after, e)) == []


@pytest.mark.parametrize("symbol, a_d", [("9", 4), ("6 2", 3), ("3", 1), ("5", 2)])
def test_diagram_ascending_number(symbol, a_d):
    assert diagram_ascending_number(build_diagram(symbol)).a_d == a_d


@pytest.mark.parametrize("symbol, a_d", [("2 2 1 2", 2), ("2 2 2 2", 2), ("6 2", 3)])
def test_minimum_over_minimal_diagrams(symbol, a_d):
    assert minimal_ascending_number(symbol).a_d == a_d


def test_witness_is_deterministic_and_attains_minimum():
    d = build_diagram("2 2 1 2")
    res = diagram_ascending_number(d, all_starts=True)
    assert res == diagram_ascending_number(d, all_starts=True)
    assert descending_change_count(based(d, res.basepoint, res.direction)) == res.a_d
    assert len(res.table) == 2 * 2 * d.n
    assert min(c for _, _, c in res.table) == res.a_d


def test_errors():
    with pytest.raises(MultiComponent):
        diagram_ascending_number(build_diagram("2"))
    with pytest.raises(DiagramError):
        based(build_diagram("3"), "no such edge")


@given(st.sampled_from([r.conway for r in catalog.all_records() if r.crossings <= 8]))
def test_matches_brute_force(symbol):
    d = build_diagram(symbol)
    res = diagram_ascending_number(d)
    assert 0 <= res.a_d <= d.n
    assert res.a_d == brute_force(d)


@pytest.mark.parametrize("obj, expected", [
    ("5 2", True), ("8 2", True), ("3", True), ("2 2", True), ("3 2 2", False),
    ("-5 2", True), ("-5 -2", False), ("3 3", False), ("3,3,2", False), (catalog.lookup("7_2"), True),
])
def test_twist_knots(obj, expected):
    assert is_twist_knot(obj) is expected


@pytest.mark.parametrize("name, text", [("3_1", "1"), ("8_2", "[2,3]"), ("9_40", "[2,3,4]")])
def test_bounds_examples(name, text):
    b = knot_ascending_bounds(catalog.lookup(name))
    assert str(b) == text
    assert any(w.source == "minimal diagram" for w in b.witnesses)


def test_bounds_use_extra_diagrams():
    rec = catalog.lookup("7_5")
    plain = knot_ascending_bounds(rec)
    better = knot_ascending_bounds(rec, extra_diagrams=["3,-2 -1,2"])
    assert plain.upper == 3 and better.upper == 2
    assert better.exact and str(better) == "2"


def test_bridge_bound():
    b = knot_ascending_bounds(catalog.lookup("9_40"), bridge=3)
    assert b.lower == 2


def test_inconsistent_bounds_raise():
    with pytest.raises(InconsistentBounds):
        AscendingBounds(3, 2, ())
