import pytest
from hypothesis import given

from knotforge import catalog
from knotforge import conway as cw
from knotforge.builder import SlotMismatch, build_diagram, compose, flype_variants
from knotforge.polyhedra import template
from knotforge.signature import determinant, matrix_oracle_signature
from knotforge.tangles import BOUNDARY, integer_tangle, numerator

from strategies import asts, rational_symbols


def test_zero_tangle_has_no_crossings():
    t = integer_tangle(0)
    assert t.n == 0


def test_three_twist_closes_to_trefoil():
    d = numerator(integer_tangle(3))
    assert d.n == 3 and d.num_components() == 1 and d.is_alternating()


def test_negative_twist_is_mirror():
    a = numerator(integer_tangle(2))
    b = numerator(integer_tangle(-2))
    assert a.writhe() == -b.writhe()
    assert b.over == a.mirror().over or b.writhe() == a.mirror().writhe()


def test_boundary_has_four_ends():
    assert len(BOUNDARY) == 4
    assert sorted(integer_tangle(4).boundary) == sorted(BOUNDARY)


@pytest.mark.parametrize("symbol, n, comps, alternating", [
    ("2 2", 4, 1, True), ("2 2 1 2", 7, 1, True), ("1", 1, 1, True), ("2", 2, 2, True),
    ("3:2:2", 10, 1, True), ("2 2 2 2", 8, 1, True), ("3,3,-2", 8, 1, False),
    ("4", 4, 2, True), ("6*", 6, 3, True), ("8*", 8, 1, True),
])
def test_closures(symbol, n, comps, alternating):
    d = build_diagram(symbol)
    assert d.n == n
    assert d.num_components() == comps
    assert d.is_alternating() == alternating


def test_figure_eight_and_pretzel_determinants():
    # independent of conventions: det 4_1 = 5, det 8_19 = 3
    assert determinant(build_diagram("2 2")) == 5
    assert determinant(build_diagram("3,3,-2")) == 3


def test_handedness_pin():
    assert matrix_oracle_signature(build_diagram("3")).sigma == -2
    assert build_diagram("3").writhe() == 3


def test_every_catalog_symbol_builds_a_planar_knot():
    for rec in catalog.all_records():
        d = build_diagram(rec.conway)
        assert d.n == rec.crossings, rec.name
        assert d.num_components() == 1, rec.name
        assert d.euler_ok(), rec.name


def test_link_table_symbols_have_several_components():
    for row in catalog.link_rows():
        if row.components is None:
            continue
        d = build_diagram(row.conway)
        assert d.num_components() >= 2, row.name


def test_polyhedron_has_no_tangle_form():
    with pytest.raises(SlotMismatch):
        compose(cw.parse("8*"))


def test_crossing_tags_follow_paths():
    d = build_diagram("3 2")
    assert sorted({tag[0] for tag in d.tags}) == [(0,), (1,)]
    d = build_diagram("8*2:2 0")
    assert {tag[0][0] for tag in d.tags} == set(range(8))


# The slot orders and bare 6* layouts below were calibrated once against the
# tabulated knots (signatures, unknotting numbers, link component counts).
GOLDEN_EDGES = {
    6: ((1, 2), (0, 2), (0, 3), (3, 1), (2, 3), (0, 1)),
    8: ((0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (3, 4), (0, 4), (4, 1)),
    9: ((0, 1), (1, 4), (4, 3), (3, 0), (0, 2), (2, 5), (5, 3), (1, 2), (4, 5)),
    10: ((0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (3, 4), (0, 4), (4, 5), (0, 5), (5, 1)),
}
GOLDEN_FLIPS = {6: (0, 2), 8: (0, 2, 4), 9: (1,), 10: ()}


@pytest.mark.parametrize("base", [6, 8, 9, 10])
def test_slot_tables_are_frozen(base):
    t = template(base)
    assert t.edges == GOLDEN_EDGES[base]
    assert t.flips == GOLDEN_FLIPS[base]
    d = build_diagram(f"{base}*")
    assert d.n == base and d.is_alternating() and d.is_reduced() and d.euler_ok()


def test_bare_layouts_are_frozen():
    assert cw.BARE_LAYOUTS == {
        ".": ((1, False), (0, False), (4, False), (3, True)),
        ":": ((1, False), (2, True), (4, False)),
    }
    assert cw.print_canonical(cw.parse("3:2:2")) == "6*1.3.2 0.1.2"


@pytest.mark.parametrize("symbol", ["2 2 1 2", "3,3,-2", "3 2,2 2,3 1,3", "8*2:2 0",
                                    "2 1,2 1,2+", "(3,2) (2 1,2)"])
def test_flype_variants_preserve_the_knot(symbol):
    base = build_diagram(symbol)
    det, sig = determinant(base), abs(matrix_oracle_signature(base).sigma)
    seen = 0
    for d in flype_variants(symbol, limit=60):
        seen += 1
        assert d.n == base.n and d.num_components() == 1
        assert determinant(d) == det
        assert abs(matrix_oracle_signature(d).sigma) == sig
    assert seen >= 1


@given(asts)
def test_crossing_conservation(ast):
    try:
        d = build_diagram(ast)
    except SlotMismatch:
        return
    assert d.n == cw.crossing_count(ast)
    assert d.euler_ok()


@given(rational_symbols)
def test_positive_symbols_are_alternating(symbol):
    d = build_diagram(symbol)
    assert d.is_alternating()
