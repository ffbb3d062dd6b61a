import pytest
from hypothesis import given, strategies as st

from knotforge import catalog
from knotforge.builder import build_diagram
from knotforge.diagram import orient, reverse
from knotforge.signature import (
    NotAlternating, NotReduced, SignatureValue, determinant, matrix_oracle_signature,
    murasugi_lower_bound, traczyk_signature,
)

from strategies import rational_symbols

# Goeritz-oracle values, agreeing in magnitude with standard knot tables.
FROZEN = {
    "3": (-2, 3), "2 2": (0, 5), "3 2": (-2, 7), "2 2 1 2": (-2, 19), "3:2:2": (-4, 65),
    "3,3,-2": (6, 3), "8*2:2 0": (-2, 103), ".2.2 0": (2, 35), "(3,2) (2 1,2)": (-6, 71),
    "9*": (-2, 75), "3 2,2 2,3 1,3": (2, 803), "4 3": (4, 13), "2 2 2 2": (0, 29),
}


@pytest.mark.parametrize("symbol", sorted(FROZEN))
def test_frozen_oracle_values(symbol):
    d = build_diagram(symbol)
    assert (matrix_oracle_signature(d).sigma, determinant(d)) == FROZEN[symbol]


@pytest.mark.parametrize("symbol, sigma", [("3 2,2 2,3 1,3", 2), ("3:2:2", -4), ("3", -2)])
def test_combinatorial_formula(symbol, sigma):
    v = traczyk_signature(build_diagram(symbol))
    assert v == SignatureValue(sigma, "traczyk")


def test_combinatorial_formula_needs_alternating():
    with pytest.raises(NotAlternating):
        traczyk_signature(build_diagram("3,3,-2"))


def test_combinatorial_formula_needs_reduced():
    with pytest.raises(NotReduced):
        traczyk_signature(build_diagram("1"))


def test_oracle_handles_non_alternating():
    v = matrix_oracle_signature(build_diagram("3,3,-2"))
    assert v.method == "matrix_oracle"
    assert murasugi_lower_bound(v) == 3 == catalog.lookup("8_19").u.lower


@pytest.mark.parametrize("sigma, lb", [(0, 0), (-4, 2), (SignatureValue(6, "x"), 3)])
def test_murasugi(sigma, lb):
    assert murasugi_lower_bound(sigma) == lb


def test_seven_five_bound():
    assert murasugi_lower_bound(matrix_oracle_signature(build_diagram("3 2 2"))) == 2


def test_agreement_on_catalog():
    checked = 0
    for rec in catalog.all_records():
        d = build_diagram(rec.conway)
        o = matrix_oracle_signature(d).sigma
        assert o % 2 == 0
        assert abs(o) // 2 <= rec.u.upper, rec.name
        if d.is_alternating() and d.is_reduced():
            assert traczyk_signature(d).sigma == o, rec.name
            checked += 1
    assert checked > 180


@given(rational_symbols)
def test_mirror_antisymmetry(symbol):
    d = build_diagram(symbol)
    if d.num_components() != 1 or not d.is_reduced():
        return
    m = d.mirror()
    assert traczyk_signature(m).sigma == -traczyk_signature(d).sigma
    assert matrix_oracle_signature(m).sigma == -matrix_oracle_signature(d).sigma


@given(st.sampled_from([r.conway for r in catalog.all_records()]))
def test_orientation_and_shading_invariance(symbol):
    d = build_diagram(symbol)
    od = orient(d)
    assert reverse(od).writhe() == od.writhe()
    assert matrix_oracle_signature(d, shaded=0) == matrix_oracle_signature(d, shaded=1)
