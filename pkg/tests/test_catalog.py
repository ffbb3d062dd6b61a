import pytest

from knotforge import catalog
from knotforge.catalog import Bound


def test_row_counts():
    counts = {}
    for r in catalog.all_records():
        counts[r.section] = counts.get(r.section, 0) + 1
    assert counts == {2: 35, 3: 49, 4: 165}
    assert len(catalog.records_in(2)) == 35


def test_lookup_examples():
    r = catalog.lookup("7_6")
    assert (r.conway, str(r.u), r.a_d, str(r.a)) == ("2 2 1 2", "1", 2, "2")
    r = catalog.lookup("10_11")
    assert str(r.u) == "[2,3]" and str(r.a) == "(2,3)" and r.paren_style == "round"
    r = catalog.lookup("9_49")
    assert r.conway == "-2 0:-2 0:-2 0" and str(r.u) == "3" and str(r.a) == "3"


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog.lookup("11_1")


def test_corrected_rows_keep_raw_text():
    r = catalog.lookup("10_63")
    assert r.conway == "4,2 1,2 1" and r.sic and "12" in r.conway_raw
    r = catalog.lookup("10_133")
    assert r.conway == "2 3,2 1,-2" and r.sic


def test_family_corrections():
    assert catalog.family_row("9_34").family.startswith("8*")
    assert catalog.family_row("10_121").family.startswith("9*")
    assert catalog.family_row("8_11").family == "(2p1+1) (2p2) 1 (2p3)"
    raw = catalog.family_row("8_11").raw["family_raw"]
    assert raw.count("(") != raw.count(")")


def test_bounds_parse():
    assert Bound.parse("[2,3]") == Bound((2, 3), "square")
    assert Bound.parse("(2,3,4)").upper == 4
    assert Bound.parse("2").exact
    with pytest.raises(ValueError):
        Bound.parse("[3,2]")


def test_round_brackets_only_with_open_unknotting():
    for r in catalog.all_records():
        assert r.a.lower <= r.a.upper
        if r.a.paren == "round":
            assert not r.u.exact, r.name


def test_dump():
    text = catalog.dump("knots")
    assert text.splitlines()[0].startswith("name,")
    assert len(text.splitlines()) == 250
    assert catalog.dump("families").count("\n") == len(catalog.family_rows()) + 1
