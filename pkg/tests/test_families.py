import pytest
from hypothesis import given, strategies as st

from knotforge import catalog
from knotforge import conway as cw
from knotforge import families as fam
from knotforge.builder import build_diagram
from knotforge.diagram import DiagramError
from knotforge.signature import determinant, matrix_oracle_signature, traczyk_signature


def canon(s):
    return cw.print_canonical(s if not isinstance(s, str) else cw.parse(s))


def specs():
    out = []
    for row in catalog.family_rows():
        try:
            spec = fam.spec_for_row(row)
            fam.derive_signature_formula(spec)
        except (fam.FamilyError, DiagramError, cw.ConwayError):
            continue
        out.append((row.name, spec))
    return out


SPECS = specs()


# ---------------------------------------------------------------- expansion

def test_expand_both_slots():
    spec = fam.FamilySpec.from_symbol("3 2")
    assert canon(fam.expand_family(spec, {"p1": 1, "p2": 1})) == "5 4"


def test_expand_identity():
    spec = fam.FamilySpec.from_symbol("3")
    assert canon(fam.expand_family(spec, {})) == "3"


def test_expand_keeps_sign():
    spec = fam.FamilySpec.from_symbol("-3 0:2:2")
    tree = fam.expand_family(spec, {"p1": 1})
    assert fam.node_at(tree, spec.slots[0][1]) == cw.IntegerTangle(-5)


def test_expand_rejects_bad_assignments():
    spec = fam.FamilySpec.from_symbol("3 2")
    with pytest.raises(fam.OutOfDomain):
        fam.expand_family(spec, {"p1": -1})
    with pytest.raises(fam.OutOfDomain):
        fam.expand_family(spec, {"p9": 1})


def test_unit_twists_cannot_be_parameters():
    with pytest.raises(fam.FamilyError):
        fam.FamilySpec(cw.parse("3 1"), (("p1", (1,)),))


def test_pattern_reading():
    spec = fam.FamilySpec.from_pattern("(2p1+1) (2p2) 1 (2p3)", "3 2 1 2")
    assert spec.params == ("p1", "p2", "p3")
    assert [spec.p0(p) for p in spec.params] == [1, 1, 1]
    assert spec.display() == "(2p1+1) (2p2) 1 (2p3)"
    with pytest.raises(fam.FamilyError):
        fam.FamilySpec.from_pattern("(2p1+1) (2p2)", "3 3")


def test_increments_from_p():
    spec = fam.FamilySpec.from_pattern("(2p1+1) (2p2)")
    assert fam.increments_from_p(spec, {"p1": 2, "p2": 3}) == {"p1": 1, "p2": 2}
    with pytest.raises(fam.OutOfDomain):
        fam.increments_from_p(spec, {"p1": 0, "p2": 1})


# ------------------------------------------------------------------ formulas

def test_colon_family_formula():
    f = fam.derive_signature_formula(fam.FamilySpec.from_pattern("(2p1+1):(2p2):(2p3)"))
    assert f.constant == -4
    assert [c for _, c in f.coeffs] == [-2, -2, -2]
    assert str(f) == "-2p1-2p2-2p3+2"


def test_two_bridge_family_formula():
    f = fam.derive_signature_formula(fam.FamilySpec.from_pattern("(2p1+1) (2p2)"))
    assert f.coefficient("p1") == 0 and abs(f.coefficient("p2")) == 2


def test_pretzel_formula():
    f = fam.derive_signature_formula(fam.FamilySpec.from_pattern("(2p1+1),(2p2+1),(2p3)"))
    assert f.coefficient("p3") == 0
    assert f.coefficient("p1") == f.coefficient("p2") == 2
    assert f.p_form() == "2p1+2p2"


def test_sixteen_crossing_formula():
    spec = fam.FamilySpec.from_symbol("3 2,2 2,3 1,3")
    f = fam.derive_signature_formula(spec)
    assert f.constant == 2
    nonzero = {pid: c for pid, c in f.coeffs if c}
    assert sorted(nonzero.values()) == [-2, 2, 2]


def test_formula_matches_rebuilt_knot():
    spec = fam.FamilySpec.from_symbol("3 2 2")
    f = fam.derive_signature_formula(spec)
    tree = fam.expand_family(spec, {"p1": 1, "p3": 1})
    assert canon(tree) == "5 2 4"
    assert fam.evaluate_formula(f, {"p1": 1, "p3": 1}) == traczyk_signature(build_diagram(tree)).sigma


def test_anchoring_on_all_rows():
    for name, spec in SPECS:
        f = fam.derive_signature_formula(spec)
        assert fam.evaluate_formula(f, {}) == traczyk_signature(build_diagram(spec.generating)).sigma, name
        assert all(c % 2 == 0 for _, c in f.coeffs)


@pytest.mark.parametrize("name", ["7_5", "6_3", "5_2", "8_11"])
def test_unknotting_rows(name):
    assert fam.unknotting_table_check(catalog.family_row(name)).ok


def test_row_without_unknotting_formula():
    chk = fam.unknotting_table_check(catalog.family_row("4_1"))
    assert chk.error == "no unknotting formula"


def test_magnitude_check_reports_sign():
    chk = fam.magnitude_check(catalog.family_row("5_2"))
    assert chk.ok and chk.sign in (1, -1)


# ------------------------------------------------------------------ step law

@given(st.sampled_from(SPECS), st.data())
def test_step_law(named, data):
    name, spec = named
    pid = data.draw(st.sampled_from(spec.params))
    at = {p: data.draw(st.integers(0, 1)) for p in spec.params}
    m = fam.measure_step(spec, pid, at)
    assert m.ok, (name, pid, at, m)
    f = fam.derive_signature_formula(spec)
    assert m.d_sigma == f.coefficient(pid)


@given(st.sampled_from(SPECS + [("link", fam.FamilySpec.from_symbol("4")),
                                ("link", fam.FamilySpec.from_symbol("2 2 2"))]), st.data())
def test_component_preservation(named, data):
    _, spec = named
    base = build_diagram(spec.generating).num_components()
    at = {p: data.draw(st.integers(0, 2)) for p in spec.params}
    assert build_diagram(fam.expand_family(spec, at)).num_components() == base


# ------------------------------------------------------------ expressions

def test_expression_evaluator():
    env = {"p1": 3, "p2": 1}
    assert fam.evaluate_expression("2*p1-2*p2+2", env) == 6
    assert fam.evaluate_expression("abs(p1-p2) == 2 and p1 > p2", env) is True
    with pytest.raises(fam.FamilyError):
        fam.evaluate_expression("__import__('os')", env)
    with pytest.raises(fam.FamilyError):
        fam.evaluate_expression("p1.real", env)


def test_expand_template():
    assert fam.expand_template("1^{2p-2},(-1)^{2q},{2p+1}", p=2, q=1) == "1,1,-1,-1,5"
    with pytest.raises(fam.OutOfDomain):
        fam.expand_template("1^{2p-2}", p=1)


# ------------------------------------------------------------------ theorems

def test_eleven_theorems():
    assert len(fam.FAMILY_THEOREMS) == 11
    for th in fam.FAMILY_THEOREMS:
        assert th.instances(16), th.key


@pytest.mark.parametrize("th", fam.FAMILY_THEOREMS, ids=lambda t: t.key)
def test_smallest_instance(th):
    pv = th.instances(16)[0]
    r = fam.family_theorem_check(th, **pv)
    assert r.ok, r
    assert build_diagram(r.template).num_components() == 1


def test_odd_torus_family():
    r = fam.family_theorem_check(fam.theorem("2p+1"), p=2)
    assert (r.template_a_d, r.half_sigma, r.expected) == (2, 2, 2)


def test_pretzel_template():
    r = fam.family_theorem_check(fam.theorem("(2p+1)2(2q)"), p=1, q=1)
    assert r.template == "3,-2 -1,2" and r.template_a_d == 2 and r.same_knot


def test_literal_pretzel_text_is_another_knot():
    # "-2 1" negates the whole run, so this is not the tangle (-2)(1)
    d = build_diagram("3,-2 1,2")
    assert determinant(d) == 3 != determinant(build_diagram("3 2 2"))


def test_three_three_plus_family():
    r = fam.family_theorem_check(fam.theorem("3,3,(2p)+"), p=1)
    assert r.template_a_d == 3 == r.expected


def test_even_three_literal_and_repaired_templates():
    th = fam.theorem("(2p)3")
    lit = fam.family_theorem_check(th, p=3)
    assert lit.ok and not lit.same_knot
    for p in (2, 3, 4):
        rep = fam.family_theorem_check(th, repaired=True, p=p)
        assert rep.ok and rep.same_knot and rep.template_a_d == p


def test_out_of_domain():
    with pytest.raises(fam.OutOfDomain):
        fam.family_theorem_check(fam.theorem("(2p)3"), p=1)
    with pytest.raises(KeyError):
        fam.theorem("nope")


def test_theorem_diagrams_feed_bounds():
    rec = catalog.lookup("7_5")
    assert fam.theorem_diagrams_for(rec.conway)
    assert fam.record_bounds(rec).upper == 2
