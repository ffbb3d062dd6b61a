import json

import pytest
from click.testing import CliRunner

from knotforge.cli import main


def run(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, res.output


def data(*args):
    code, out = run(*args)
    assert code == 0, out
    payload = json.loads(out)
    assert payload["schema"].startswith("knotforge")
    return payload


def test_parse():
    out = data("parse", ".2.2 0")
    assert out["canonical"] == "6*2.2 0" and out["crossings"] == 8
    assert out["ast"]["kind"] == "polyhedron"


def test_symbol_may_start_with_minus():
    out = data("parse", "-2 1,2")
    assert out["canonical"] == "-2 1,2" and out["crossings"] == 5
    assert data("bj", "-3")["u_bj"] == 1
    code, _ = run("parse", "3", "--bogus")
    assert code == 2


def test_parse_error_exit_one():
    code, out = run("parse", "2 x")
    assert code == 1
    assert json.loads(out)["error"]["type"] == "LexError"


def test_usage_error_exit_two():
    code, _ = run("verify", "--scope", "nowhere")
    assert code == 2
    code, _ = run("signature")
    assert code == 2


def test_build_formats():
    pd = data("build", "3")["pd"]
    assert len(pd) == 3 and all(len(x) == 4 for x in pd)
    gauss = data("build", "3", "--gauss")["gauss"]
    assert len(gauss[0]) == 6


def test_invariants():
    out = data("invariants", "3 2,2 2,3 1,3")
    assert (out["writhe"], out["W"], out["B"], out["sigma"]) == (-4, 9, 9, 2)
    assert sum(r["len"] for r in out["twist_regions"]) == 16


def test_signature():
    out = data("signature", "3:2:2")
    assert out["sigma"] == -4 and out["murasugi_lb"] == 2 and out["agree"]
    out = data("signature", "3,3,-2", "--method", "oracle")
    assert out["sigma"] == 6 and out["method"] == "matrix_oracle"
    code, out = run("signature", "3,3,-2", "--method", "traczyk")
    assert code == 1 and json.loads(out)["error"]["type"] == "NotAlternating"


def test_ascending():
    out = data("ascending", "2 2 1 2", "--all-starts")
    assert out["a_d"] == 3 and out["minimal_a_d"] == 2
    assert len(out["starts"]) == 28
    out = data("ascending", "8_2")
    assert out["text"] == "[2,3]" and out["listed_a"] == "[2,3]"
    out = data("ascending", "3 2 2", "--extra", "3,-2 -1,2")
    assert out["extra"][0]["a_d"] == 2


def test_family():
    out = data("family", "(2p1+1):(2p2):(2p3)", "--formula")
    assert out["formula"] == "-2p1-2p2-2p3+2"
    out = data("family", "3 2", "--params", "p1=2,p2=2")
    assert out["member"] == "5 4" and out["sigma"] == out["formula_value"]
    out = data("family", "7_5", "--check-grid", "2")
    assert out["ok"]
    code, _ = run("family", "10_84", "--check-grid", "1")
    assert code == 1
    code, _ = run("family", "3 2", "--params", "p1")
    assert code == 2


def test_bj():
    out = data("bj", "5 4")
    assert out["u_bj"] == 2 and out["fraction"] == "21/4"
    assert out["witness_path"][-1] == "1/0"
    code, _ = run("bj", "3,3,2")
    assert code == 1


def test_catalog():
    assert data("catalog", "7_6")["a_d"] == 2
    assert data("catalog", "--section", "2")["count"] == 35
    code, out = run("catalog", "--dump", "families")
    assert code == 0 and out.startswith("name,")
    code, out = run("catalog", "--section", "2", "--csv")
    assert out.splitlines()[0].startswith('"name"')


def test_csv_output():
    code, out = run("signature", "3", "--csv")
    head, row = out.splitlines()
    assert '"sigma"' in head and '"-2"' in row


def test_verify_section_two():
    out = data("verify", "--scope", "section2")
    assert out["ok"] and out["counts"]["pass"] == 35


def test_verify_fails_on_known_deviation():
    code, out = run("verify", "--scope", "families", "--grid", "1", "--failures-only")
    assert code == 1
    report = json.loads(out)
    assert [c["id"] for c in report["checks"]] == ["families/10_84", "families/10_93"]
    # counts describe the whole run, not the filtered listing
    assert report["counts"]["fail"] == 2 and report["counts"]["pass"] > 0


def test_verify_csv():
    code, out = run("verify", "--scope", "anchors", "--csv")
    assert code == 0
    assert out.splitlines()[0] == '"id","status","detail"'
