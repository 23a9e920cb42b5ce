import json
from pathlib import Path

import pytest

from tamegamma.cli import main
from tamegamma.documents import dumps, from_dict, load, parse_fiber_spec, rep_to_dict
from tamegamma.errors import SyntaxParseError
from tamegamma.laurent import parse_fraction
from tamegamma.suites import fixture_names, load_fixture
from tamegamma.syntax import parse_element, parse_ring

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def inp(name):
    return INPUTS / name


# -- compute ----------------------------------------------------------------------------------------


def test_gamma_of_unramified(capsys):
    code, out, _ = run(capsys, "compute", "--input", inp("unramified_q3.json"), "--factor", "gamma")
    assert code == 0
    assert out.strip() == "(-6*X + 12*X^2) / (1 - 6*X)"


def test_swan_of_tame_input(capsys):
    code, out, _ = run(capsys, "compute", "--input", inp("unramified_q3.json"), "--factor", "swan")
    assert (code, out.strip()) == (0, "0")


def test_epsilon0_of_quadratic(capsys):
    code, out, _ = run(capsys, "compute", "--input", inp("quadratic_q3.json"), "--factor", "epsilon0")
    assert code == 0
    value, exponent = out.strip().splitlines()
    doc = load(inp("quadratic_q3.json"))
    z = doc.ring.root_of_unity(3)
    assert parse_element(value, doc.ring) == z - z ** 2
    assert exponent == "exponent: 1"


def test_json_output(capsys):
    code, out, _ = run(capsys, "compute", "--input", inp("quadratic_q3.json"), "--factor", "epsilon", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["exponent"] == 1 and rec["factor"] == "epsilon"


def test_l_factor_of_special(capsys):
    code, out, _ = run(capsys, "compute", "--input", inp("special_q3.json"), "--factor", "l")
    assert code == 0 and out.strip() == "1 / (1 - 1/3*X)"


def test_swan_and_artin_with_filtration(capsys):
    assert run(capsys, "compute", "--input", inp("swan_half.json"), "--factor", "swan")[1].strip() == "1"
    assert run(capsys, "compute", "--input", inp("swan_half.json"), "--factor", "artin")[1].strip() == "1"


def test_non_integral_swan_exits_3(capsys):
    code, _, err = run(capsys, "compute", "--input", inp("swan_third.json"), "--factor", "swan")
    assert code == 3 and "NonIntegralSwan" in err


def test_wild_gamma_is_refused(capsys):
    code, _, err = run(capsys, "compute", "--input", inp("swan_half.json"), "--factor", "gamma")
    assert code == 3 and "WildUnsupported" in err


def test_corrupted_document_exits_3(capsys):
    code, _, err = run(capsys, "compute", "--input", inp("corrupted.json"), "--factor", "gamma")
    assert code == 3 and "RelationViolated" in err


def test_parse_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "compute", "--input", bad, "--factor", "gamma")[0] == 2
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"field": {"p": 3}, "ring": "Q"}))
    assert run(capsys, "compute", "--input", missing, "--factor", "gamma")[0] == 2
    ring = tmp_path / "ring.json"
    ring.write_text(json.dumps({"field": {"p": 3}, "ring": "Cyclotomic(", "rep": {"phi": [["1"]], "sigma": [["1"]]}}))
    assert run(capsys, "compute", "--input", ring, "--factor", "gamma")[0] == 2
    assert run(capsys, "compute", "--input", tmp_path / "nope.json", "--factor", "gamma")[0] == 2


def test_gamma_at_a_fiber(capsys):
    fx = Path(__file__).resolve().parent.parent / "src" / "tamegamma" / "fixtures"
    code, out, _ = run(capsys, "compute", "--input", fx / "laurent_z24_quadratic_q3.json",
                       "--factor", "epsilon0", "--fiber", "mod 73, T=5")
    assert code == 0 and out.splitlines()[1] == "exponent: 1"


# -- specialize --------------------------------------------------------------------------------------------


def test_specialize_polynomial_family_at_zero(capsys):
    code, out, _ = run(capsys, "specialize", "--input", inp("poly_family_q3.json"), "--fiber", "T=0", "--factor", "gamma")
    assert code == 0 and out.strip().endswith("verdict: equal")


def test_specialize_with_inline_fiber(capsys):
    code, out, _ = run(capsys, "specialize", "--input", inp("poly_family_q3.json"), "--fiber", "Q:T=7")
    assert code == 0 and "verdict: equal" in out


def test_specialize_mod_seven(capsys):
    fx = Path(__file__).resolve().parent.parent / "src" / "tamegamma" / "fixtures"
    code, out, _ = run(capsys, "specialize", "--input", fx / "integral_z3_mod49_quadratic_q3.json",
                       "--fiber", "mod 7, z3=2", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "equal" and rec["kind"] == "char7"


# -- verify ------------------------------------------------------------------------------------------------


def test_verify_reports_counts(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gauss", "--trials", "4", "--seed", "1")
    assert code == 0 and out.strip() == "gauss: 4/4 pass (seed 1)"


def test_verify_is_deterministic(capsys):
    args = ("verify", "--suite", "thm61", "--trials", "5", "--seed", "42", "--json")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second and len(first.splitlines()) == 5


def test_verify_workers_keep_case_order(capsys):
    args = ("verify", "--suite", "multiplicativity", "--trials", "6", "--seed", "3", "--json")
    serial = run(capsys, *args)[1]
    pooled = run(capsys, *args, "--workers", "2")[1]
    assert serial == pooled


# -- documents --------------------------------------------------------------------------------------------


def test_fixture_corpus_shape():
    names = fixture_names()
    assert len(names) >= 20
    ell_fibers = 0
    for name in names:
        doc = from_dict(load_fixture(name))
        assert len(doc.fibers) >= 3
        ell_fibers += sum(1 for fb in doc.fibers if fb.hom.target.characteristic)
    assert ell_fibers >= 5


def test_document_round_trip():
    doc = load(inp("special_q3.json"))
    again = from_dict(json.loads(dumps(rep_to_dict(doc.rep))))
    assert again.rep.phi == doc.rep.phi and again.rep.N == doc.rep.N


def test_fiber_spec_parsing():
    doc = load(inp("poly_family_q3.json"))
    fb = parse_fiber_spec("Q:T=3", doc.ring)
    assert fb.hom(doc.ring.lookup("T")) == 3
    with pytest.raises(SyntaxParseError):
        parse_fiber_spec("Q:T", doc.ring)


def test_gamma_text_round_trips(capsys):
    out = run(capsys, "compute", "--input", inp("induced_q3.json"), "--factor", "gamma", "--json")[1]
    text = json.loads(out)["value"]
    R = parse_ring("Cyclotomic(24)")
    assert str(parse_fraction(text, R)) == text
