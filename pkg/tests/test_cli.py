import json

import pytest
from hypothesis import given, strategies as st

from conftest import daimon_par
from mllnet.canon import canonical_form
from mllnet.cli import SCHEMA, run
from mllnet.enumkit import enum_proofs
from mllnet.formula import all_formulas, format_formula, parse_formula
from mllnet.net import daimon_net, net_from, parallel
from mllnet.netio import format_net, parse_net
from mllnet.proofs import format_proof, parse_proof

TENSOR2 = net_from([("dai", [], ["p1"]), ("dai", [], ["p2"]), ("tensor", ["p1", "p2"], ["p"])], ["p"])


@pytest.fixture
def files(tmp_path):
    def write(name, net):
        p = tmp_path / name
        p.write_text(format_net(net))
        return str(p)
    return write


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_ortho_prints_witness(files, capsys):
    code, out = call(capsys, "ortho", files("a.net", daimon_net(1)), files("b.net", TENSOR2))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "orthogonal: yes" and len(lines) == 4


def test_ortho_reports_stuck_class(files, capsys):
    code, out = call(capsys, "ortho", files("a.net", daimon_net(1)), files("b.net", daimon_par()), "--json")
    assert code == 1
    rep = json.loads(out)
    assert rep["schema"] == SCHEMA and rep["orthogonal"] is False
    assert rep["stuck"] == "MultipleZeroDaimons(2)"


def test_ortho_budget_is_indeterminate(files, capsys):
    code, _ = call(capsys, "ortho", files("a.net", daimon_net(2)), files("b.net", parallel(TENSOR2, TENSOR2)),
                   "--max-states", "1", "--exhaustive")
    assert code == 3


def test_check_disconnected(files, capsys):
    code, out = call(capsys, "check", files("bad.net", daimon_par()))
    assert code == 1
    assert "disconnected" in out


def test_check_against_sequent(files, capsys):
    f = files("d.net", daimon_net(2))
    assert call(capsys, "check", f, "--against", "X, Y")[0] == 0
    assert call(capsys, "check", f, "--against", "X")[0] == 2


def test_tests_prints_one_net(capsys):
    code, out = call(capsys, "tests", "X*Y")
    assert code == 0
    assert out.count("# test") == 1
    body = out.split("\n", 1)[1]
    assert canonical_form(parse_net(body)) == canonical_form(
        net_from([("dai", [], ["a", "b"]), ("par", ["a", "b"], ["c"])], ["c"]))


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.net"
    bad.write_text("dai a\nwibble a b\nconclusions: a\n")
    code = run(["check", str(bad)])
    err = capsys.readouterr().err
    assert code == 2 and "bad.net:2" in err and "wibble" in err
    assert run(["check", str(tmp_path / "missing.net")]) == 2
    assert run(["tests", "X*"]) == 2
    assert run(["experiment", "properties"]) == 2


def test_seq_and_deseq_round_trip(files, tmp_path, capsys):
    f = files("d.net", daimon_net(2))
    code, out = call(capsys, "seq", f, "--sequent", "X, X^", "--mll")
    assert code == 0
    pf = tmp_path / "p.proof"
    pf.write_text(out)
    code, out = call(capsys, "deseq", str(pf))
    assert code == 0 and canonical_form(parse_net(out)) == canonical_form(daimon_net(2))
    assert call(capsys, "seq", f, "--sequent", "X, Y", "--mll") == (1, "FAIL\n")


def test_realize_report(files, tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out = call(capsys, "realize", files("d.net", daimon_net(2)), "--sequent", "X, Y", "--basis", "par",
                     "--mode", "basis", "--report", str(rep))
    assert code == 1 and out.startswith("fails")
    data = json.loads(rep.read_text())
    assert data["schema"] == SCHEMA and data["passed"] is False
    assert any(o["stuck"] for o in data["opponents"] if o["verdict"] is False)
    code, out = call(capsys, "realize", files("d.net", daimon_net(2)), "--sequent", "X, X^", "--basis", "par")
    assert code == 0 and out.startswith("passes all finite opponents")


def test_enum_emits_files(tmp_path, capsys):
    code, _ = call(capsys, "enum", "--sequent", "X*Y, Z", "--emit", str(tmp_path / "out"))
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == [f"net00{i}.net" for i in range(1, 6)]


def test_normalize_and_dot(files, capsys):
    f = files("c.net", net_from([("dai", [], ["p", "q"]), ("cut", ["p", "q"], [])], []))
    code, out = call(capsys, "normalize", f)
    assert code == 0 and out.startswith("# 1 states, 1 normal forms")
    code, out = call(capsys, "dot", f)
    assert code == 0 and out.startswith("digraph")


def test_experiment_adequacy_small(capsys):
    code, out = call(capsys, "experiment", "adequacy", "--max-rules", "2", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["total"] == 52


def test_output_is_byte_stable(files, capsys):
    argv = ["realize", files("t.net", TENSOR2), "--sequent", "X*Y", "--json"]
    first = call(capsys, *argv)
    assert call(capsys, *argv) == first


def test_unicode_input_ascii_output(capsys):
    _, a = call(capsys, "tests", "X⊗Y")
    _, b = call(capsys, "tests", "X*Y")
    assert a == b and "⊗" not in a


@given(st.sampled_from(all_formulas(["X", "Y"], 2)))
def test_formula_round_trip(a):
    assert parse_formula(format_formula(a)) == a


def test_proof_round_trip():
    for p in enum_proofs(["X"], 3)[::7]:
        assert parse_proof(format_proof(p)) == p
