import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURE_DIR
from dgscert.cli import main
from dgscert.fixtures import paper_g4
from dgscert.graphs import from_graph6, to_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_fixture(capsys):
    code, out, _ = run(capsys, "analyze", "--fixture", "paper-g8")
    assert code == 0
    prof = json.loads(out)
    assert prof["det_w"] == "-48"
    assert next(r for r in prof["primes"] if r["p"] == 3)["phi"] == [1, 2, 1]


def test_analyze_non_controllable(capsys):
    code, out, _ = run(capsys, "analyze", "K2")
    assert code == 0 and json.loads(out)["controllable"] is False


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "certify", "--fixture", "paper-g8")
    _, b, _ = run(capsys, "certify", str(FIXTURE_DIR / "paper_g8.g6"))
    assert a.replace('"Gg~SYW"', "ID") == b.replace('"Gg~SYW"', "ID")
    _, c, _ = run(capsys, "certify", "--fixture", "paper-g8")
    assert a == c


def test_certify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--fixture", "paper-g8")
    assert code == 0 and json.loads(out)["verdicts"]["main"] == "pass"
    code, out, _ = run(capsys, "certify", "--fixture", "paper-g4")
    d = json.loads(out)
    assert code == 0 and d["verdicts"]["main"] == "pass" and d["verdicts"]["main0"] == "fail"
    code, out, _ = run(capsys, "certify", "K3")
    assert code == 1 and json.loads(out)["overall"] == "not-applicable"


def test_certify_with_oracle(capsys):
    code, out, _ = run(capsys, "certify", "--oracle", "P4")
    assert json.loads(out)["oracle_confirmed"] is True
    code, _, _ = run(capsys, "certify", "--oracle", "--fixture", "paper-g8")
    assert code == 65


def test_edgelist_and_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "certify", "--format", "edgelist", str(FIXTURE_DIR / "paper_g8.edges"))
    assert code == 0 and json.loads(out)["graph_id"] == "Gg~SYW"
    monkeypatch.setattr(sys, "stdin", io.StringIO("Gg~SYW\n"))
    code, out, _ = run(capsys, "analyze", "-")
    assert code == 0 and json.loads(out)["det_w"] == "-48"


@pytest.mark.parametrize("argv", [
    ["analyze", "-"],
    ["certify", "missing-file.g6"],
    ["certify", "--fixture", "nope"],
    ["certify", "--cutoff", "10", "P4"],
    ["certify", "--primes", "4", "P4"],
])
def test_parse_errors(capsys, monkeypatch, argv):
    monkeypatch.setattr(sys, "stdin", io.StringIO("A\x7f\n"))
    code, _, err = run(capsys, *argv)
    assert code == 64 and err


def test_rooted_emits_g4(capsys, tmp_path):
    out_dir = tmp_path / "fam"
    code, out, _ = run(capsys, "rooted", "--fixture", "paper-g8", "--rooted", "P4", "--root", "0",
                       "--depth", "1", "--out", str(out_dir))
    assert code == 0
    assert [s["n"] for s in json.loads(out)] == [8, 32]
    assert from_graph6((out_dir / "member_01.g6").read_text()) == paper_g4()


def test_rooted_depth_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "rooted", "--fixture", "paper-g8", "--rooted", "P2", "--depth", "0",
                       "--out", str(tmp_path))
    assert code == 0 and len(json.loads(out)) == 1
    assert json.loads((tmp_path / "member_00.json").read_text())["verdicts"]["main"] == "pass"


def test_rooted_refusals(capsys, tmp_path):
    code, _, err = run(capsys, "rooted", "--fixture", "paper-g8", "--rooted", "K3", "--out", str(tmp_path))
    assert code == 1 and "C1" in err
    code, _, err = run(capsys, "rooted", "P3", "--rooted", "P2", "--out", str(tmp_path))
    assert code == 1 and "membership" in err
    code, _, _ = run(capsys, "rooted", "--fixture", "paper-g8", "--rooted", "P4", "--depth", "3",
                     "--out", str(tmp_path))
    assert code == 65


def test_oracle_subcommand(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle", "5", "--store", str(tmp_path))
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["isomorphism_classes"] == 34
    code, out, _ = run(capsys, "oracle", "6", "--primes", "2,3,5")
    assert code == 0 and json.loads(out)["violations"] == []
    code, _, _ = run(capsys, "oracle", "9")
    assert code == 65


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dgscert", "certify", "--fixture", "paper-g8"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["dgs"] is True
    assert to_graph6(from_graph6(json.loads(res.stdout)["graph_id"])) == "Gg~SYW"
