import json
from pathlib import Path

import pytest

from hochschild import cli

CORPUS = Path(cli.__file__).parent / "corpus"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_build_gls(capsys):
    code, rep = run_json(capsys, "build", str(CORPUS / "gls_a2.json"))
    assert code == 0
    assert rep["results"]["dimension"] == 3
    assert rep["verdict"] is True


def test_build_round_trip(capsys, tmp_path):
    code, rep = run_json(capsys, "build", str(CORPUS / "gls_b2.json"))
    assert code == 0
    algdoc = rep["results"]["algebra"]
    path = tmp_path / "rt.json"
    path.write_text(json.dumps(algdoc))
    code2, rep2 = run_json(capsys, "build", str(path))
    assert code2 == 0
    assert rep2["results"]["algebra"] == algdoc


def test_hh_corpus(capsys):
    code, rep = run_json(capsys, "hh", str(CORPUS / "dual_numbers_q.json"))
    assert code == 0
    assert rep["results"]["dims"] == [2, 1, 1, 1, 1]
    assert rep["results"]["degree-0-commutator-check"] == 2
    code, rep = run_json(capsys, "hh", str(CORPUS / "dual_numbers_f2.json"),
                         "--max-degree", "3")
    assert rep["results"]["dims"] == [2, 2, 2, 2]
    code, rep = run_json(capsys, "hh", str(CORPUS / "field_q.json"))
    assert rep["results"]["dims"] == [1, 0, 0, 0, 0]


def test_field_override(capsys):
    code, rep = run_json(capsys, "hh", str(CORPUS / "dual_numbers_q.json"),
                         "--field", "fp:2")
    assert rep["results"]["dims"] == [2, 2, 2, 2, 2]
    assert rep["parameters"]["field"] == {"kind": "Fp", "p": 2}


def test_gldim(capsys):
    code, rep = run_json(capsys, "gldim", str(CORPUS / "ka2_presentation.json"))
    assert code == 0 and rep["results"]["value"] == 1
    code, rep = run_json(capsys, "gldim", str(CORPUS / "dual_numbers_q.json"))
    assert rep["results"]["value"] == "exceeds-bound"


def test_verify_splitting_exit_0(capsys):
    code, rep = run_json(capsys, "verify", "splitting",
                         str(CORPUS / "triangular_dual.json"))
    assert code == 0 and rep["verdict"] is True


def test_verify_stratifying_negative_exit_1(capsys):
    code, rep = run_json(capsys, "verify", "stratifying",
                         str(CORPUS / "rad_square.json"))
    assert code == 1 and rep["verdict"] is False
    assert rep["results"]["tensor-dim"] == 4
    assert rep["results"]["ideal-dim"] == 3


def test_verify_les_refusal_exit_2(capsys):
    code, out, err = run(capsys, "verify", "les",
                         str(CORPUS / "rad_square.json"))
    assert code == 2
    assert "not stratifying" in err


def test_verify_morita(capsys):
    code, rep = run_json(capsys, "verify", "morita",
                         str(CORPUS / "morita_matrix.json"), "--bound", "6")
    assert code == 0
    assert rep["results"]["splitting"][0] == [0, 1, 1, 0, True]


def test_verify_exact_context(capsys):
    code, rep = run_json(capsys, "verify", "exact-context",
                         str(CORPUS / "exact_pullback.json"), "--bound", "4")
    assert code == 0 and rep["verdict"] is True
    code, rep = run_json(capsys, "verify", "exact-context",
                         str(CORPUS / "exact_dual.json"), "--bound", "4")
    assert code == 1
    assert rep["results"]["tor"][1] == 1


def test_validate_commands(capsys):
    code, rep = run_json(capsys, "validate", "gentle",
                         str(CORPUS / "gentle_a2.json"))
    assert code == 0 and rep["verdict"] is True
    code, rep = run_json(capsys, "validate", "skew-gentle",
                         str(CORPUS / "skew_gentle_one_loop.json"))
    assert code == 0 and rep["results"]["dimension"] == 2
    code, rep = run_json(capsys, "validate", "cartan",
                         str(CORPUS / "cartan_bad_c3.json"))
    assert code == 1
    rows = {c["name"]: c for c in rep["results"]["conditions"]}
    assert rows["C3"]["passed"] is False and rows["C3"]["witness"]
    code, rep = run_json(capsys, "validate", "cartan",
                         str(CORPUS / "cartan_cycle.json"))
    assert code == 1
    rows = {c["name"]: c for c in rep["results"]["conditions"]}
    assert rows["O2"]["witness"] == "cycle (1, 2, 1)"
    code, rep = run_json(capsys, "validate", "ei",
                         str(CORPUS / "ei_non_invertible.json"))
    assert code == 1
    assert "f" in rep["results"]["conditions"][0]["witness"]


def test_schema_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "kind": "algebra-table", "field": {"kind": "Fp", "p": 4},
        "labels": ["1"], "structure": [[["1"]]], "unit": ["1"]}))
    code, out, err = run(capsys, "build", str(bad))
    assert code == 2 and "p must be prime" in err
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"field": {"kind": "Q"}}))
    code, out, err = run(capsys, "build", str(missing))
    assert code == 2 and "kind" in err


def test_free_loop_error_surfaced(capsys):
    code, out, err = run(capsys, "build", str(CORPUS / "free_loop.json"))
    assert code == 2
    assert "length 8" in err and "not certified finite" in err


def test_determinism_byte_identical(capsys):
    _, out1, _ = run(capsys, "hh", str(CORPUS / "dual_numbers_q.json"),
                     "--json")
    _, out2, _ = run(capsys, "hh", str(CORPUS / "dual_numbers_q.json"),
                     "--json")
    assert out1 == out2


def test_out_flag_writes_canonical(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "hh", str(CORPUS / "field_q.json"),
                       "--json", "--out", str(target))
    assert code == 0
    assert target.read_text().strip() == out.strip()
