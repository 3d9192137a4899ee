"""CLI contract: subcommands, output formats, and exit codes."""

import json

import pytest

from uob.cli import main
from uob.io import load_basis, save_spec
from uob.catalog import catalog_spec


def test_check_passing_spec(capsys):
    assert main(["check", "c_in_m1_plus_m2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["holds"] and doc["d"] == 5
    assert doc["markov_trace_vector"] == [1, 2]


def test_check_failing_spectral_condition_still_exits_0(capsys):
    # the spec is valid; the failed condition is the reported finding
    assert main(["check", "c2_in_m3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert not doc["holds"] and doc["d"] is None


def test_check_invalid_spec_exits_1(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"inclusion_matrix": [[1]], "sub_dims": [2], "super_dims": [3]}))
    assert main(["check", str(path)]) == 1


def test_check_spec_from_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    save_spec(path, catalog_spec("c_in_m3"))
    assert main(["check", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["d"] == 9


def test_unknown_spec_is_bad_input(capsys):
    assert main(["check", "no_such_spec"]) == 2


def test_malformed_json_is_bad_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["check", str(path)]) == 2


def test_bad_subcommand_is_bad_input():
    assert main(["frobnicate"]) == 2


def test_entropy(capsys):
    import math

    assert main(["entropy", "c_in_m5"]) == 0
    assert abs(float(capsys.readouterr().out) - math.log(25)) < 1e-9
    assert main(["entropy", "c2_in_m3"]) == 1


def test_basis_auto_writes_verified_output(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["basis", "c_in_m1_plus_m2", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "[PASS] orthonormality" in text
    loaded = load_basis(out)
    assert loaded.d == 5


def test_basis_no_construction_exits_3():
    assert main(["basis", "c2_in_m3"]) == 3


def test_basis_explicit_method_mismatch_exits_1():
    # abelian construction cannot apply to a non-abelian sub-algebra
    assert main(["basis", "m2_in_m4", "--method", "abelian"]) == 1


def test_basis_method_basic(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["basis", "m2_in_m4", "--method", "basic", "--out", str(out)]) == 0
    assert load_basis(out).provenance == "basic_construction"
    # basic method needs a single super block with row equal to the sub dims
    assert main(["basis", "c_in_m1_plus_m2", "--method", "basic"]) == 1


def test_basis_method_tensor(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["basis", "m2_in_m4", "--method", "tensor", "--out", str(out)]) == 0
    assert load_basis(out).d == 4
    # no common full-matrix factor to split off
    assert main(["basis", "c_in_m1_plus_m2", "--method", "tensor"]) == 1


def test_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "b.json"
    main(["basis", "c2_in_m4", "--out", str(out)])
    capsys.readouterr()
    assert main(["verify", str(out)]) == 0
    assert "[PASS] reconstruction" in capsys.readouterr().out


def test_verify_rejects_tampered_basis(tmp_path, capsys):
    out = tmp_path / "b.json"
    main(["basis", "c_in_m2", "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["elements"][1][0][1] = [0.9, 0.1]
    out.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", str(out)]) == 1


def test_channel(capsys):
    assert main(["channel", "c2_in_m2_plus_m2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["agreement_residual"] < 1e-10
    assert doc["unitary_count"] == 16
    assert doc["k_phases"]["(0, 0, 0)"] == "0"
    assert doc["k_phases"]["(1, 1, 0)"] == "3/4"
    assert doc["cycles"] == [[[0, 0], [1, 0]], [[0, 0], [1, 0]]]
    assert main(["channel", "m2_in_m2_plus_m4"]) == 1


def test_tol_flag_can_force_failure(tmp_path, capsys):
    out = tmp_path / "b.json"
    main(["basis", "c_in_m2", "--out", str(out)])
    capsys.readouterr()
    assert main(["verify", str(out), "--tol", "1e-30"]) == 1


def test_tol_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("UOB_TOL", "1e-30")
    out = tmp_path / "b.json"
    main(["basis", "c_in_m2", "--out", str(out)])
    capsys.readouterr()
    assert main(["verify", str(out)]) == 1
