import json

import pytest

from lipdyn.cli import (
    EXIT_IO, EXIT_OK, EXIT_UNBOUNDED, EXIT_UNKNOWN, EXIT_VALIDATION, RunConfig, main,
)
from lipdyn.errors import SpecError

DOUBLING = '{"affine_tail": {"from": 0, "a": 2, "b": 1}}'
SHIFT_BY_ONE = '{"affine_tail": {"from": 0, "a": 1, "b": 1}}'
BINARY = '{"kind": "explicit", "edges": [], "root": 0, "tail_degrees": {"0": 2}}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_norm_of_doubling(capsys):
    code, out = run(capsys, "norm", "--symbol", DOUBLING)
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["norm"] == "2"
    assert report["oracle"]["agreement"]


def test_norm_of_zero_multiplier(capsys):
    code, out = run(capsys, "norm", "--op", "multiplication", "--symbol", '{"table": {"0": 0}}')
    assert code == EXIT_OK
    assert json.loads(out)["norm"] == "0"


def test_multiplier_reports_both_plus_values(capsys):
    code, out = run(capsys, "norm", "--op", "multiplication", "--symbol", '{"table": {"0": 3}}')
    report = json.loads(out)
    assert (report["norm"], report["norm_plus_formula"], report["norm_plus_exact"]) == ("3", "6", "3")


def test_shift_on_binary_tree(capsys):
    code, out = run(capsys, "norm", "--op", "shift", "--tree", BINARY, "--witness", "0:1")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["norm"] == "4"
    assert report["witness"]["value"] == report["witness"]["term"] == "4"


def test_unbounded_shift_exit_code(capsys):
    tree = '{"kind": "explicit", "edges": [[0, 1]], "root": 0, "tail_degrees": {"1": [1, 2]}}'
    code, out = run(capsys, "norm", "--op", "shift", "--tree", tree)
    assert code == EXIT_UNBOUNDED
    assert json.loads(out)["bounded"] is False


def test_classify_exit_codes(capsys):
    code, out = run(capsys, "classify", "--symbol", DOUBLING)
    assert code == EXIT_OK and json.loads(out)["verdict"] == "FHC_Hypercyclic"
    code, out = run(capsys, "classify", "--symbol", SHIFT_BY_ONE)
    assert code == EXIT_UNBOUNDED and json.loads(out)["verdict"] == "NotHypercyclic"
    code, out = run(capsys, "classify", "--symbol", '{"table": {"0": 1, "1": 2, "2": 4}}', "--budget", "3")
    assert code == EXIT_UNKNOWN and json.loads(out)["verdict"] == "Unknown"


def test_matrix_csv(capsys):
    code, out = run(capsys, "matrix", "--symbol", DOUBLING, "--rows", "4", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[2] == "1,0,0,1,1,0,0,0,0"


def test_matrix_cut_by_columns_is_validation_error(capsys):
    code, _ = run(capsys, "matrix", "--symbol", DOUBLING, "--rows", "4", "--cols", "3")
    assert code == EXIT_VALIDATION


def test_witness_report(capsys):
    code, out = run(capsys, "witness", "--symbol", DOUBLING, "--l", "2", "--terms", "5",
                    "--x", '{"0": ["1", "0"], "1": ["-1", "0"]}')
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["N0"] == 1
    assert report["series"][0]["support"] == [2, 2]
    assert report["series"][1]["support"] == [4, 5]


def test_eigen_at_one(capsys):
    code, out = run(capsys, "eigen", "--lambda", "1", "--depth", "8")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["residual"] == "0"
    assert report["vector"] == {"0": ["1", "0"]}


def test_orbit_csv(capsys):
    code, out = run(capsys, "orbit", "--lambda", "1/2", "--x0", '{"0": ["1", "0"]}', "--steps", "2",
                    "--format", "csv")
    assert code == EXIT_OK
    assert out == "step,norm\n0,1\n1,1/2\n2,1/4\n"


def test_verify_all_pass(capsys):
    code, out = run(capsys, "verify", "--rounds", "3", "--seed", "7")
    assert code == EXIT_OK
    assert json.loads(out)["all_pass"]


def test_out_directory(tmp_path, capsys):
    code, _ = run(capsys, "classify", "--symbol", DOUBLING, "--out", str(tmp_path / "o"))
    assert code == EXIT_OK
    assert json.loads((tmp_path / "o" / "classify.json").read_text())["verdict"] == "FHC_Hypercyclic"


def test_symbol_from_file_and_missing_file(tmp_path, capsys):
    spec = tmp_path / "phi.json"
    spec.write_text(DOUBLING)
    assert run(capsys, "norm", "--symbol", f"@{spec}")[0] == EXIT_OK
    assert run(capsys, "norm", "--symbol", f"@{tmp_path / 'missing.json'}")[0] == EXIT_IO


def test_validation_errors(capsys):
    assert run(capsys, "norm", "--symbol", "{not json")[0] == EXIT_VALIDATION
    assert run(capsys, "norm", "--symbol", '{"bogus": 1}')[0] == EXIT_VALIDATION
    assert run(capsys, "norm", "--depth", "0", "--symbol", DOUBLING)[0] == EXIT_VALIDATION
    assert run(capsys, "frobnicate")[0] == EXIT_VALIDATION
    assert run(capsys, "classify", "--symbol", '{"table": {"0": 0}, "affine_tail": {"from": 1, "a": 1, "b": 0}}')[0] \
        == EXIT_VALIDATION


def test_run_config_invariants():
    RunConfig()
    for kwargs in ({"tolerance": 0}, {"depth": 0}, {"budget": 0}, {"mode": "fuzzy"}, {"output_format": "xml"}):
        with pytest.raises(SpecError):
            RunConfig(**kwargs)
