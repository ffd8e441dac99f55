import csv
import io
import json
import subprocess
import sys

import pytest

from rsdensity import __version__
from rsdensity.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rs_coeffs_agree(capsys):
    code, out, _ = run(["rs-coeffs", "--n", "2", "--p", "5", "--r", "3", "--seed", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert doc["version"] == __version__ and doc["seed"] == 1 and "config" in doc
    for row in doc["coefficients"]:
        assert row["cauchy"] == pytest.approx(row["oracle"])


def test_usage_errors_exit_2(capsys):
    code, _, err = run(["rs-coeffs", "--n", "2", "--p", "5", "--r", "3", "--seed", "1", "--bogus"], capsys)
    assert code == 2 and "usage" in err
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["rs-coeffs", "--n", "2", "--p", "5", "--r", "3"], capsys)[0] == 2  # seed mandatory
    assert run(["conductor"], capsys)[0] == 2
    assert run(["sieve", "--z", "10", "--g", "weird"], capsys)[0] == 2
    assert run(["verify-all", "--seed", "1", "--only", "nope"], capsys)[0] == 2


def test_simple_subcommands(capsys):
    code, out, _ = run(["partitions", "--n", "2", "--r", "3"], capsys)
    assert code == 0 and json.loads(out)["partitions"] == [[3], [2, 1]]
    code, out, _ = run(["schur", "--mu", "2,1", "--x", "1,1,1"], capsys)
    assert json.loads(out)["value"] == [8.0, 0.0]
    code, out, _ = run(["zeros", "count", "--T", "100"], capsys)
    assert json.loads(out)["count"] == 58
    code, out, _ = run(["sieve", "--z", "10"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["main_term"] == "3/11" and "sum_h_up_to_z_squared" in doc["diagnostic"]
    code, out, _ = run(["power-sum", "--z", "1,0.5j,-0.3", "--K", "3"], capsys)
    assert code == 0 and json.loads(out)["certified"]
    code, out, _ = run(["eta", "--log-x", "1000", "--log-D", "100", "--n-L", "4"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(["eta", "--log-x", "5000", "--log-D", "5", "--delta", "0.002", "--T", "1e4"], capsys)
    assert code == 0
    code, out, _ = run(["local-factor", "--seed", "4", "--q", "5"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(["conductor", "--witness", "3", "1"], capsys)
    assert code == 0 and json.loads(out)["exact_conductor"] == 4
    code, out, _ = run(["conductor", "--seed", "2", "--instances", "200"], capsys)
    assert code == 0 and json.loads(out)["passed"]


def test_local_factor_fixture(tmp_path, capsys):
    fx = tmp_path / "pair.json"
    block = {"q_v": 3, "blocks": [{"n_j": 2, "sigma_j": 0.1, "t_j": 0.0}, {"n_j": 1, "sigma_j": 0.0, "t_j": 1.0}],
             "classes": [[0], [1]], "e": [1, 3]}
    fx.write_text(json.dumps({"sigma": block, "tau": block}))
    code, out, _ = run(["local-factor", "--fixture", str(fx), "--r", "4"], capsys)
    assert code == 0 and json.loads(out)["sigma"] == block


def test_chebotarev_csv(tmp_path, capsys):
    path = tmp_path / "out.csv"
    code, _, _ = run(["chebotarev", "--q", "4", "--class", "1", "--x", "100,1e4", "--report", str(path)], capsys)
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert code == 0
    assert list(rows[0]) == ["x", "pi_C", "expected", "E_C", "grh_bound", "quasi_grh_bound"]
    assert rows[0]["pi_C"] == "11"
    assert run(["chebotarev", "--q", "4", "--class", "2", "--x", "100"], capsys)[0] == 2


def test_family_bound_emit(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run(["family-bound", "--D", "1", "--n", "2", "--Q", "10", "--eps", "0.1", "--emit", str(path)], capsys)
    doc = json.loads(path.read_text())
    assert code == 0
    assert doc["report"]["log10_X_unconditional"] == pytest.approx(4.4)
    assert "residue_exponent" in doc["diagnostic"] and "residue_exponent" not in doc["report"]


def test_verify_subset_is_deterministic(capsys):
    argv = ["verify-all", "--seed", "3", "--only", "sphere_lemma,zero_count,selberg_sieve"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0 and out1 == out2
    assert [s["name"] for s in json.loads(out1)["suites"]] == ["sphere_lemma", "selberg_sieve", "zero_count"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rsdensity", "partitions", "--n", "1", "--r", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 1
