import json

import pytest

from cue_lab.cli import main, resolve_workers


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_ks(capsys):
    code, out, _ = run(capsys, "exact", "ks", "--N", "2", "--k", "2")
    assert code == 0
    d = json.loads(out)
    assert d["value"]["re"] == "20" and d["paper_anchor"] == "Eq:KSmomentsCharpol"


def test_ehrhart_birkhoff(capsys):
    code, out, _ = run(capsys, "ehrhart", "birkhoff", "--k", "3", "--t", "2")
    assert code == 0 and json.loads(out)["value"]["re"] == "21"


def test_limit_hankel(capsys):
    code, out, _ = run(capsys, "limit", "ks", "--k", "2", "--method", "hankel")
    d = json.loads(out)
    assert code == 0 and d["value"]["re"] == "1/12" and d["paper_anchor"] == "EqPhi:KS"


def test_csv_output_to_file(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "limit", "sc", "--k", "2", "--rho", "1/2", "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    assert "EqPhi:MidCoeff" in path.read_text()


def test_usage_errors(capsys):
    assert run(capsys, "exact", "ks", "--k", "2")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    code, _, err = run(capsys, "sample", "trace", "--N", "3")
    assert code == 1 and "--seed" in err and len(err.strip().splitlines()) == 1
    assert run(capsys, "limit", "ks", "--k", "3", "--method", "qmc")[0] == 1


def test_computation_failure(capsys):
    assert run(capsys, "exact", "ks", "--N", "0", "--k", "2")[0] == 2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nk = 1\nN = 5\n")
    code, out, _ = run(capsys, "exact", "ks", "--config", str(cfg))
    assert json.loads(out)["value"]["re"] == "6"
    code, out, _ = run(capsys, "exact", "ks", "--config", str(cfg), "--k", "2", "--N", "2")
    assert json.loads(out)["value"]["re"] == "20"


def test_bad_config_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(capsys, "exact", "ks", "--config", str(cfg))[0] == 1


def test_sample_is_reproducible(capsys):
    args = ("sample", "trace", "--N", "3", "--seed", "5", "--samples", "2000", "--chains", "10")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    da, db = json.loads(a), json.loads(b)
    assert da["value"] == db["value"] and da["seed"] == 5 and "stderr" in da


def test_workers_resolution(monkeypatch):
    monkeypatch.setenv("CUE_LAB_WORKERS", "3")
    assert resolve_workers(None) == 3
    assert resolve_workers(2) == 2


def test_selftest_subset(capsys):
    code, out, err = run(capsys, "selftest", "--criteria", "1,12")
    assert code == 0
    assert "[PASS] criterion  1" in err and "criterion 12" in err
