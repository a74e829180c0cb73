from __future__ import annotations

import json

import numpy as np
import pytest

from incilab.cli import dispatch, main, tag, untag
from incilab.rng import stream


def run(tmp_path, *argv):
    out = tmp_path / "report.out"
    code, rep = dispatch([*argv, "--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def load(text):
    return untag(json.loads(text))


def test_tag_round_trip():
    from fractions import Fraction
    obj = {"a": 3, "b": Fraction(1, 3), "c": 0.5, "d": [[1, 2], [3, 4]], "e": "x", "f": True}
    t = tag(obj)
    assert t["a"] == {"value": "3", "exactness": "exact-rational"}
    assert t["c"] == {"value": 0.5, "exactness": "float"}
    assert t["d"] == [[1, 2], [3, 4]]
    assert untag(t) == obj


def test_kakeya_build_and_verify(tmp_path):
    code, text = run(tmp_path, "kakeya", "build", "--q", "5", "--n", "2")
    assert code == 0
    rep = load(text)
    assert rep["outputs"]["size"] == 17
    assert all(a["status"] == "pass" for a in rep["assertions"])
    w = tmp_path / "w.json"
    w.write_text(text)
    code, text = run(tmp_path, "kakeya", "certify", "--in", str(w))
    assert code == 0 and load(text)["outputs"]["rank"] == 15      # C(q + 1, 2) monomials


def test_report_is_deterministic(tmp_path):
    args = ["lcc", "correct", "--word", str(tmp_path / "w.json"), "--errors", "1", "--trials", "500"]
    (tmp_path / "w.json").write_text(json.dumps([0] * 25))
    a = json.loads(run(tmp_path, *args)[1])
    b = json.loads(run(tmp_path, *args)[1])
    a.pop("wall_time_ms"), b.pop("wall_time_ms")
    assert a == b
    c = json.loads(run(tmp_path, *args, "--seed", "7")[1])
    assert c["seed"] == 7 and c["inputs_digest"] != a["inputs_digest"]    # argv is hashed


def test_global_flags_before_subcommand(tmp_path):
    code, text = run(tmp_path, "--format", "csv", "incidence", "joints", "--grid", "3")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "section,key,value"
    assert "output,joints,27" in lines
    assert "assertion,joints.grid_count,pass" in lines


def test_usage_errors_exit_two(tmp_path, capsys):
    assert dispatch(["kakeya", "build", "--q", "5", "--bogus"])[0] == 2
    assert dispatch(["nosuch"])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(tmp_path, "sg", "check", "--config", str(bad))[0] == 2
    assert run(tmp_path, "sg", "check", "--config", str(tmp_path / "missing.json"))[0] == 2
    assert dispatch(["--seed", "-1", "incidence", "grid", "--M", "2"])[0] == 2


def test_failed_assertion_exits_one(tmp_path):
    m = tmp_path / "m.csv"
    m.write_text("# upper triangular\n1,1\n0,1\n")
    code, text = run(tmp_path, "scale", "sinkhorn", "--matrix", str(m), "--max-iters", "5")
    assert code == 1
    rep = load(text)
    assert {a["name"]: a["status"] for a in rep["assertions"]}["sinkhorn.converged"] == "fail"
    cfg = tmp_path / "tri.json"
    cfg.write_text(json.dumps({"field": "Q", "vectors": [[0, 0], [1, 0], [0, 1]]}))
    assert run(tmp_path, "sg", "check", "--config", str(cfg))[0] == 1


def test_sg_design_command(tmp_path):
    cfg = tmp_path / "fano.json"
    fano = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
    cfg.write_text(json.dumps({"field": 2, "vectors": fano}))
    code, text = run(tmp_path, "sg", "design", "--config", str(cfg))
    out = load(text)["outputs"]
    assert code == 0 and out["rank"] == 4 and (out["q"], out["k"], out["t"]) == (3, 18, 6)


def test_extract_merger_nikodym(tmp_path):
    code, text = run(tmp_path, "extract", "merger", "--q", "5", "--n", "2", "--adversary", "nikodym")
    assert code == 0 and load(text)["outputs"]["probability_in_nikodym"] == 1


def test_suite_filter(tmp_path, capsys):
    code, text = run(tmp_path, "suite", "acceptance", "--filter", "kakeya")
    assert code == 0
    assert [c["number"] for c in load(text)["outputs"]["criteria"]] == [1, 2]
    assert capsys.readouterr().err.count("[PASS]") == 2
    assert run(tmp_path, "suite", "acceptance", "--filter", "nothing")[0] == 2


def test_main_writes_stdout(capsys):
    assert main(["incidence", "grid", "--M", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["outputs"]["incidences"]["value"] == "16"


def test_rng_streams_are_independent():
    a = stream(1, "lcc", "trials").integers(1 << 30, size=4)
    assert np.array_equal(a, stream(1, "lcc", "trials").integers(1 << 30, size=4))
    assert not np.array_equal(a, stream(1, "lcc", "other").integers(1 << 30, size=4))
    assert not np.array_equal(a, stream(2, "lcc", "trials").integers(1 << 30, size=4))
    assert not np.array_equal(a, stream(1 + (1 << 32), "lcc", "trials").integers(1 << 30, size=4))
