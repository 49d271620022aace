import json

import pytest

from eqcolor.cli import main
from eqcolor.hypercore import parse_hypergraph


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "h.txt"
    assert main(["gen", "--model", "bounded", "--k", "32", "--n", "4096", "--m", "64",
                 "--max-deg", "32", "--seed", "3", "--out", str(path)]) == 0
    return path


def test_gen_writes_instance_and_sidecar(instance):
    h = parse_hypergraph(instance.read_text())
    assert (h.k, h.n, h.m) == (32, 4096, 64)
    side = json.loads((instance.parent / "h.txt.json").read_text())
    assert side["seed"] == 3 and side["model"] == "bounded"


def test_color_then_verify(instance, tmp_path, capsys):
    part = tmp_path / "p.txt"
    rep = tmp_path / "r.json"
    assert main(["color", str(instance), "--t", "8", "--seed", "1",
                 "--out-partition", str(part), "--out-report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert report["strong"] and report["equitable"] and report["r"] == 4
    assert main(["verify", str(instance), str(part)]) == 0
    out = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert out["strong"] and out["equitable"]


def test_reports_are_byte_identical(instance, tmp_path):
    outs = []
    for i in range(2):
        rep = tmp_path / f"r{i}.json"
        main(["color", str(instance), "--t", "8", "--seed", "9", "--out-partition",
              str(tmp_path / f"p{i}.txt"), "--out-report", str(rep)])
        outs.append(rep.read_bytes())
    assert outs[0] == outs[1]


def test_env_seed(monkeypatch, tmp_path):
    monkeypatch.setenv("EQCOLOR_SEED", "11")
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["gen", "--model", "tight", "--k", "3", "--out", str(a)])
    main(["gen", "--model", "tight", "--k", "3", "--seed", "11", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_verify_rejects_bad_partition(instance, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 4096\n" + " ".join(map(str, range(1, 4096))) + "\n4096\n")
    assert main(["verify", str(instance), str(bad)]) == 1


def test_color_refuses_high_degree(tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("2 4 3\n1 2\n1 2\n1 2\n")
    args = ["color", str(path), "--t", "1", "--s", "0", "--out-partition", str(tmp_path / "p")]
    assert main(args) == 2
    assert not (tmp_path / "p").exists()
    assert main(args + ["--allow-degree"]) == 0


def test_bench_and_tight_csv(tmp_path):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps({"cells": [
        {"k": 32, "model": "bounded", "n": 4096, "m": 32, "max_deg": 32, "t": 8, "eps": None, "seeds": 2}]}))
    out = tmp_path / "bench.csv"
    assert main(["bench", str(cfg), "--out-csv", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("cell,seed,status") and len(lines) == 4
    tight = tmp_path / "tight.csv"
    assert main(["tight", "--k", "2", "--seeds", "5", "--out-csv", str(tight)]) == 0
    assert len(tight.read_text().splitlines()) == 6


def test_trace_file(instance, tmp_path):
    trace = tmp_path / "trace.txt"
    main(["color", str(instance), "--t", "8", "--seed", "2", "--out-partition",
          str(tmp_path / "p.txt"), "--trace", str(trace)])
    assert trace.exists()
