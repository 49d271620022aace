import random

import pytest

from eqcolor import phase3
from eqcolor.errors import ParameterError, PreconditionError, VerificationError
from eqcolor.gen import TightConstructionSpec, gen_bounded
from eqcolor.hypercore import Hypergraph
from eqcolor.phase3 import EquitablePartition
from eqcolor.pipeline import Cell, Overrides, bench_sweep, run_pipeline, tightness_check


def test_empty_hypergraph_general_branch():
    h = Hypergraph.from_edges(4096, 32, [])
    report, part = run_pipeline(h, 1.0, 0.5, seed=0, overrides=Overrides(t=8))
    assert report.branch == "general"
    assert part.r == 8 - report.params["s"] == 4
    sizes = [len(c) for c in part.classes]
    assert max(sizes) - min(sizes) <= 1
    assert report.strong and report.equitable


@pytest.mark.parametrize("seed", range(4))
def test_bounded_instances_verified(seed):
    h = gen_bounded(4096, 32, 32, 128, random.Random(seed))
    report, part = run_pipeline(h, 1.0, None, seed, overrides=Overrides(t=8))
    assert report.strong and report.equitable and report.r == part.r == 4
    assert report.target is None and report.target_met is None


def test_degree_bound_enforced():
    h = Hypergraph.from_edges(4, 2, [(1, 2)] * 3)
    with pytest.raises(PreconditionError):
        run_pipeline(h, 1.0, 0.5, 0, overrides=Overrides(t=1, s=0))
    report, _ = run_pipeline(h, 1.0, 0.5, 0, overrides=Overrides(t=1, s=0, allow_degree=True))
    assert any("exceeds" in w for w in report.warnings)


def test_parameter_failure_propagates():
    h = Hypergraph.from_edges(100, 20, [])
    with pytest.raises(ParameterError):
        run_pipeline(h, 1.0, 0.1, 0)


def test_fault_injection_is_caught(monkeypatch):
    def broken(h, colors, params):
        n = h.n
        return EquitablePartition(2, n, (tuple(range(1, n)), (n,)), params)

    monkeypatch.setattr(phase3, "rebalance", broken)
    h = gen_bounded(4096, 32, 32, 128, random.Random(0))
    with pytest.raises(VerificationError):
        run_pipeline(h, 1.0, None, 0, overrides=Overrides(t=8))


def test_same_seed_same_report():
    h = gen_bounded(4096, 32, 32, 128, random.Random(2))
    a, pa = run_pipeline(h, 1.0, None, 2, overrides=Overrides(t=8))
    b, pb = run_pipeline(h, 1.0, None, 2, overrides=Overrides(t=8))
    assert a.to_json() == b.to_json()
    assert pa.serialize() == pb.serialize()
    assert "wall_time" not in a.to_json() and "wall_time" in a.to_json(timing=True)


def test_finite_branch_selected():
    h = gen_bounded(150, 32, 32, 8, random.Random(1))
    report, part = run_pipeline(h, 1.0, None, 1, overrides=Overrides(t=4, s=1))
    assert report.branch == "finite"
    assert report.strong and report.equitable


def test_trace_callback():
    h = gen_bounded(4096, 32, 32, 128, random.Random(0))
    lines = []
    run_pipeline(h, 1.0, None, 0, overrides=Overrides(t=8), trace=lines.append)
    assert lines and all(line.split()[0] in {"phase1", "phase2", "pipeline"} for line in lines)


def test_bench_one_cell_shape():
    cell = Cell(k=32, model="bounded", n=4096, m=64, max_deg=32, t=8, seeds=(0, 1, 2), eps=None)
    rows = bench_sweep([cell])
    assert len(rows) == 4
    assert rows[-1]["seed"] == "all"
    assert [r["status"] for r in rows[:3]] == ["ok"] * 3


def test_bench_deterministic():
    cell = Cell(k=32, model="bounded", n=4096, m=64, max_deg=32, t=8, seeds=(5, 6), eps=None)
    first = bench_sweep([cell, cell])
    assert [r for r in first if r["cell"] == 0][:-1] == [
        dict(r, cell=0) for r in first if r["cell"] == 1][:-1]
    assert bench_sweep([cell, cell]) == first


def test_bench_infeasible_cell():
    cell = Cell(k=20, a=1.0, eps=0.1, model="bounded", n=200, m=10, max_deg=20, seeds=(0, 1))
    rows = bench_sweep([cell])
    assert [r["status"] for r in rows[:2]] == ["failed", "failed"]
    assert "no integer t" in rows[0]["reason"]
    assert rows[-1]["status"].startswith("aggregate 0/2")


def test_cell_from_dict():
    cell = Cell.from_dict({"k": 16, "seeds": 3, "model": "tight"})
    assert cell.seeds == (0, 1, 2)


def test_tightness_rows_k2():
    spec = TightConstructionSpec.build(2, 1, 0.5)
    rows = tightness_check(spec, range(20))
    assert len(rows) == 20
    for row in rows:
        assert row["n"] == 4 and row["m"] == 2
        if row["tau"]:
            assert row["c_upper"] == 4 // row["tau"]


def test_tightness_refuses_large():
    spec = TightConstructionSpec.build(5, 1, 0.5)
    assert spec.n == 25
    with pytest.raises(PreconditionError):
        tightness_check(spec, range(2))


def test_tightness_degenerate():
    spec = TightConstructionSpec.build(2, 1, 0.99)
    rows = tightness_check(spec, range(3))
    assert all(r["degenerate"] and r["tau"] == 0 for r in rows)
