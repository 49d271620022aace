import random

import pytest

from eqcolor.errors import CapExceeded
from eqcolor.gen import gen_bounded
from eqcolor.hypercore import Hypergraph
from eqcolor.oracle import verify_strong
from eqcolor.params import params_with_override
from eqcolor.phase1 import UNCOLORED, PartialColoring, run_phase1
from eqcolor.phase2 import build_missing_table, complete_coloring, missing_pairs
from eqcolor.phase3 import color_classes

from naive import missing_colors, supports


def test_all_colors_present_everywhere():
    params = params_with_override(12, 1, 3)
    h = Hypergraph.from_edges(6, 3, [(1, 2, 3), (4, 5, 6)])
    pc = PartialColoring(h, 3, [0, 1, 2, 3, 1, 2, 3])
    table = build_missing_table(h, pc, params, check=False)
    assert all(not m for m in table.m_of)
    assert all(not s for s in table.s_of)


def test_single_missing_color_reaches_supports():
    params = params_with_override(12, 1, 3)
    # colors 1, 2 present; vertices 3..7 uncolored; color 3 missing
    h = Hypergraph.from_edges(7, 7, [range(1, 8)])
    pc = PartialColoring(h, 3, [0, 1, 2] + [UNCOLORED] * 5)
    table = build_missing_table(h, pc, params, check=False)
    assert table.m_of[0] == {3}
    assert table.t_of[0] == (3, 4, 5, 6, 7)
    for v in range(3, 8):
        assert 3 in table.s_of[v]


def phase1_output(seed, m=128):
    params = params_with_override(32, 1, 8)
    h = gen_bounded(4096, 32, 32, m, random.Random(seed))
    return h, params, run_phase1(h, params, random.Random(seed))


def test_table_matches_naive_scan():
    h, params, pc = phase1_output(3)
    table = build_missing_table(h, pc, params)
    for f, e in enumerate(h.edges):
        assert table.m_of[f] == set(missing_colors(e, pc.assignment, params.t))
        assert table.t_of[f] == tuple(v for v in e if pc.assignment[v] == UNCOLORED)
    naive = supports(h, pc.assignment, params.t)
    for v in range(1, h.n + 1):
        assert set(table.s_of[v]) == naive[v]


def test_no_missing_colors_means_no_resampling():
    params = params_with_override(12, 1, 2)
    h = Hypergraph.from_edges(6, 3, [(1, 2, 4), (3, 5, 6)])
    pc = PartialColoring(h, 2, [0, 1, 2, 1, UNCOLORED, 2, UNCOLORED])
    table = build_missing_table(h, pc, params, check=False)
    trace = []
    colors = complete_coloring(h, pc, table, params, random.Random(0), trace=trace.append)
    assert trace == []
    assert colors[4] == colors[6] == 1  # empty support falls back to color 1


def test_forced_choice():
    params = params_with_override(12, 1, 3)
    h = Hypergraph.from_edges(3, 3, [(1, 2, 3)])
    pc = PartialColoring(h, 3, [0, 1, 2, UNCOLORED])
    table = build_missing_table(h, pc, params, check=False)
    assert table.s_of[3] == (3,)
    colors = complete_coloring(h, pc, table, params, random.Random(0))
    assert colors[3] == 3
    assert missing_pairs(h, colors, 3) == []


def test_infeasible_edge_fails_fast():
    params = params_with_override(12, 1, 3)
    h = Hypergraph.from_edges(3, 3, [(1, 2, 3)])
    pc = PartialColoring(h, 3, [0, 1, UNCOLORED, 1])  # misses {2, 3}, one free vertex
    table = build_missing_table(h, pc, params, check=False)
    with pytest.raises(CapExceeded) as info:
        complete_coloring(h, pc, table, params, random.Random(0))
    assert info.value.diagnostics == [(0, 2), (0, 3)]


def test_resample_cap_reports_pairs():
    from eqcolor.phase2 import Phase2Caps
    params = params_with_override(12, 1, 3)
    # vertex 4 is the only free vertex of both edges, which need different colors
    h = Hypergraph.from_edges(7, 4, [(1, 2, 3, 4), (4, 5, 6, 7)])
    pc = PartialColoring(h, 3, [0, 1, 2, 1, UNCOLORED, 1, 3, 1])
    table = build_missing_table(h, pc, params, check=False)
    with pytest.raises(CapExceeded) as info:
        complete_coloring(h, pc, table, params, random.Random(0), Phase2Caps(resamples=20))
    assert info.value.diagnostics


@pytest.mark.parametrize("seed", range(8))
def test_completion_is_strong(seed):
    h, params, pc = phase1_output(seed)
    table = build_missing_table(h, pc, params)
    try:
        colors = complete_coloring(h, pc, table, params, random.Random(seed))
    except CapExceeded:
        pytest.skip("completion infeasible for this phase-1 sample")
    for v in range(1, h.n + 1):
        if pc.assignment[v] != UNCOLORED:
            assert colors[v] == pc.assignment[v]
        assert 1 <= colors[v] <= params.t
    res = verify_strong(h, [c for c in color_classes(colors, params.t)])
    assert res.strong


def test_resample_only_touches_intersecting_edges():
    checked = 0
    for seed in range(20):
        h, params, pc = phase1_output(seed, m=256)
        table = build_missing_table(h, pc, params)

        def status(colors):
            return {(g, c) for g, e in enumerate(h.edges) for c in table.m_of[g]
                    if all(colors[v] != c for v in e)}

        prev = []

        def on_step(f, colors):
            nonlocal checked
            now = status(colors)
            if f is not None:
                touched = set(table.t_of[f])
                for g, e in enumerate(h.edges):
                    if touched.isdisjoint(e):
                        assert {p for p in now if p[0] == g} == {p for p in prev[-1] if p[0] == g}
                checked += 1
            prev.append(now)

        try:
            complete_coloring(h, pc, table, params, random.Random(seed), on_step=on_step)
        except CapExceeded:
            pass
        if checked >= 3:
            break
    assert checked >= 3
