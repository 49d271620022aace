"""Completion of a certified partial coloring into a strong t-coloring.

Each uncolored vertex draws uniformly from its support, the union of the
colors missing from the edges through it. An event (f, c) is violated while
color c, originally missing from f, is still absent from f; its variables are
the uncolored vertices of f, which get redrawn.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .errors import CapExceeded, ColoringError
from .hypercore import Hypergraph
from .params import ColoringParams
from .phase1 import UNCOLORED, PartialColoring, Trace

FALLBACK_COLOR = 1


@dataclass(frozen=True)
class MissingColorTable:
    m_of: tuple[frozenset[int], ...]      # edge -> colors missing from it
    s_of: tuple[tuple[int, ...], ...]     # vertex -> sorted support; slot 0 unused
    t_of: tuple[tuple[int, ...], ...]     # edge -> its uncolored vertices


def build_missing_table(h: Hypergraph, pc: PartialColoring, params: ColoringParams,
                        *, check: bool = True) -> MissingColorTable:
    m_of = tuple(frozenset(pc.missing(f)) for f in range(h.m))
    t_of = tuple(tuple(v for v in e if pc.assignment[v] == UNCOLORED) for e in h.edges)
    support: list[set[int]] = [set() for _ in range(h.n + 1)]
    for v in range(1, h.n + 1):
        for f in h.incidence[v]:
            support[v] |= m_of[f]
    table = MissingColorTable(m_of, tuple(tuple(sorted(s)) for s in support), t_of)
    if check:
        _check_table(h, table, params)
    return table


def _check_table(h: Hypergraph, table: MissingColorTable, params: ColoringParams) -> None:
    for f in range(h.m):
        if len(table.m_of[f]) > params.thresh_missing:
            raise ColoringError(f"edge {f} misses {len(table.m_of[f])} colors; phase 1 output invalid")
        if len(table.t_of[f]) < params.thresh_uncolored:
            raise ColoringError(f"edge {f} has {len(table.t_of[f])} uncolored vertices; phase 1 output invalid")
        for u in table.t_of[f]:
            if not table.m_of[f] <= set(table.s_of[u]):
                raise ColoringError(f"support of {u} does not cover M({f})")
    for v in range(1, h.n + 1):
        if len(table.s_of[v]) > params.support_cap:
            raise ColoringError(f"support of {v} has {len(table.s_of[v])} > {params.support_cap} colors")


@dataclass
class Phase2Caps:
    resamples: int | None = None  # None -> 50 * m


def _draw(rng: random.Random, support: tuple[int, ...]) -> int:
    if not support:
        return FALLBACK_COLOR
    return support[rng.randrange(len(support))]


def complete_coloring(h: Hypergraph, pc: PartialColoring, table: MissingColorTable,
                      params: ColoringParams, rng: random.Random,
                      caps: Phase2Caps | None = None, *, stats: Counter | None = None,
                      trace: Trace | None = None,
                      on_step: Callable[[int | None, list[int]], None] | None = None) -> list[int]:
    """Color every uncolored vertex so that each edge receives every color.

    Returns a list indexed by vertex (slot 0 unused). Raises
    :class:`CapExceeded` listing surviving (edge, color) pairs if the
    resample budget runs out, or immediately if some edge has fewer
    uncolored vertices than missing colors (no completion can exist).
    ``on_step`` sees the initial draw (edge ``None``) and every resample.
    """
    caps = caps or Phase2Caps()
    stats = stats if stats is not None else Counter()
    cap = caps.resamples if caps.resamples is not None else 50 * h.m

    short = [f for f in range(h.m) if len(table.t_of[f]) < len(table.m_of[f])]
    if short:
        pairs = [(f, c) for f in short for c in sorted(table.m_of[f])]
        raise CapExceeded(f"phase 2 infeasible: {len(short)} edges have fewer uncolored "
                          "vertices than missing colors", pairs)

    colors = list(pc.assignment)
    free = [v for v in range(1, h.n + 1) if colors[v] == UNCOLORED]
    for v in free:
        colors[v] = _draw(rng, table.s_of[v])

    # hits[f][c]: number of T(f) vertices currently colored c, for c in M(f)
    hits: list[dict[int, int]] = []
    for f in range(h.m):
        row = {c: 0 for c in table.m_of[f]}
        for u in table.t_of[f]:
            if colors[u] in row:
                row[colors[u]] += 1
        hits.append(row)
    bad = {(f, c) for f in range(h.m) for c, n_hit in hits[f].items() if n_hit == 0}
    if on_step is not None:
        on_step(None, colors)

    steps = 0
    while bad:
        if steps >= cap:
            raise CapExceeded(f"phase 2 resample cap {cap} exceeded", sorted(bad))
        steps += 1
        f, c = min(bad)
        if trace is not None:
            trace(f"phase2 A {f}:{c} {steps}")
        for u in table.t_of[f]:
            old = colors[u]
            new = _draw(rng, table.s_of[u])
            if new == old:
                continue
            colors[u] = new
            for g in h.incidence[u]:
                row = hits[g]
                if old in row:
                    row[old] -= 1
                    if row[old] == 0:
                        bad.add((g, old))
                if new in row:
                    row[new] += 1
                    bad.discard((g, new))
        if on_step is not None:
            on_step(f, colors)
    stats["phase2_resamples"] += steps
    return colors


def missing_pairs(h: Hypergraph, colors, t: int) -> list[tuple[int, int]]:
    """All (edge, color) pairs with the color absent from the edge."""
    out = []
    for f, e in enumerate(h.edges):
        present = {colors[v] for v in e}
        out.extend((f, c) for c in range(1, t + 1) if c not in present)
    return out
