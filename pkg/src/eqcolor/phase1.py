"""Random partial coloring and its four-condition certification.

Each vertex is left uncolored with probability ``q`` and otherwise gets a
uniform color from ``1..t``. A partial coloring is accepted when

1. every edge has at least ``k*gamma/5`` uncolored vertices,
2. every edge misses at most ``ceil(10/gamma)`` colors,
3. no vertex has ``z`` distinct incident edges paired with ``z`` distinct
   colors, each color missing from its edge,
4. every color class has at least ``n (1 + gamma/4) a ln k / k`` vertices.

Violations of 1-3 are repaired by resampling the variables of one violated
event at a time; a failure of 4 restarts the whole phase, because that event
depends on every vertex.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .errors import CapExceeded
from .hypercore import Hypergraph
from .params import ColoringParams

UNCOLORED = 0

Trace = Callable[[str], None]


class PartialColoring:
    """Vertex -> color (0 for uncolored) with per-class and per-edge caches."""

    def __init__(self, h: Hypergraph, t: int, assignment: Sequence[int]):
        if len(assignment) != h.n + 1:
            raise ValueError("assignment must have n + 1 slots (slot 0 unused)")
        self.h = h
        self.t = t
        self.assignment = list(assignment)
        self.assignment[0] = UNCOLORED
        self.class_counts = [0] * (t + 1)
        for v in range(1, h.n + 1):
            self.class_counts[self.assignment[v]] += 1
        # edge_colors[f][c] = number of vertices of f with color c (c=0: uncolored)
        self.edge_colors: list[list[int]] = []
        for e in h.edges:
            row = [0] * (t + 1)
            for v in e:
                row[self.assignment[v]] += 1
            self.edge_colors.append(row)

    @property
    def per_edge_uncolored(self) -> list[int]:
        return [row[UNCOLORED] for row in self.edge_colors]

    @property
    def uncolored_total(self) -> int:
        return self.class_counts[UNCOLORED]

    def missing(self, f: int) -> list[int]:
        row = self.edge_colors[f]
        return [c for c in range(1, self.t + 1) if row[c] == 0]

    def set_color(self, v: int, c: int) -> None:
        old = self.assignment[v]
        if old == c:
            return
        self.assignment[v] = c
        self.class_counts[old] -= 1
        self.class_counts[c] += 1
        for f in self.h.incidence[v]:
            row = self.edge_colors[f]
            row[old] -= 1
            row[c] += 1

    def copy(self) -> "PartialColoring":
        return PartialColoring(self.h, self.t, self.assignment)


def draw_color(rng: random.Random, params: ColoringParams) -> int:
    x = rng.random()
    if x < params.q:
        return UNCOLORED
    return 1 + min(params.t - 1, int((x - params.q) / params.p))


def sample_partial(h: Hypergraph, params: ColoringParams, rng: random.Random) -> PartialColoring:
    assignment = [UNCOLORED] * (h.n + 1)
    for v in range(1, h.n + 1):
        assignment[v] = draw_color(rng, params)
    return PartialColoring(h, params.t, assignment)


# -- condition checkers ------------------------------------------------------

def _edge_violates_c1(pc: PartialColoring, f: int, params: ColoringParams) -> bool:
    return pc.edge_colors[f][UNCOLORED] < params.thresh_uncolored


def _edge_violates_c2(pc: PartialColoring, f: int, params: ColoringParams) -> bool:
    row = pc.edge_colors[f]
    missing = sum(1 for c in range(1, pc.t + 1) if row[c] == 0)
    return missing > params.thresh_missing


def check_condition1(h: Hypergraph, pc: PartialColoring, params: ColoringParams) -> list[int]:
    return [f for f in range(h.m) if _edge_violates_c1(pc, f, params)]


def check_condition2(h: Hypergraph, pc: PartialColoring, params: ColoringParams) -> list[int]:
    return [f for f in range(h.m) if _edge_violates_c2(pc, f, params)]


def max_matching_size(adj: Sequence[Sequence[int]], stop_at: int | None = None) -> int:
    """Size of a maximum matching of a bipartite graph given left adjacency lists.

    Augmenting-path search; returns early once ``stop_at`` edges are matched.
    """
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for c in adj[u]:
            if c in seen:
                continue
            seen.add(c)
            if c not in match_right or augment(match_right[c], seen):
                match_right[c] = u
                return True
        return False

    size = 0
    for u in range(len(adj)):
        if adj[u] and augment(u, set()):
            size += 1
            if stop_at is not None and size >= stop_at:
                break
    return size


def _vertex_violates_c3(h: Hypergraph, pc: PartialColoring, v: int, params: ColoringParams) -> bool:
    z = params.z
    if min(len(h.incidence[v]), pc.t) < z:
        return False
    adj = [m for m in (pc.missing(f) for f in h.incidence[v]) if m]
    if len(adj) < z:
        return False
    return max_matching_size(adj, stop_at=z) >= z


def check_condition3(h: Hypergraph, pc: PartialColoring, params: ColoringParams) -> list[int]:
    return [v for v in range(1, h.n + 1) if _vertex_violates_c3(h, pc, v, params)]


def check_condition4(h: Hypergraph, pc: PartialColoring, params: ColoringParams) -> list[int]:
    floor = params.class_floor(h.n)
    return [c for c in range(1, params.t + 1) if pc.class_counts[c] < floor]


def brute_condition3(missing_sets: Sequence[Sequence[int]], z: int) -> bool:
    """Exhaustive search for z distinct edges with z distinct missing colors.

    Independent of the matching route; only usable at small degree and z.
    """
    for chosen in combinations(range(len(missing_sets)), z):
        for colors in product(*(missing_sets[i] for i in chosen)):
            if len(set(colors)) == z:
                return True
    return False


@dataclass
class ViolationReport:
    bad_edges_c1: list[int] = field(default_factory=list)
    bad_edges_c2: list[int] = field(default_factory=list)
    bad_vertices_c3: list[int] = field(default_factory=list)
    bad_colors_c4: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.bad_edges_c1 or self.bad_edges_c2 or self.bad_vertices_c3 or self.bad_colors_c4)

    def summary(self) -> dict[str, int]:
        return {
            "c1": len(self.bad_edges_c1),
            "c2": len(self.bad_edges_c2),
            "c3": len(self.bad_vertices_c3),
            "c4": len(self.bad_colors_c4),
        }


def violation_report(h: Hypergraph, pc: PartialColoring, params: ColoringParams) -> ViolationReport:
    return ViolationReport(
        check_condition1(h, pc, params),
        check_condition2(h, pc, params),
        check_condition3(h, pc, params),
        check_condition4(h, pc, params),
    )


def certify_from_scratch(h: Hypergraph, assignment: Sequence[int], params: ColoringParams) -> ViolationReport:
    """Rebuild all caches from the bare assignment and run every checker."""
    return violation_report(h, PartialColoring(h, params.t, assignment), params)


# -- resampling driver -------------------------------------------------------

@dataclass
class Phase1Caps:
    resamples: int | None = None  # per attempt; None -> 50 * (m + n)
    restarts: int = 1000


def _resample(pc: PartialColoring, vertices: Iterable[int], params: ColoringParams,
              rng: random.Random) -> None:
    for v in vertices:
        pc.set_color(v, draw_color(rng, params))


def _stabilize(h: Hypergraph, pc: PartialColoring, params: ColoringParams, rng: random.Random,
               cap: int, stats: Counter, trace: Trace | None,
               on_step: Callable[[PartialColoring], None] | None) -> None:
    bad1 = set(check_condition1(h, pc, params))
    bad2 = set(check_condition2(h, pc, params))
    # only these vertices can ever violate condition 3
    c3_live = {v for v in range(1, h.n + 1) if min(len(h.incidence[v]), pc.t) >= params.z}
    bad3 = {v for v in c3_live if _vertex_violates_c3(h, pc, v, params)}
    steps = 0
    while bad1 or bad2 or bad3:
        if steps >= cap:
            raise CapExceeded(
                f"phase 1 resample cap {cap} exceeded",
                ViolationReport(sorted(bad1), sorted(bad2), sorted(bad3),
                                check_condition4(h, pc, params)),
            )
        steps += 1
        if bad1:
            kind, ident = "A", min(bad1)
            scope = h.edges[ident]
        elif bad2:
            kind, ident = "B", min(bad2)
            scope = h.edges[ident]
        else:
            kind, ident = "C", min(bad3)
            scope = sorted({u for f in h.incidence[ident] for u in h.edges[f]})
        if trace is not None:
            trace(f"phase1 {kind} {ident} {steps}")
        _resample(pc, scope, params, rng)
        if on_step is not None:
            on_step(pc)

        touched = sorted({f for v in scope for f in h.incidence[v]})
        for f in touched:
            (bad1.add if _edge_violates_c1(pc, f, params) else bad1.discard)(f)
            (bad2.add if _edge_violates_c2(pc, f, params) else bad2.discard)(f)
        if c3_live:
            for v in {u for f in touched for u in h.edges[f]} & c3_live:
                (bad3.add if _vertex_violates_c3(h, pc, v, params) else bad3.discard)(v)
    stats["phase1_resamples"] += steps


def run_phase1(h: Hypergraph, params: ColoringParams, rng: random.Random,
               caps: Phase1Caps | None = None, *, stats: Counter | None = None,
               trace: Trace | None = None,
               on_step: Callable[[PartialColoring], None] | None = None) -> PartialColoring:
    """Sample and resample until all four conditions hold.

    Raises :class:`CapExceeded` with the last :class:`ViolationReport` when
    either the per-attempt resample budget or the restart budget runs out.
    """
    caps = caps or Phase1Caps()
    stats = stats if stats is not None else Counter()
    cap = caps.resamples if caps.resamples is not None else 50 * (h.m + h.n)
    last = None
    for attempt in range(caps.restarts + 1):
        if attempt:
            stats["phase1_restarts"] += 1
            if trace is not None:
                trace(f"phase1 D restart {attempt}")
        pc = sample_partial(h, params, rng)
        _stabilize(h, pc, params, rng, cap, stats, trace, on_step)
        bad4 = check_condition4(h, pc, params)
        if not bad4:
            return pc
        last = ViolationReport(bad_colors_c4=bad4)
    raise CapExceeded(f"phase 1 restart cap {caps.restarts} exceeded", last)
