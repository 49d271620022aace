"""Turning a strong coloring into an equitable one, and the small-n branch.

Rebalancing dissolves whole color classes and pours their vertices into the
surviving classes. Survivors only grow, so any edge that met a survivor before
still meets it: strongness is preserved for free.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, PreconditionError, RebalanceError
from .hypercore import Hypergraph
from .oracle import verify_strong
from .params import ColoringParams
from .phase1 import UNCOLORED, Trace, check_condition1, sample_partial

Classes = list[list[int]]


@dataclass(frozen=True)
class EquitablePartition:
    r: int
    n: int
    classes: tuple[tuple[int, ...], ...]
    source_params: ColoringParams | None = None

    def serialize(self) -> str:
        lines = [f"{self.r} {self.n}"]
        lines.extend(" ".join(map(str, c)) for c in self.classes)
        return "\n".join(lines) + "\n"


def parse_partition(text: str) -> EquitablePartition:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("partition header must be 'r n'")
    r, n = int(rows[0][0]), int(rows[0][1])
    classes = tuple(tuple(sorted(int(x) for x in row)) for row in rows[1:])
    if len(classes) != r:
        raise ValueError(f"header declares {r} classes, found {len(classes)}")
    return EquitablePartition(r, n, classes)


def color_classes(coloring: Sequence[int], t: int) -> Classes:
    """Group vertices 1..n by color 1..t (index 0 of the result is color 1)."""
    classes: Classes = [[] for _ in range(t)]
    for v in range(1, len(coloring)):
        c = coloring[v]
        if not 1 <= c <= t:
            raise PreconditionError(f"vertex {v} has color {c} outside 1..{t}")
        classes[c - 1].append(v)
    return classes


def rebalance_classes(classes: Classes, n: int, dissolve: Sequence[int]) -> Classes:
    """Dissolve the given class indices and refill the others to equal sizes.

    Survivors keep their relative order. The ``n mod r`` largest survivors are
    assigned the larger target; vertices from dissolved classes (largest class
    first, ascending ids) go to the most deficient survivor, ties by position.
    """
    gone = set(dissolve)
    survivors = [list(c) for i, c in enumerate(classes) if i not in gone]
    pool = [v for i in sorted(gone, key=lambda i: (-len(classes[i]), i)) for v in sorted(classes[i])]
    r = len(survivors)
    if r == 0:
        raise RebalanceError("no surviving classes")
    lo, rem = divmod(n, r)
    order = sorted(range(r), key=lambda i: (-len(survivors[i]), i))
    target = [lo] * r
    for i in order[:rem]:
        target[i] = lo + 1
    for i in range(r):
        if len(survivors[i]) > target[i]:
            raise RebalanceError(
                f"surviving class {i} has {len(survivors[i])} vertices, above its target {target[i]}")
    deficit = [target[i] - len(survivors[i]) for i in range(r)]
    if sum(deficit) != len(pool):
        raise RebalanceError(f"pool of {len(pool)} vertices cannot fill deficit {sum(deficit)}")
    it = iter(pool)
    while True:
        i = max(range(r), key=lambda j: (deficit[j], -j))
        if deficit[i] == 0:
            break
        take = [next(it) for _ in range(deficit[i])]
        survivors[i].extend(take)
        deficit[i] = 0
    return [sorted(c) for c in survivors]


def _finish(h: Hypergraph, classes: Classes, params: ColoringParams | None) -> EquitablePartition:
    part = EquitablePartition(len(classes), h.n, tuple(tuple(c) for c in classes), params)
    res = verify_strong(h, part.classes)
    if not (res.strong and res.equitable):
        raise RebalanceError(f"rebalanced partition failed verification: {res}")
    return part


def _largest(classes: Classes, among: Sequence[int], s: int) -> list[int]:
    return sorted(among, key=lambda i: (-len(classes[i]), i))[:s]


def rebalance(h: Hypergraph, coloring: Sequence[int], params: ColoringParams) -> EquitablePartition:
    """Dissolve the s largest classes of a strong t-coloring into the rest."""
    return rebalance_with_drop(h, coloring, params, 0)


def rebalance_with_drop(h: Hypergraph, coloring: Sequence[int], params: ColoringParams,
                        r_drop: int | None = None) -> EquitablePartition:
    """As :func:`rebalance`, first dissolving the classes below the size floor.

    ``r_drop`` is the expected number of undersized classes; ``None`` accepts
    whatever count is found (still bounded by ``finite_r_cap``).
    """
    classes = color_classes(coloring, params.t)
    floor = params.class_floor(h.n)
    small = [i for i, c in enumerate(classes) if len(c) < floor]
    if r_drop is None:
        r_drop = len(small)
    if r_drop > params.finite_r_cap:
        raise PreconditionError(f"r_drop={r_drop} exceeds cap {params.finite_r_cap:.4g}")
    if len(small) > r_drop:
        raise PreconditionError(
            f"{len(small)} classes are below the floor {floor:.4g}; only {r_drop} may be dropped")
    rest = [i for i in range(params.t) if i not in small]
    # classes at or above the floor may still be dropped when r_drop exceeds the count found
    extra = r_drop - len(small)
    small += sorted(rest, key=lambda i: (len(classes[i]), i))[:extra]
    rest = [i for i in rest if i not in small]
    if len(rest) - params.s < 1:
        raise RebalanceError(f"t - r_drop - s = {len(rest) - params.s} < 1")
    dissolve = small + _largest(classes, rest, params.s)
    return _finish(h, rebalance_classes(classes, h.n, dissolve), params)


# -- small-n branch ----------------------------------------------------------

@dataclass
class FiniteCaps:
    retries: int = 1000


def finite_branch_applies(h: Hypergraph) -> bool:
    return h.n < 2 * h.k * math.log(h.k)


def _greedy_repair(h: Hypergraph, colors: list[int], t: int) -> list[int]:
    """Give each still-missing (edge, color) pair an uncolored vertex of the edge."""
    repaired: list[int] = []
    for f, e in enumerate(h.edges):
        for c in range(1, t + 1):
            if any(colors[v] == c for v in e):
                continue
            u = next((v for v in e if colors[v] == UNCOLORED), None)
            if u is None:
                raise RebalanceError(f"no uncolored vertex left in edge {f} for color {c}")
            colors[u] = c
            repaired.append(u)
    return repaired


def finite_case_color(h: Hypergraph, params: ColoringParams, rng: random.Random,
                      caps: FiniteCaps | None = None, *, stats: Counter | None = None,
                      trace: Trace | None = None) -> EquitablePartition:
    """Sample until the three small-n properties hold, repair, then rebalance.

    Besides the three properties a sample is rejected when it would leave no
    class after dropping the undersized ones and the s largest.
    """
    if not finite_branch_applies(h):
        raise PreconditionError(f"n={h.n} >= 2 k ln k = {2 * h.k * math.log(h.k):.4g}; use the general branch")
    caps = caps or FiniteCaps()
    stats = stats if stats is not None else Counter()
    fails: Counter = Counter()
    floor = params.class_floor(h.n)
    for attempt in range(caps.retries + 1):
        if attempt:
            stats["finite_retries"] += 1
        pc = sample_partial(h, params, rng)
        reasons = []
        if check_condition1(h, pc, params):
            reasons.append("uncolored")
        small = sum(1 for c in range(1, params.t + 1) if pc.class_counts[c] < floor)
        if small > params.finite_r_cap:
            reasons.append("small_classes")
        pairs = sum(1 for f in range(h.m) for c in pc.missing(f))
        if pairs >= params.thresh_uncolored:
            reasons.append("missing_pairs")
        if not reasons and params.t - small - params.s < 1:
            reasons.append("no_survivors")
        if reasons:
            fails.update(reasons)
            if trace is not None:
                trace(f"finite retry {','.join(reasons)} {attempt}")
            continue
        colors = list(pc.assignment)
        repaired = _greedy_repair(h, colors, params.t)
        if len(set(repaired)) != len(repaired):
            raise RebalanceError("greedy repair reused a vertex")
        stats["finite_repairs"] += len(repaired)
        counts = Counter(colors[1:])
        # leftover uncolored vertices join the currently smallest class
        for v in range(1, h.n + 1):
            if colors[v] == UNCOLORED:
                c = min(range(1, params.t + 1), key=lambda x: (counts[x], x))
                colors[v] = c
                counts[c] += 1
        return rebalance_with_drop(h, colors, params, None)
    raise CapExceeded(f"finite-case retry cap {caps.retries} exceeded "
                      f"(most frequent failure: {fails.most_common(1)[0][0]})", dict(fails))
