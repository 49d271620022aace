"""Ground truth: strong/equitable predicates and exhaustive small-instance solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import PreconditionError
from .hypercore import Hypergraph

BRUTE_C_MAX_N = 12
BRUTE_COVER_MAX_N = 24


@dataclass(frozen=True)
class VerificationResult:
    strong: bool
    equitable: bool
    r: int
    # (edge index, class index) for a strongness failure, or (None, class index)
    # when only the size check failed
    witness_failure: tuple[int | None, int] | None = None


def _check_partition(n: int, partition: Sequence[Sequence[int]]) -> None:
    seen: set[int] = set()
    total = 0
    for cls in partition:
        for v in cls:
            if not 1 <= v <= n:
                raise PreconditionError(f"vertex {v} outside 1..{n}")
            seen.add(v)
            total += 1
    if total != len(seen):
        raise PreconditionError("classes are not disjoint")
    if len(seen) != n:
        raise PreconditionError(f"classes cover {len(seen)} of {n} vertices")


def verify_equitable(partition: Sequence[Sequence[int]], n: int) -> bool:
    r = len(partition)
    if r == 0:
        return n == 0
    lo, hi = n // r, -(-n // r)
    return all(lo <= len(cls) <= hi for cls in partition)


def verify_strong(h: Hypergraph, partition: Sequence[Sequence[int]]) -> VerificationResult:
    """Check that every edge meets every class; also reports equitability."""
    _check_partition(h.n, partition)
    label = [0] * (h.n + 1)
    for i, cls in enumerate(partition):
        for v in cls:
            label[v] = i
    r = len(partition)
    for f, e in enumerate(h.edges):
        hit = {label[v] for v in e}
        if len(hit) < r:
            miss = next(i for i in range(r) if i not in hit)
            return VerificationResult(False, verify_equitable(partition, h.n), r, (f, miss))
    equitable = verify_equitable(partition, h.n)
    witness = None
    if not equitable:
        lo, hi = h.n // r, -(-h.n // r)
        witness = (None, next(i for i, c in enumerate(partition) if not lo <= len(c) <= hi))
    return VerificationResult(True, equitable, r, witness)


# -- exhaustive strong-partition search --------------------------------------

def _edge_masks(h: Hypergraph) -> list[int]:
    return [sum(1 << (v - 1) for v in e) for e in h.edges]


def iter_strong_partitions(h: Hypergraph, r: int | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every strong partition (optionally with exactly r classes).

    Restricted-growth enumeration over vertices 1..n. A branch is cut as soon
    as some edge whose vertices are all placed fails to meet an open class, or
    (for fixed r) an edge can no longer reach r distinct classes.
    """
    n = h.n
    if n > BRUTE_C_MAX_N:
        raise PreconditionError(f"exhaustive search limited to n <= {BRUTE_C_MAX_N}, got {n}")
    edges = _edge_masks(h)
    # edges whose largest vertex is v: they become fully placed at step v
    closing: list[list[int]] = [[] for _ in range(n + 1)]
    for e in h.edges:
        closing[e[-1]].append(sum(1 << (v - 1) for v in e))
    closed_before: list[list[int]] = [[] for _ in range(n + 2)]
    acc: list[int] = []
    for v in range(1, n + 2):
        closed_before[v] = list(acc)
        if v <= n:
            acc.extend(closing[v])
    classes: list[int] = []

    def feasible_for_r(i: int) -> bool:
        # vertices 1..i placed
        placed = (1 << i) - 1
        for em in edges:
            hit = sum(1 for c in classes if c & em)
            if hit + bin(em & ~placed).count("1") < r:
                return False
        return True

    def rec(v: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if v > n:
            if r is None or len(classes) == r:
                yield tuple(tuple(u for u in range(1, n + 1) if c >> (u - 1) & 1) for c in classes)
            return
        bit = 1 << (v - 1)
        options = list(range(len(classes)))
        if r is None or len(classes) < r:
            # a new class cannot meet edges already fully placed
            if not closed_before[v]:
                options.append(len(classes))
        if r is not None and len(classes) + (n - v + 1) < r:
            return
        for j in options:
            if j == len(classes):
                classes.append(bit)
            else:
                classes[j] |= bit
            if all(c & em for em in closing[v] for c in classes) and (r is None or feasible_for_r(v)):
                yield from rec(v + 1)
            if classes[j] == bit:
                classes.pop()
            else:
                classes[j] &= ~bit

    if n == 0:
        if r in (None, 0):
            yield ()
        return
    yield from rec(1)


def brute_c(h: Hypergraph) -> int:
    """Exact c(H): the most classes in any strong partition (n <= 12)."""
    if h.n > BRUTE_C_MAX_N:
        raise PreconditionError(f"brute_c limited to n <= {BRUTE_C_MAX_N}, got {h.n}")
    upper = h.n if not h.edges else min(h.k, h.n)
    for r in range(upper, 0, -1):
        if next(iter_strong_partitions(h, r), None) is not None:
            return r
    return 1 if h.n else 0


# -- exact minimum transversal -----------------------------------------------

def brute_min_cover(h: Hypergraph) -> int:
    """Exact transversal number tau(H) by branch and bound (n <= 24)."""
    if h.n > BRUTE_COVER_MAX_N:
        raise PreconditionError(f"brute_min_cover limited to n <= {BRUTE_COVER_MAX_N}, got {h.n}")
    edges = sorted(set(_edge_masks(h)))
    if not edges:
        return 0
    best = [h.n]

    def packing_bound(uncovered: list[int]) -> int:
        # pairwise-disjoint uncovered edges each need their own cover vertex
        used = 0
        count = 0
        for em in uncovered:
            if not em & used:
                used |= em
                count += 1
        return count

    def rec(chosen: int, size: int) -> None:
        uncovered = [em for em in edges if not em & chosen]
        if not uncovered:
            best[0] = min(best[0], size)
            return
        if size + packing_bound(uncovered) >= best[0]:
            return
        deg: dict[int, int] = {}
        for em in uncovered:
            x = em
            while x:
                low = x & -x
                deg[low] = deg.get(low, 0) + 1
                x ^= low
        # branch on the uncovered edge of largest total degree, heaviest vertex first
        pivot = max(uncovered, key=lambda em: (sum(d for b, d in deg.items() if em & b), -em))
        verts = [b for b in deg if pivot & b]
        verts.sort(key=lambda b: (-deg[b], b))
        for b in verts:
            rec(chosen | b, size + 1)

    rec(0, 0)
    return best[0]


def cover_bound_check(h: Hypergraph) -> bool | None:
    """Check c(H) <= floor(n / tau(H)); ``None`` when H has no edges."""
    tau = brute_min_cover(h)
    if tau == 0:
        return None
    return brute_c(h) <= h.n // tau
