"""k-uniform hypergraph representation, text I/O and the neighborhood reduction.

Text format::

    # comments allowed anywhere
    k n m
    v1 v2 ... vk      (m lines)

Vertices are integers ``1..n``. Edges may repeat (multi-hypergraphs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

from .errors import HypergraphFormatError, PreconditionError

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    n: int
    k: int
    edges: tuple[Edge, ...]
    # incidence[v] lists edge indices through v; slot 0 is unused
    incidence: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        if n < 0 or k < 1:
            raise ValueError(f"invalid sizes n={n}, k={k}")
        norm: list[Edge] = []
        inc: list[list[int]] = [[] for _ in range(n + 1)]
        for i, e in enumerate(edges):
            ed = tuple(sorted(e))
            _check_edge(ed, n, k)
            norm.append(ed)
            for v in ed:
                inc[v].append(i)
        return cls(n, k, tuple(norm), tuple(tuple(x) for x in inc))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(self.incidence[v]) for v in range(1, self.n + 1)]

    def vertices(self) -> range:
        return range(1, self.n + 1)


def _check_edge(edge: Edge, n: int, k: int, line: int | None = None) -> None:
    if len(edge) != k:
        raise HypergraphFormatError(f"edge {list(edge)} has {len(edge)} vertices, expected {k}", line)
    for a, b in zip(edge, edge[1:]):
        if a == b:
            raise HypergraphFormatError(f"repeated vertex {a} in edge", line)
    for v in edge:
        if not 1 <= v <= n:
            raise HypergraphFormatError(f"vertex {v} out of range 1..{n}", line)


def max_degree(h: Hypergraph) -> int:
    return max((len(x) for x in h.incidence[1:]), default=0)


def parse_hypergraph(text: str | bytes) -> Hypergraph:
    """Parse the ``k n m`` text format, reporting errors with line numbers."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise HypergraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(nums) != 3 or nums[0] < 1 or nums[1] < 0 or nums[2] < 0:
                raise HypergraphFormatError("header must be 'k n m' with k >= 1", lineno)
            header = (nums[0], nums[1], nums[2])
            continue
        k, n, m = header
        if len(edges) >= m:
            raise HypergraphFormatError(f"more than {m} edge lines", lineno)
        ed = tuple(sorted(nums))
        _check_edge(ed, n, k, lineno)
        edges.append(ed)
    if header is None:
        raise HypergraphFormatError("missing header", None)
    k, n, m = header
    if len(edges) != m:
        raise HypergraphFormatError(f"expected {m} edges, found {len(edges)}", None)
    return Hypergraph.from_edges(n, k, edges)


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.n} {h.m}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(fp: IO[str]) -> Hypergraph:
    return parse_hypergraph(fp.read())


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    adjacency: Mapping[int, frozenset[int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, {v: frozenset(s) for v, s in adj.items()})


def neighborhood_hypergraph(g: SimpleGraph) -> Hypergraph:
    """Hypergraph on V(g) whose edges are the open neighborhoods N(v).

    For a k-regular graph the result is k-uniform with maximum degree k,
    and a strong coloring of it is a partition into total dominating sets.
    """
    degs = {len(g.adjacency[v]) for v in range(1, g.n + 1)}
    if len(degs) != 1:
        raise PreconditionError(f"graph is not regular (degrees {sorted(degs)})")
    k = degs.pop()
    if k == 0:
        raise PreconditionError("graph is 0-regular; neighborhoods are empty")
    return Hypergraph.from_edges(g.n, k, (g.adjacency[v] for v in range(1, g.n + 1)))
