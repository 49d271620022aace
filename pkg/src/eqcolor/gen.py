"""Random instance generators."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass

from .errors import CapExceeded, ParameterError
from .hypercore import Hypergraph


def _round(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class TightConstructionSpec:
    """Sizes of the random construction that has no small vertex cover.

    n = k^(2a) vertices, m = (1 - eps) k^(3a - 1) edges and the cover size
    t_cover = (1 - 2 eps) n a ln k / k, each rounded to the nearest integer.
    """

    k: int
    a: float
    eps: float
    n: int
    m: int
    t_cover: int
    n_exact: float
    m_exact: float
    t_cover_exact: float

    @classmethod
    def build(cls, k: int, a: float, eps: float) -> "TightConstructionSpec":
        if k < 2 or a < 1 or not 0 < eps < 1:
            raise ParameterError(f"invalid construction parameters k={k}, a={a}, eps={eps}")
        n_x = k ** (2 * a)
        m_x = (1 - eps) * k ** (3 * a - 1)
        t_x = (1 - 2 * eps) * n_x * a * math.log(k) / k
        return cls(k, a, eps, _round(n_x), _round(m_x), max(0, _round(t_x)), n_x, m_x, t_x)

    @property
    def expected_degree(self) -> float:
        return self.m * self.k / self.n

    def to_record(self) -> dict:
        return asdict(self)


def uniform_ksubset(n: int, k: int, rng: random.Random) -> tuple[int, ...]:
    """A uniformly random k-subset of 1..n, sorted."""
    if not 0 <= k <= n:
        raise ParameterError(f"cannot draw {k} of {n}")
    return tuple(sorted(rng.sample(range(1, n + 1), k)))


def gen_tight(spec: TightConstructionSpec, rng: random.Random) -> Hypergraph:
    """m independent uniform k-subsets of [n], repeats allowed."""
    edges = [uniform_ksubset(spec.n, spec.k, rng) for _ in range(spec.m)]
    return Hypergraph.from_edges(spec.n, spec.k, edges)


def gen_bounded(n: int, k: int, max_deg: int, m: int, rng: random.Random,
                *, budget: int | None = None) -> Hypergraph:
    """m uniform k-subsets, rejecting any that would push a vertex past max_deg.

    Gives up with :class:`CapExceeded` after ``budget`` draws (default 100 m).
    """
    if m * k > n * max_deg:
        raise ParameterError(f"m*k = {m * k} exceeds n*max_deg = {n * max_deg}")
    if k > n:
        raise ParameterError(f"k={k} exceeds n={n}")
    deg = [0] * (n + 1)
    edges: list[tuple[int, ...]] = []
    budget = 100 * m if budget is None else budget
    tries = 0
    while len(edges) < m:
        if tries >= budget:
            raise CapExceeded(f"placed {len(edges)} of {m} edges within {budget} draws",
                              {"placed": len(edges)})
        tries += 1
        e = uniform_ksubset(n, k, rng)
        if any(deg[v] >= max_deg for v in e):
            continue
        for v in e:
            deg[v] += 1
        edges.append(e)
    return Hypergraph.from_edges(n, k, edges)
