"""End-to-end runs, benchmark sweeps and the small-scale tightness check."""

from __future__ import annotations

import json
import math
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import mean
from typing import Any, Iterable, Sequence

from . import phase3
from .errors import CapExceeded, ColoringError, ParameterError, PreconditionError, VerificationError
from .gen import TightConstructionSpec, gen_bounded, gen_tight
from .hypercore import Hypergraph, max_degree
from .oracle import BRUTE_COVER_MAX_N, brute_min_cover, verify_strong
from .params import ColoringParams, derive_params, params_with_override
from .phase1 import Phase1Caps, Trace, run_phase1
from .phase2 import Phase2Caps, build_missing_table, complete_coloring
from .phase3 import EquitablePartition, FiniteCaps, finite_branch_applies, finite_case_color


@dataclass
class Caps:
    phase1: Phase1Caps = field(default_factory=Phase1Caps)
    phase2: Phase2Caps = field(default_factory=Phase2Caps)
    finite: FiniteCaps = field(default_factory=FiniteCaps)
    # full phase1 -> phase2 attempts before giving up on the general branch
    attempts: int = 20


@dataclass
class Overrides:
    t: int | None = None
    s: int | None = None
    z: int | None = None
    allow_degree: bool = False


@dataclass
class RunReport:
    k: int
    n: int
    m: int
    max_degree: int
    params: dict
    branch: str
    stats: dict
    r: int
    target: int | None
    target_met: bool | None
    strong: bool
    equitable: bool
    seed: int
    warnings: list[str] = field(default_factory=list)
    wall_time: float | None = None

    def to_record(self, timing: bool = False) -> dict:
        rec = {k: v for k, v in self.__dict__.items() if k != "wall_time"}
        if timing:
            rec["wall_time"] = self.wall_time
        return rec

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_record(timing), sort_keys=True)


def make_params(k: int, a: float, eps: float | None, overrides: Overrides | None) -> ColoringParams:
    ov = overrides or Overrides()
    if ov.t is not None:
        return params_with_override(k, a, ov.t, s=ov.s, z=ov.z)
    if eps is None:
        raise ParameterError("eps is required unless t is overridden")
    if ov.s is not None or ov.z is not None:
        base = derive_params(k, a, eps)
        return params_with_override(k, a, base.t, s=ov.s, z=ov.z)
    return derive_params(k, a, eps)


def _general_branch(h: Hypergraph, params: ColoringParams, rng: random.Random, caps: Caps,
                    stats: Counter, trace: Trace | None) -> EquitablePartition:
    last: CapExceeded | None = None
    for attempt in range(caps.attempts):
        stats["attempts"] += 1
        pc = run_phase1(h, params, rng, caps.phase1, stats=stats, trace=trace)
        table = build_missing_table(h, pc, params)
        try:
            colors = complete_coloring(h, pc, table, params, rng, caps.phase2, stats=stats, trace=trace)
        except CapExceeded as exc:
            stats["phase2_failures"] += 1
            last = exc
            if trace is not None:
                trace(f"pipeline retry {attempt + 1}")
            continue
        return phase3.rebalance(h, colors, params)
    raise CapExceeded(f"no completion within {caps.attempts} phase1/phase2 attempts",
                      last.diagnostics if last else None)


def run_pipeline(h: Hypergraph, a: float, eps: float | None, seed: int,
                 caps: Caps | None = None, overrides: Overrides | None = None,
                 trace: Trace | None = None) -> tuple[RunReport, EquitablePartition]:
    """Color ``h`` equitably and strongly; the result is independently verified.

    The branch is picked by ``n < 2 k ln k``. Success flags in the report
    come from :func:`verify_strong`; a failing verifier raises
    :class:`VerificationError` instead of returning.
    """
    start = time.perf_counter()
    caps = caps or Caps()
    ov = overrides or Overrides()
    warnings: list[str] = []
    delta = max_degree(h)
    bound = h.k ** a
    if delta > bound:
        if not ov.allow_degree:
            raise PreconditionError(f"max degree {delta} exceeds k^a = {bound:.6g}")
        warnings.append(f"max degree {delta} exceeds k^a = {bound:.6g}")
    params = make_params(h.k, a, eps, ov)
    if params.waived:
        warnings.append("waived: " + ",".join(params.waived))
    rng = random.Random(seed)
    stats: Counter = Counter()
    if finite_branch_applies(h):
        branch = "finite"
        part = finite_case_color(h, params, rng, caps.finite, stats=stats, trace=trace)
    else:
        branch = "general"
        if params.final_classes < 1:
            raise ParameterError(f"t - s = {params.final_classes} < 1")
        part = _general_branch(h, params, rng, caps, stats, trace)

    res = verify_strong(h, part.classes)
    if not (res.strong and res.equitable):
        raise VerificationError(f"pipeline produced an invalid partition: {res}")
    eps_t = eps if eps is not None else params.eps
    target = params.target_colors(eps_t) if eps_t is not None else None
    report = RunReport(
        k=h.k, n=h.n, m=h.m, max_degree=delta, params=params.to_record(), branch=branch,
        stats=dict(sorted(stats.items())), r=res.r, target=target,
        target_met=None if target is None else res.r >= target,
        strong=res.strong, equitable=res.equitable, seed=seed, warnings=warnings,
        wall_time=time.perf_counter() - start,
    )
    return report, part


# -- benchmark sweep ---------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """One grid cell. ``model`` is ``"bounded"`` or ``"tight"``."""

    k: int
    a: float = 1.0
    eps: float | None = 0.5
    model: str = "bounded"
    seeds: tuple[int, ...] = (0,)
    n: int | None = None
    m: int | None = None
    max_deg: int | None = None
    t: int | None = None
    s: int | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "Cell":
        d = dict(d)
        if "seeds" in d:
            seeds = d["seeds"]
            d["seeds"] = tuple(range(seeds)) if isinstance(seeds, int) else tuple(seeds)
        return cls(**d)

    def label(self) -> str:
        parts = [f"{self.model}", f"k={self.k}", f"a={self.a}", f"eps={self.eps}"]
        for name in ("n", "m", "max_deg", "t", "s"):
            val = getattr(self, name)
            if val is not None:
                parts.append(f"{name}={val}")
        return " ".join(parts)

    def instance(self, seed: int) -> Hypergraph:
        rng = random.Random(seed)
        if self.model == "tight":
            eps = self.eps if self.eps is not None else 0.5
            return gen_tight(TightConstructionSpec.build(self.k, self.a, eps), rng)
        if self.model == "bounded":
            max_deg = self.max_deg if self.max_deg is not None else math.floor(self.k ** self.a)
            n = self.n if self.n is not None else 8 * self.k
            m = self.m if self.m is not None else n * max_deg // (8 * self.k)
            return gen_bounded(n, self.k, max_deg, m, rng)
        raise ParameterError(f"unknown model {self.model!r}")


ROW_FIELDS = ["cell", "seed", "status", "branch", "n", "m", "max_degree", "t", "s", "r",
              "target", "ratio", "phase1_resamples", "phase1_restarts", "phase2_resamples",
              "attempts", "finite_retries", "reason"]


def _run_cell_seed(args: tuple[int, Cell, int]) -> dict:
    idx, cell, seed = args
    row: dict[str, Any] = {f: "" for f in ROW_FIELDS}
    row.update(cell=idx, seed=seed)
    try:
        h = cell.instance(seed)
        ov = Overrides(t=cell.t, s=cell.s, allow_degree=cell.model == "tight")
        report, _ = run_pipeline(h, cell.a, cell.eps, seed, overrides=ov)
    except (ColoringError, ValueError) as exc:
        row.update(status="failed", reason=f"{type(exc).__name__}: {exc}")
        return row
    target = report.target
    row.update(
        status="ok", branch=report.branch, n=report.n, m=report.m, max_degree=report.max_degree,
        t=report.params["t"], s=report.params["s"], r=report.r, target=target,
        ratio="" if not target else round(report.r / target, 6),
    )
    for key in ("phase1_resamples", "phase1_restarts", "phase2_resamples", "attempts", "finite_retries"):
        row[key] = report.stats.get(key, 0)
    return row


def _aggregate(idx: int, rows: list[dict]) -> dict:
    ok = [r for r in rows if r["status"] == "ok"]
    agg: dict[str, Any] = {f: "" for f in ROW_FIELDS}
    agg.update(cell=idx, seed="all", status=f"aggregate {len(ok)}/{len(rows)} ok")
    if ok:
        rs = [r["r"] for r in ok]
        agg["r"] = f"mean={mean(rs):.4g} min={min(rs)} max={max(rs)}"
        res = [r["phase1_resamples"] for r in ok]
        agg["phase1_resamples"] = f"mean={mean(res):.4g} min={min(res)} max={max(res)}"
        agg["target"] = ok[0]["target"]
    else:
        agg["reason"] = rows[0]["reason"] if rows else "no seeds"
    return agg


def bench_sweep(cells: Sequence[Cell], jobs: int = 1) -> list[dict]:
    """One row per (cell, seed) plus one aggregate row per cell, in grid order."""
    work = [(i, cell, seed) for i, cell in enumerate(cells) for seed in cell.seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell_seed, work))
    else:
        results = [_run_cell_seed(w) for w in work]
    results.sort(key=lambda r: (r["cell"], r["seed"]))
    out: list[dict] = []
    for i in range(len(cells)):
        rows = [r for r in results if r["cell"] == i]
        out.extend(rows)
        out.append(_aggregate(i, rows))
    return out


# -- tightness check ---------------------------------------------------------

TIGHT_FIELDS = ["seed", "k", "a", "eps", "n", "m", "max_degree", "degree_ok", "tau",
                "c_upper", "t_cover", "tau_exceeds_t_cover", "degenerate"]


def tightness_check(spec: TightConstructionSpec, seeds: Iterable[int],
                    cover_cap: int = BRUTE_COVER_MAX_N) -> list[dict]:
    """Exact transversal numbers of small random constructions.

    ``c_upper = floor(n / tau)`` bounds c(H) because every class of a strong
    coloring is a transversal. The construction's guarantee is asymptotic, so
    ``tau_exceeds_t_cover`` is informational at this size.
    """
    if spec.n > min(cover_cap, BRUTE_COVER_MAX_N):
        raise PreconditionError(f"n={spec.n} exceeds the exact cover cap {cover_cap}")
    rows = []
    for seed in seeds:
        h = gen_tight(spec, random.Random(seed))
        tau = brute_min_cover(h)
        delta = max_degree(h)
        rows.append({
            "seed": seed, "k": spec.k, "a": spec.a, "eps": spec.eps, "n": spec.n, "m": spec.m,
            "max_degree": delta, "degree_ok": delta <= spec.k ** spec.a, "tau": tau,
            "c_upper": h.n // tau if tau else "",
            "t_cover": spec.t_cover, "tau_exceeds_t_cover": tau > spec.t_cover,
            "degenerate": tau == 0,
        })
    return rows
