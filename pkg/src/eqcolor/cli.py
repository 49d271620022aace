"""Command-line entry point: ``eqcolor {gen,color,verify,bench,tight}``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import random
import sys
from pathlib import Path

from .errors import ColoringError
from .gen import TightConstructionSpec, gen_bounded, gen_tight
from .hypercore import parse_hypergraph, serialize_hypergraph
from .oracle import verify_strong
from .phase1 import Phase1Caps
from .phase2 import Phase2Caps
from .phase3 import FiniteCaps, parse_partition
from .pipeline import (ROW_FIELDS, TIGHT_FIELDS, Caps, Cell, Overrides, bench_sweep,
                       run_pipeline, tightness_check)

log = logging.getLogger("eqcolor")

SEED_ENV = "EQCOLOR_SEED"


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_csv(path: str | None, fields: list[str], rows: list[dict]) -> None:
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if args.model == "tight":
        spec = TightConstructionSpec.build(args.k, args.a, args.eps)
        h = gen_tight(spec, rng)
        sidecar = {"model": "tight", "seed": args.seed, "spec": spec.to_record()}
    else:
        if args.n is None or args.m is None:
            raise SystemExit("bounded model needs --n and --m")
        max_deg = args.max_deg if args.max_deg is not None else int(args.k ** args.a)
        h = gen_bounded(args.n, args.k, max_deg, args.m, rng)
        sidecar = {"model": "bounded", "seed": args.seed,
                   "spec": {"n": args.n, "k": args.k, "max_deg": max_deg, "m": args.m}}
    _write(args.out, serialize_hypergraph(h))
    if args.out not in (None, "-"):
        Path(args.out + ".json").write_text(json.dumps(sidecar, sort_keys=True) + "\n")
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    h = parse_hypergraph(Path(args.input).read_bytes())
    caps = Caps(
        phase1=Phase1Caps(resamples=args.phase1_resamples, restarts=args.restarts),
        phase2=Phase2Caps(resamples=args.phase2_resamples),
        finite=FiniteCaps(retries=args.finite_retries),
        attempts=args.attempts,
    )
    ov = Overrides(t=args.t, s=args.s, z=args.z, allow_degree=args.allow_degree)
    trace_fh = open(args.trace, "w") if args.trace else None
    trace = (lambda line: trace_fh.write(line + "\n")) if trace_fh else None
    try:
        report, part = run_pipeline(h, args.a, args.eps, args.seed, caps, ov, trace)
    except (ColoringError, ValueError) as exc:
        log.error("coloring failed: %s", exc)
        return 2
    finally:
        if trace_fh:
            trace_fh.close()
    for w in report.warnings:
        log.warning(w)
    _write(args.out_partition, part.serialize())
    if args.out_report:
        _write(args.out_report, report.to_json(timing=args.timing) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    h = parse_hypergraph(Path(args.input).read_bytes())
    part = parse_partition(Path(args.partition).read_text())
    res = verify_strong(h, part.classes)
    print(json.dumps({"strong": res.strong, "equitable": res.equitable, "r": res.r,
                      "witness_failure": res.witness_failure}, sort_keys=True))
    return 0 if res.strong and res.equitable else 1


def cmd_bench(args: argparse.Namespace) -> int:
    config = json.loads(Path(args.config).read_text())
    cells = [Cell.from_dict(c) for c in config["cells"]]
    rows = bench_sweep(cells, jobs=args.jobs)
    _write_csv(args.out_csv, ROW_FIELDS, rows)
    return 0


def cmd_tight(args: argparse.Namespace) -> int:
    spec = TightConstructionSpec.build(args.k, args.a, args.eps)
    rows = tightness_check(spec, range(args.seed, args.seed + args.seeds))
    _write_csv(args.out_csv, TIGHT_FIELDS, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqcolor", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--model", choices=["tight", "bounded"], default="bounded")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--a", type=float, default=1.0)
    g.add_argument("--eps", type=float, default=0.5)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--max-deg", type=int)
    g.add_argument("--seed", type=int, default=seed)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="compute an equitable strong coloring")
    c.add_argument("input")
    c.add_argument("--a", type=float, default=1.0)
    c.add_argument("--eps", type=float)
    c.add_argument("--seed", type=int, default=seed)
    c.add_argument("--t", type=int, help="force the palette size (skips the gamma window)")
    c.add_argument("--s", type=int, help="force the number of dissolved classes")
    c.add_argument("--z", type=int, help="force the condition-3 threshold")
    c.add_argument("--allow-degree", action="store_true",
                   help="proceed (with a warning) when max degree exceeds k^a")
    c.add_argument("--restarts", type=int, default=Phase1Caps.restarts)
    c.add_argument("--phase1-resamples", type=int)
    c.add_argument("--phase2-resamples", type=int)
    c.add_argument("--finite-retries", type=int, default=FiniteCaps.retries)
    c.add_argument("--attempts", type=int, default=Caps.attempts)
    c.add_argument("--out-partition", default="-")
    c.add_argument("--out-report")
    c.add_argument("--trace", help="write one line per resample event")
    c.add_argument("--timing", action="store_true", help="include wall time in the report")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a partition file against an instance")
    v.add_argument("input")
    v.add_argument("partition")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a grid sweep from a JSON config")
    b.add_argument("config")
    b.add_argument("--out-csv", default="-")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("tight", help="exact cover check on small random constructions")
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--a", type=float, default=1.0)
    t.add_argument("--eps", type=float, default=0.5)
    t.add_argument("--seeds", type=int, default=10)
    t.add_argument("--seed", type=int, default=seed, help="first seed")
    t.add_argument("--out-csv", default="-")
    t.set_defaults(func=cmd_tight)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
