"""bench CLI: run sweeps, build reports, emit problem files.

    bench run --family huber --sizes 50 --backend both --out results.csv
    bench report --in results.csv --out-dir report/
    bench gen --family huber --size 50 --seed 0 --out problem.qocoprob
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from ..fileio import save_problem
from ..problem import Settings
from .generators import Family, GeneratorConfig, generate_problem
from .metrics import (
    default_absolute_taus,
    default_relative_taus,
    performance_profile,
    shifted_geometric_mean,
)
from .runner import read_records, run_benchmark, write_records

DEFAULT_SIZES = {
    Family.HUBER: [50],
    Family.PORTFOLIO: [2],
    Family.MULTI_PERIOD_PORTFOLIO: [2],
    Family.GROUP_LASSO: [5],
    Family.TV_DENOISING: [32],
}


def _families(arg: str):
    if arg == "all":
        return list(Family)
    return [Family(arg)]


def _backends(arg: str):
    return ["builtin", "parallel"] if arg == "both" else [arg]


def cmd_run(args) -> int:
    families = _families(args.family)
    backends = _backends(args.backend)
    settings = Settings(eps_abs=args.eps, eps_rel=args.eps)
    records = []
    for fam in families:
        sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else DEFAULT_SIZES[fam]
        records.extend(
            run_benchmark(
                [fam],
                sizes,
                backends,
                settings=settings,
                time_limit=args.time_limit,
                seed=args.seed,
                progress=lambda r: print(
                    f"{r.problem:>28s} {r.backend:>8s} {r.status:>14s} "
                    f"iters={r.iterations:<3d} total={r.total_seconds:.3f}s",
                    file=sys.stderr,
                ),
            )
        )
    write_records(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_report(args) -> int:
    records = read_records(getattr(args, "in"))
    backends = sorted({r.backend for r in records})
    problems = sorted({r.problem for r in records})
    limit = args.time_limit

    os.makedirs(args.out_dir, exist_ok=True)

    by_key = {(r.backend, r.problem): r for r in records}
    times = np.full((len(backends), len(problems)), np.inf)
    for bi, backend in enumerate(backends):
        for pi, prob in enumerate(problems):
            rec = by_key.get((backend, prob))
            if rec is not None and rec.status == "Solved":
                times[bi, pi] = rec.total_seconds

    sgm_path = os.path.join(args.out_dir, "sgm.csv")
    with open(sgm_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["backend", "sgm_seconds", "failure_rate"])
        for bi, backend in enumerate(backends):
            metric = [
                by_key[(backend, prob)].metric_time(limit)
                for prob in problems
                if (backend, prob) in by_key
            ]
            fails = sum(1 for prob in problems
                        if (backend, prob) in by_key
                        and by_key[(backend, prob)].status != "Solved")
            sgm = shifted_geometric_mean(metric, args.sgm_shift)
            writer.writerow([backend, repr(sgm), repr(fails / max(len(metric), 1))])

    kinds = [k.strip() for k in args.profiles.split(",") if k.strip()]
    for kind in kinds:
        taus = default_relative_taus(times) if kind == "relative" else default_absolute_taus(times)
        curves = performance_profile(times, kind, taus)
        path = os.path.join(args.out_dir, f"profile_{kind}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tau"] + backends)
            for ti, tau in enumerate(taus):
                writer.writerow([repr(float(tau))] + [repr(float(curves[bi, ti])) for bi in range(len(backends))])
    print(f"report written to {args.out_dir}")
    return 0


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(Family(args.family), args.size, seed=args.seed)
    data = generate_problem(cfg)
    save_problem(data, args.out)
    print(f"wrote {cfg.name} to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="generate and solve a benchmark sweep")
    run_p.add_argument("--family", default="all",
                       choices=[f.value for f in Family] + ["all"])
    run_p.add_argument("--sizes", default=None, help="comma-separated size parameters")
    run_p.add_argument("--backend", default="both",
                       choices=["builtin", "parallel", "both"])
    run_p.add_argument("--eps", type=float, default=1e-7)
    run_p.add_argument("--time-limit", type=float, default=3600.0)
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--out", default="results.csv")
    run_p.set_defaults(func=cmd_run)

    rep_p = sub.add_parser("report", help="metrics from a results CSV")
    rep_p.add_argument("--in", required=True)
    rep_p.add_argument("--sgm-shift", type=float, default=1.0)
    rep_p.add_argument("--profiles", default="relative,absolute")
    rep_p.add_argument("--time-limit", type=float, default=3600.0)
    rep_p.add_argument("--out-dir", default="report")
    rep_p.set_defaults(func=cmd_report)

    gen_p = sub.add_parser("gen", help="emit one problem as a QOCOPROB v1 file")
    gen_p.add_argument("--family", required=True, choices=[f.value for f in Family])
    gen_p.add_argument("--size", type=int, required=True)
    gen_p.add_argument("--seed", type=int, default=0)
    gen_p.add_argument("--out", default="problem.qocoprob")
    gen_p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
