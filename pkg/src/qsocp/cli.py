"""qsocp CLI: solve a QOCOPROB v1 file and print the result as JSON.

    qsocp solve --in problem.qocoprob --backend builtin
    qsocp info --in problem.qocoprob
"""

from __future__ import annotations

import argparse
import json
import sys

from .fileio import load_problem
from .ipm import solve
from .problem import Settings, problem_size_nnz


def result_to_json(result) -> str:
    payload = {
        "status": result.status.value,
        "objective": result.objective,
        "iterations": result.iterations,
        "setup_seconds": result.setup_seconds,
        "solve_seconds": result.solve_seconds,
        "factor_count": result.factor_count,
        "solve_count": result.solve_count,
        "x": result.x.tolist(),
        "y": result.y.tolist(),
        "z": result.z.tolist(),
        "s": result.s.tolist(),
    }
    return json.dumps(payload)


def cmd_solve(args) -> int:
    data = load_problem(getattr(args, "in"))
    settings = Settings(
        eps_abs=args.eps,
        eps_rel=args.eps,
        max_iters=args.max_iters,
        time_limit_seconds=args.time_limit,
    )
    result = solve(data, settings, backend_name=args.backend)
    text = result_to_json(result)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if result.status.value == "Solved" else 1


def cmd_info(args) -> int:
    data = load_problem(getattr(args, "in"))
    print(
        json.dumps(
            {
                "n": data.n,
                "m": data.m,
                "p": data.p,
                "orthant_dim": data.cone.orthant_dim,
                "soc_dims": list(data.cone.soc_dims),
                "size_nnz": problem_size_nnz(data),
            }
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsocp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser("solve", help="solve a QOCOPROB v1 problem file")
    solve_p.add_argument("--in", required=True)
    solve_p.add_argument("--backend", default="builtin", choices=["builtin", "parallel"])
    solve_p.add_argument("--eps", type=float, default=1e-7)
    solve_p.add_argument("--max-iters", type=int, default=100)
    solve_p.add_argument("--time-limit", type=float, default=3600.0)
    solve_p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    solve_p.set_defaults(func=cmd_solve)

    info_p = sub.add_parser("info", help="print problem dimensions")
    info_p.add_argument("--in", required=True)
    info_p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
