#!/usr/bin/env python3
"""Run the five problem families at desk sizes on both backends and write
results.csv plus profile/SGM report CSVs into report/.

Usage: python scripts/run_desk_benchmarks.py [--seed 0] [--out-dir bench_out]
"""

import argparse
import os
import sys

from qsocp.bench.cli import main as bench_main

FAMILY_SIZES = {
    "huber": "50,200",
    "portfolio": "2,5",
    "multiperiod_portfolio": "2",
    "group_lasso": "5,20",
    "tv_denoising": "32,64",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default="bench_out")
    parser.add_argument("--eps", type=float, default=1e-7)
    args = parser.parse_args()

    os.makedirs(args.out_dir, exist_ok=True)
    results = os.path.join(args.out_dir, "results.csv")
    merged = []
    for family, sizes in FAMILY_SIZES.items():
        part = os.path.join(args.out_dir, f"results_{family}.csv")
        rc = bench_main([
            "run", "--family", family, "--sizes", sizes, "--backend", "both",
            "--eps", str(args.eps), "--seed", str(args.seed), "--out", part,
        ])
        if rc != 0:
            return rc
        with open(part) as fh:
            lines = fh.read().splitlines()
        if not merged:
            merged.append(lines[0])
        merged.extend(lines[1:])
        os.remove(part)
    with open(results, "w") as fh:
        fh.write("\n".join(merged) + "\n")
    print(f"merged results in {results}")
    return bench_main([
        "report", "--in", results, "--sgm-shift", "1",
        "--profiles", "relative,absolute",
        "--out-dir", os.path.join(args.out_dir, "report"),
    ])


if __name__ == "__main__":
    sys.exit(main())
