#!/usr/bin/env python3
"""Compare factor fill under the AMD ordering against the natural order for
each benchmark family's KKT matrix, and report analysis/factor timings.

Usage: python scripts/ordering_study.py
"""

import time

from qsocp.bench.generators import Family, GeneratorConfig, generate_problem
from qsocp.kkt import assemble_kkt, reg_signs
from qsocp.ldl import numeric_factor, symbolic_factor
from qsocp.sparse import fill_reducing_order

CONFIGS = [
    GeneratorConfig(Family.HUBER, 50),
    GeneratorConfig(Family.PORTFOLIO, 2),
    GeneratorConfig(Family.MULTI_PERIOD_PORTFOLIO, 2, assets=500),
    GeneratorConfig(Family.GROUP_LASSO, 5),
    GeneratorConfig(Family.TV_DENOISING, 32),
]


def main() -> None:
    header = f"{'problem':>28s} {'dim':>7s} {'K nnz':>9s} {'L nnz amd':>10s} {'L nnz nat':>11s} {'t_order':>8s} {'t_factor':>9s}"
    print(header)
    print("-" * len(header))
    for cfg in CONFIGS:
        data = generate_problem(cfg)
        kkt = assemble_kkt(data)
        t0 = time.perf_counter()
        perm = fill_reducing_order(kkt.matrix, "amd")
        t_order = time.perf_counter() - t0
        sym = symbolic_factor(kkt.matrix, perm)
        nat = symbolic_factor(kkt.matrix, fill_reducing_order(kkt.matrix, "natural"))
        signs = reg_signs(kkt.n, kkt.p, kkt.m)
        t0 = time.perf_counter()
        numeric_factor(kkt.matrix.values, sym, 1e-8, reg_signs=signs)
        t_factor = time.perf_counter() - t0
        print(
            f"{cfg.name:>28s} {kkt.dim:>7d} {kkt.matrix.nnz:>9d} {sym.L_nnz:>10d} "
            f"{nat.L_nnz:>11d} {t_order:>7.3f}s {t_factor:>8.3f}s"
        )


if __name__ == "__main__":
    main()
