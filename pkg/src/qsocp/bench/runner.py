"""Benchmark sweep: generate, solve, record; CSV in the fixed column order."""

from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass

from ..ipm import solve
from ..problem import Settings, SolveStatus, problem_size_nnz
from .generators import Family, GeneratorConfig, generate_problem

CSV_COLUMNS = [
    "problem",
    "family",
    "size_nnz",
    "backend",
    "status",
    "iterations",
    "setup_seconds",
    "solve_seconds",
    "objective",
]


@dataclass
class BenchRecord:
    problem: str
    family: str
    size_nnz: int
    backend: str
    status: str
    iterations: int
    setup_seconds: float
    solve_seconds: float
    objective: float

    @property
    def total_seconds(self) -> float:
        return self.setup_seconds + self.solve_seconds

    def metric_time(self, time_limit: float) -> float:
        """Runtime entering aggregate metrics; failures count the full limit."""
        if self.status != SolveStatus.SOLVED.value:
            return time_limit
        return self.total_seconds


def _run_one(cfg: GeneratorConfig, backend: str, settings: Settings) -> BenchRecord:
    data = generate_problem(cfg)
    nnz = problem_size_nnz(data)
    try:
        result = solve(data, settings, backend_name=backend)
        return BenchRecord(
            problem=cfg.name,
            family=cfg.family.value,
            size_nnz=nnz,
            backend=backend,
            status=result.status.value,
            iterations=result.iterations,
            setup_seconds=result.setup_seconds,
            solve_seconds=result.solve_seconds,
            objective=result.objective,
        )
    except Exception:
        return BenchRecord(
            problem=cfg.name,
            family=cfg.family.value,
            size_nnz=nnz,
            backend=backend,
            status=SolveStatus.NUMERICAL_ERROR.value,
            iterations=0,
            setup_seconds=0.0,
            solve_seconds=0.0,
            objective=math.nan,
        )


def run_benchmark(
    families,
    sizes,
    backends,
    settings: Settings | None = None,
    time_limit: float | None = None,
    seed: int = 0,
    progress=None,
    parallel_sweep: bool = False,
) -> list[BenchRecord]:
    """Sweep over (family, size, backend), sequentially by default.

    Individual failures are recorded, never raised, so one bad run cannot
    abort the sweep. parallel_sweep runs problems on a thread pool for quick
    validation passes; never use it when the timings matter, since concurrent
    solves contend for cores. Record order is identical either way.
    """
    settings = settings or Settings()
    if time_limit is not None:
        settings = dataclasses.replace(settings, time_limit_seconds=time_limit)
    tasks = []
    for family in families:
        fam = Family(family) if not isinstance(family, Family) else family
        for size in sizes:
            cfg = GeneratorConfig(fam, int(size), seed=seed)
            for backend in backends:
                tasks.append((cfg, backend))
    if parallel_sweep:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=4) as pool:
            records = list(
                pool.map(lambda t: _run_one(t[0], t[1], settings), tasks)
            )
        if progress is not None:
            for rec in records:
                progress(rec)
        return records
    records = []
    for cfg, backend in tasks:
        rec = _run_one(cfg, backend, settings)
        records.append(rec)
        if progress is not None:
            progress(rec)
    return records


def write_records(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.problem,
                    r.family,
                    r.size_nnz,
                    r.backend,
                    r.status,
                    r.iterations,
                    repr(r.setup_seconds),
                    repr(r.solve_seconds),
                    repr(r.objective),
                ]
            )


def read_records(path) -> list[BenchRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV columns: {reader.fieldnames}")
        for row in reader:
            out.append(
                BenchRecord(
                    problem=row["problem"],
                    family=row["family"],
                    size_nnz=int(row["size_nnz"]),
                    backend=row["backend"],
                    status=row["status"],
                    iterations=int(row["iterations"]),
                    setup_seconds=float(row["setup_seconds"]),
                    solve_seconds=float(row["solve_seconds"]),
                    objective=float(row["objective"]),
                )
            )
    return out
