"""Benchmark harness: problem-family generators, sweep runner, metrics."""

from .generators import Family, GeneratorConfig, generate_problem
from .metrics import performance_profile, shifted_geometric_mean
from .runner import BenchRecord, read_records, run_benchmark, write_records

__all__ = [
    "BenchRecord",
    "Family",
    "GeneratorConfig",
    "generate_problem",
    "performance_profile",
    "read_records",
    "run_benchmark",
    "shifted_geometric_mean",
    "write_records",
]
