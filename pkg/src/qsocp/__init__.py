"""qsocp: interior-point solver for quadratic-objective second-order cone
programs with pluggable linear-system backends and a benchmark harness."""

from . import errors
from .api import Solver, as_csc
from .fileio import load_problem, save_problem
from .ipm import solve
from .linsys import BACKENDS
from .problem import (
    ConeSpec,
    ProblemData,
    Settings,
    SolveResult,
    SolveStatus,
    problem_size_nnz,
    validate_problem,
)
from .sparse import SparseMatrixCSC, csc_from_triplets, spmv

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "ConeSpec",
    "ProblemData",
    "Settings",
    "Solver",
    "SolveResult",
    "SolveStatus",
    "SparseMatrixCSC",
    "as_csc",
    "csc_from_triplets",
    "errors",
    "load_problem",
    "problem_size_nnz",
    "save_problem",
    "solve",
    "spmv",
    "validate_problem",
]
