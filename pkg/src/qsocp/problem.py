"""Problem data model: cones, matrices, settings, results, validation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadSparseStructure, ConeMismatch, DimensionMismatch, EmptyCone
from .sparse import SparseMatrixCSC, check_csc


@dataclass(frozen=True)
class ConeSpec:
    """Product cone: an orthant block of size l followed by nsoc second-order
    cones of sizes q, in that order."""

    orthant_dim: int
    soc_dims: tuple[int, ...] = ()

    @property
    def soc_count(self) -> int:
        return len(self.soc_dims)

    @property
    def total_dim(self) -> int:
        return self.orthant_dim + sum(self.soc_dims)


@dataclass
class ProblemData:
    """The six data objects of a quadratic-objective SOCP.

    P holds only the upper triangle of the quadratic cost; A and G are the
    equality and conic constraint matrices. Treat instances as immutable once
    validated.
    """

    n: int
    m: int
    p: int
    P: SparseMatrixCSC
    c: np.ndarray
    A: SparseMatrixCSC
    b: np.ndarray
    G: SparseMatrixCSC
    h: np.ndarray
    cone: ConeSpec


class SolveStatus(enum.Enum):
    SOLVED = "Solved"
    MAX_ITERS = "MaxIters"
    TIME_LIMIT = "TimeLimit"
    NUMERICAL_ERROR = "NumericalError"


@dataclass
class Settings:
    eps_abs: float = 1e-7
    eps_rel: float = 1e-7
    max_iters: int = 100
    static_reg: float = 1e-8
    refine_iters: int = 3
    step_fraction: float = 0.99
    time_limit_seconds: float = 3600.0

    def __post_init__(self):
        if self.eps_abs <= 0 or self.eps_rel <= 0:
            raise ValueError("tolerances must be positive")
        if self.static_reg <= 0:
            raise ValueError("static regularization must be positive")
        if not 0.0 < self.step_fraction < 1.0:
            raise ValueError("step_fraction must lie in (0, 1)")
        if self.max_iters < 1 or self.refine_iters < 0:
            raise ValueError("iteration counts out of range")
        if self.time_limit_seconds <= 0:
            raise ValueError("time limit must be positive")


@dataclass
class SolveResult:
    status: SolveStatus
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    s: np.ndarray
    objective: float
    iterations: int
    setup_seconds: float
    solve_seconds: float
    # instrumentation: linear-system call counts over the whole solve
    factor_count: int = 0
    solve_count: int = 0


def _require(cond: bool, exc_type, msg: str) -> None:
    if not cond:
        raise exc_type(msg)


def validate_problem(data: ProblemData) -> ProblemData:
    """Check every structural invariant and return the data unchanged.

    Symmetry of P beyond upper-triangular storage and positive semidefiniteness
    are not verified; PSD failures surface later as numerical errors.
    """
    n, m, p = data.n, data.m, data.p
    _require(n >= 1, DimensionMismatch, "n must be at least 1")
    _require(m >= 1, EmptyCone, "problem has no conic constraints (m = 0)")
    _require(p >= 0, DimensionMismatch, "p must be nonnegative")

    for name, M, rows, cols in (
        ("P", data.P, n, n),
        ("A", data.A, p, n),
        ("G", data.G, m, n),
    ):
        _require(
            M.rows == rows and M.cols == cols,
            DimensionMismatch,
            f"{name} is {M.rows}x{M.cols}, expected {rows}x{cols}",
        )
        check_csc(M)
    for name, v, length in (("c", data.c, n), ("b", data.b, p), ("h", data.h, m)):
        _require(
            v.shape == (length,),
            DimensionMismatch,
            f"{name} has length {v.shape}, expected {length}",
        )

    # upper-triangular storage of P: full symmetric input is rejected
    for j in range(n):
        lo, hi = int(data.P.col_pointers[j]), int(data.P.col_pointers[j + 1])
        if hi > lo and data.P.row_indices[hi - 1] > j:
            raise BadSparseStructure(f"P has an entry below the diagonal in column {j}")

    cone = data.cone
    _require(cone.orthant_dim >= 0, ConeMismatch, "orthant dimension must be nonnegative")
    _require(all(q >= 1 for q in cone.soc_dims), ConeMismatch, "every SOC dimension must be >= 1")
    if cone.total_dim != m:
        raise ConeMismatch(f"cone dimensions sum to {cone.total_dim}, expected m = {m}")
    return data


def problem_size_nnz(data: ProblemData) -> int:
    """Stored entries of A, G and the upper half of P."""
    return data.A.nnz + data.G.nnz + data.P.nnz
