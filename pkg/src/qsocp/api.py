"""Programmatic interface: construct with a backend name, stage a problem with
setup(...), then call solve().

    solver = Solver(algebra="builtin")
    solver.setup(n, m, p, P, c, A, b, G, h, l, nsoc, q)
    result = solver.solve()
"""

from __future__ import annotations

import numpy as np

from .errors import ConeMismatch, NotSetUp
from .ipm import solve as _solve
from .linsys import BACKENDS
from .problem import ConeSpec, ProblemData, Settings, SolveResult, validate_problem
from .sparse import SparseMatrixCSC, csc_from_triplets, empty_csc


def as_csc(M, rows: int, cols: int) -> SparseMatrixCSC:
    """Convert a matrix-like object to CSC storage.

    Accepts SparseMatrixCSC, anything exposing indptr/indices/data (scipy CSC
    included; other scipy formats are converted via tocsc()), a dense 2-D
    array, or None for an empty matrix.
    """
    if M is None:
        return empty_csc(rows, cols)
    if isinstance(M, SparseMatrixCSC):
        return M
    if hasattr(M, "tocsc") and not hasattr(M, "indptr"):
        M = M.tocsc()
    if hasattr(M, "indptr"):
        return SparseMatrixCSC(
            rows,
            cols,
            np.asarray(M.indptr, dtype=np.int64),
            np.asarray(M.indices, dtype=np.int64),
            np.asarray(M.data, dtype=np.float64),
        )
    dense = np.asarray(M, dtype=np.float64)
    if dense.ndim != 2:
        raise TypeError("expected a matrix-like object")
    r, c = np.nonzero(dense)
    return csc_from_triplets(rows, cols, (r, c, dense[r, c]))


class Solver:
    """Backend-selectable solver handle mirroring the setup/solve call shape."""

    def __init__(self, algebra: str = "builtin"):
        if algebra not in BACKENDS:
            raise ValueError(f"unknown algebra {algebra!r}; expected one of {sorted(BACKENDS)}")
        self.algebra = algebra
        self._data: ProblemData | None = None
        self._settings = Settings()

    def setup(self, n, m, p, P, c, A, b, G, h, l, nsoc, q, **settings) -> "Solver":
        """Stage and validate problem data; keyword arguments override Settings."""
        q = tuple(int(v) for v in (q if q is not None else ()))
        if len(q) != nsoc:
            raise ConeMismatch(f"q lists {len(q)} cones but nsoc = {nsoc}")
        cone = ConeSpec(int(l), q)
        data = ProblemData(
            n=int(n),
            m=int(m),
            p=int(p),
            P=as_csc(P, n, n),
            c=np.asarray(c, dtype=np.float64).reshape(-1),
            A=as_csc(A, p, n),
            b=np.asarray(b, dtype=np.float64).reshape(-1),
            G=as_csc(G, m, n),
            h=np.asarray(h, dtype=np.float64).reshape(-1),
            cone=cone,
        )
        self._data = validate_problem(data)
        if settings:
            self._settings = Settings(**settings)
        return self

    def solve(self) -> SolveResult:
        if self._data is None:
            raise NotSetUp("setup() must be called before solve()")
        return _solve(self._data, self._settings, backend_name=self.algebra)
