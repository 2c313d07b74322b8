"""Sparse quasidefinite LDL^T: symbolic analysis, refactorization, refined solves.

The factorization is simplicial up-looking with an elimination-tree reach, so
the pattern computed once by symbolic_factor stays valid for every later
numeric pass over the same sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericalError
from .sparse import Permutation, SparseMatrixCSC, spmv_sym_upper, symmetric_permute

DYN_REG_EPS = 1e-14
REFINE_STOP_TOL = 1e-12


@dataclass
class SymbolicFactor:
    perm: Permutation
    etree: np.ndarray
    L_col_counts: np.ndarray
    L_pattern: SparseMatrixCSC  # unit lower triangular, diagonal not stored
    permuted_pattern: SparseMatrixCSC
    entry_map: np.ndarray  # position in K -> position in permuted_pattern

    @property
    def n(self) -> int:
        return self.L_pattern.cols

    @property
    def L_nnz(self) -> int:
        return int(self.L_col_counts.sum())


@dataclass
class NumericFactor:
    L_values: np.ndarray
    D: np.ndarray
    dynamic_reg_bumps: int


def symbolic_factor(K_pattern: SparseMatrixCSC, perm: Permutation) -> SymbolicFactor:
    """Elimination tree and L pattern of the permuted matrix."""
    n = K_pattern.cols
    permuted, entry_map = symmetric_permute(K_pattern, perm)
    parent = np.empty(n, dtype=np.int64)
    lnz = np.empty(n, dtype=np.int64)
    work = np.empty(n, dtype=np.int64)
    status = _kernels.etree_and_counts(
        n, permuted.col_pointers, permuted.row_indices, parent, lnz, work
    )
    if status != 0:
        raise ValueError("pattern is not upper triangular")
    Lp = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lnz, out=Lp[1:])
    Li = np.empty(int(Lp[n]), dtype=np.int64)
    next_pos = np.empty(n, dtype=np.int64)
    marker = np.empty(n, dtype=np.int64)
    chain = np.empty(n, dtype=np.int64)
    _kernels.ldl_pattern(
        n, permuted.col_pointers, permuted.row_indices, parent, Lp, Li, next_pos, marker, chain
    )
    L = SparseMatrixCSC(n, n, Lp, Li, np.zeros(int(Lp[n])))
    return SymbolicFactor(perm, parent, lnz, L, permuted, entry_map)


def numeric_factor(
    K_values: np.ndarray,
    sym: SymbolicFactor,
    static_reg: float,
    dyn_reg_eps: float = DYN_REG_EPS,
    reg_signs: np.ndarray | None = None,
) -> NumericFactor:
    """Factor the matrix whose values (aligned with the original K pattern) are given.

    static_reg is added to the diagonal with the sign from reg_signs (all +1
    when omitted); pivots smaller than dyn_reg_eps in magnitude are replaced by
    sign-matched dyn_reg_eps.
    """
    n = sym.n
    if reg_signs is None:
        signs = np.ones(n, dtype=np.int64)
    else:
        signs = reg_signs[sym.perm.forward].astype(np.int64)
    pp = sym.permuted_pattern
    perm_values = np.empty(pp.nnz)
    perm_values[sym.entry_map] = K_values
    static_diag = static_reg * signs.astype(np.float64)
    D = np.empty(n)
    Lx = np.zeros(sym.L_pattern.nnz)
    yvals = np.empty(n)
    yidx = np.empty(n, dtype=np.int64)
    chain = np.empty(n, dtype=np.int64)
    next_pos = np.empty(n, dtype=np.int64)
    marker = np.empty(n, dtype=np.int64)
    bumps = _kernels.ldl_factor(
        n,
        pp.col_pointers,
        pp.row_indices,
        perm_values,
        sym.etree,
        sym.L_pattern.col_pointers,
        sym.L_pattern.row_indices,
        Lx,
        D,
        static_diag,
        dyn_reg_eps,
        signs,
        yvals,
        yidx,
        chain,
        next_pos,
        marker,
    )
    if bumps < 0:
        raise NumericalError("non-finite pivot during LDL^T factorization")
    return NumericFactor(Lx, D, int(bumps))


def backsolve(fac: NumericFactor, sym: SymbolicFactor, rhs: np.ndarray) -> np.ndarray:
    """Single triangular solve pass, no refinement."""
    x = rhs[sym.perm.forward].astype(np.float64)
    L = sym.L_pattern
    _kernels.ldl_solve_inplace(sym.n, L.col_pointers, L.row_indices, fac.L_values, fac.D, x)
    out = np.empty_like(x)
    out[sym.perm.forward] = x
    return out


def solve_refine(
    fac: NumericFactor,
    sym: SymbolicFactor,
    K: SparseMatrixCSC,
    rhs: np.ndarray,
    refine_iters: int,
) -> np.ndarray:
    """Solve K x = rhs, polishing with iterative refinement against the
    original (unregularized) K.
    """
    rhs = np.asarray(rhs, dtype=np.float64)
    x = backsolve(fac, sym, rhs)
    if not np.all(np.isfinite(x)):
        raise NumericalError("non-finite triangular solve result")
    if refine_iters <= 0:
        return x
    stop = REFINE_STOP_TOL * (1.0 + np.max(np.abs(rhs), initial=0.0))
    r = rhs - spmv_sym_upper(K, x)
    rnorm = np.max(np.abs(r), initial=0.0)
    for _ in range(refine_iters):
        if rnorm <= stop:
            break
        dx = backsolve(fac, sym, r)
        x_new = x + dx
        r_new = rhs - spmv_sym_upper(K, x_new)
        rnorm_new = np.max(np.abs(r_new), initial=0.0)
        if not np.isfinite(rnorm_new):
            raise NumericalError("non-finite refinement residual")
        if rnorm_new >= rnorm:
            break
        x, r, rnorm = x_new, r_new, rnorm_new
    return x
