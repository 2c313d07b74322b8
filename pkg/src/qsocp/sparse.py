"""Compressed-sparse-column matrices and the graph machinery built on them.

Explicit zeros are kept everywhere: the factorization backends rely on a
frozen sparsity pattern while values change between refactorizations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _amd, _kernels
from .errors import BadPermutation, BadSparseStructure, DimensionMismatch, IndexOutOfRange


@dataclass
class SparseMatrixCSC:
    """CSC matrix with int64 indices and float64 values."""

    rows: int
    cols: int
    col_pointers: np.ndarray
    row_indices: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.col_pointers[self.cols])

    def copy(self) -> "SparseMatrixCSC":
        return SparseMatrixCSC(
            self.rows,
            self.cols,
            self.col_pointers.copy(),
            self.row_indices.copy(),
            self.values.copy(),
        )

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols))
        for j in range(self.cols):
            for p in range(self.col_pointers[j], self.col_pointers[j + 1]):
                out[self.row_indices[p], j] += self.values[p]
        return out

    def to_dense_symmetric(self) -> np.ndarray:
        """Densify upper-triangular storage into the full symmetric matrix."""
        up = self.to_dense()
        return up + up.T - np.diag(np.diag(up))


def check_csc(m: SparseMatrixCSC) -> None:
    """Raise BadSparseStructure if any CSC invariant is violated."""
    cp = m.col_pointers
    if len(cp) != m.cols + 1 or cp[0] != 0:
        raise BadSparseStructure("column pointer array must have length cols+1 and start at 0")
    if np.any(np.diff(cp) < 0):
        raise BadSparseStructure("column pointers must be nondecreasing")
    nnz = int(cp[m.cols])
    if len(m.row_indices) != nnz or len(m.values) != nnz:
        raise BadSparseStructure("index/value arrays disagree with col_pointers[-1]")
    for j in range(m.cols):
        lo, hi = int(cp[j]), int(cp[j + 1])
        col = m.row_indices[lo:hi]
        if col.size:
            if np.any(np.diff(col) <= 0):
                raise BadSparseStructure(f"row indices not strictly increasing in column {j}")
            if col[0] < 0 or col[-1] >= m.rows:
                raise BadSparseStructure(f"row index out of range in column {j}")


def empty_csc(rows: int, cols: int) -> SparseMatrixCSC:
    return SparseMatrixCSC(
        rows,
        cols,
        np.zeros(cols + 1, dtype=np.int64),
        np.zeros(0, dtype=np.int64),
        np.zeros(0, dtype=np.float64),
    )


def csc_from_triplets(rows: int, cols: int, triplets) -> SparseMatrixCSC:
    """Build a CSC matrix from (row, col, value) triplets.

    Duplicate entries are summed. Explicit zeros survive so the result's
    pattern is exactly the union of the triplet positions.
    """
    if isinstance(triplets, tuple) and len(triplets) == 3:
        r, c, v = triplets
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        v = np.asarray(v, dtype=np.float64)
    else:
        trips = list(triplets)
        r = np.array([t[0] for t in trips], dtype=np.int64)
        c = np.array([t[1] for t in trips], dtype=np.int64)
        v = np.array([t[2] for t in trips], dtype=np.float64)
    if r.size:
        if r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols:
            raise IndexOutOfRange("triplet index outside declared shape")
    order = np.lexsort((r, c))
    r, c, v = r[order], c[order], v[order]
    if r.size:
        keep = np.ones(r.size, dtype=bool)
        keep[1:] = (r[1:] != r[:-1]) | (c[1:] != c[:-1])
        group = np.cumsum(keep) - 1
        vals = np.zeros(int(group[-1]) + 1)
        np.add.at(vals, group, v)
        r, c = r[keep], c[keep]
    else:
        vals = v
    col_ptr = np.zeros(cols + 1, dtype=np.int64)
    np.add.at(col_ptr, c + 1, 1)
    np.cumsum(col_ptr, out=col_ptr)
    return SparseMatrixCSC(rows, cols, col_ptr, r, vals)


def spmv(
    M: SparseMatrixCSC,
    x: np.ndarray,
    transpose: bool = False,
    accumulate_into: np.ndarray | None = None,
) -> np.ndarray:
    """accumulate_into + M @ x (or + M.T @ x)."""
    x = np.asarray(x, dtype=np.float64)
    nin, nout = (M.rows, M.cols) if transpose else (M.cols, M.rows)
    if x.shape != (nin,):
        raise DimensionMismatch(f"operand has length {x.shape}, expected {nin}")
    if accumulate_into is None:
        out = np.zeros(nout)
    else:
        if accumulate_into.shape != (nout,):
            raise DimensionMismatch("accumulator length does not match the output dimension")
        out = accumulate_into.copy()
    if transpose:
        _kernels.csc_matvec_t(M.cols, M.col_pointers, M.row_indices, M.values, x, out)
    else:
        _kernels.csc_matvec(M.cols, M.col_pointers, M.row_indices, M.values, x, out)
    return out


def spmv_sym_upper(M: SparseMatrixCSC, x: np.ndarray, accumulate_into=None) -> np.ndarray:
    """Symmetric product for upper-triangular storage: out += sym(M) @ x."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (M.cols,):
        raise DimensionMismatch(f"operand has length {x.shape}, expected {M.cols}")
    out = np.zeros(M.rows) if accumulate_into is None else accumulate_into.copy()
    _kernels.csc_sym_upper_matvec(M.cols, M.col_pointers, M.row_indices, M.values, x, out)
    return out


@dataclass(frozen=True)
class Permutation:
    forward: np.ndarray  # forward[k] = original index placed at position k
    inverse: np.ndarray  # inverse[original] = new position


def make_permutation(forward) -> Permutation:
    forward = np.asarray(forward, dtype=np.int64)
    n = forward.size
    inverse = np.full(n, -1, dtype=np.int64)
    if n and (forward.min() < 0 or forward.max() >= n):
        raise BadPermutation("permutation entries out of range")
    inverse[forward] = np.arange(n, dtype=np.int64)
    if np.any(inverse < 0):
        raise BadPermutation("permutation is not a bijection")
    return Permutation(forward, inverse)


def identity_permutation(n: int) -> Permutation:
    idx = np.arange(n, dtype=np.int64)
    return Permutation(idx, idx.copy())


def symmetric_permute(K: SparseMatrixCSC, perm: Permutation):
    """Permute symmetric upper-triangular K, returning (permuted K, entry map).

    entry_map[p] is the position in the permuted value array holding the entry
    stored at position p of K, so refreshed values can be scattered without
    re-sorting.
    """
    if K.rows != K.cols:
        raise BadPermutation("matrix must be square")
    if perm.forward.size != K.cols:
        raise BadPermutation("permutation size does not match the matrix")
    n = K.cols
    nnz = K.nnz
    src_col = np.repeat(np.arange(n, dtype=np.int64), np.diff(K.col_pointers))
    src_row = K.row_indices
    new_r = perm.inverse[src_row]
    new_c = perm.inverse[src_col]
    lo = np.minimum(new_r, new_c)
    hi = np.maximum(new_r, new_c)
    order = np.lexsort((lo, hi))
    entry_map = np.empty(nnz, dtype=np.int64)
    entry_map[order] = np.arange(nnz, dtype=np.int64)
    col_ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(col_ptr, hi + 1, 1)
    np.cumsum(col_ptr, out=col_ptr)
    out = SparseMatrixCSC(n, n, col_ptr, lo[order], K.values[order])
    return out, entry_map


def amd_order(pattern: SparseMatrixCSC) -> np.ndarray:
    """Approximate-minimum-degree ordering of a symmetric pattern (upper half given)."""
    return _amd.amd_order(pattern.cols, pattern.col_pointers, pattern.row_indices)


def fill_reducing_order(pattern: SparseMatrixCSC, method: str = "amd") -> Permutation:
    """Fill-reducing ordering of a symmetric pattern given by its upper half.

    method "amd" runs the approximate-minimum-degree heuristic; "natural"
    returns the identity, which keeps factorizations reproducible in tests.
    """
    if pattern.rows != pattern.cols:
        raise BadPermutation("pattern must be square")
    if method == "natural":
        return identity_permutation(pattern.cols)
    if method == "amd":
        return make_permutation(amd_order(pattern))
    raise ValueError(f"unknown ordering method: {method!r}")
