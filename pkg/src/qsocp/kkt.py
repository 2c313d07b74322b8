"""Assembly of the quasidefinite KKT matrix and in-place scaling-block updates.

Block layout over indices [0,n) / [n,n+p) / [n+p,n+p+m):

    [ P   A^T  G^T ]
    [ A   0    0   ]
    [ G   0   -W^T W ]

Only the upper triangle is stored. The scaling block's pattern is fixed at
assembly (orthant diagonal plus a dense upper triangle per SOC block), so
later updates rewrite values without touching the structure. Every diagonal
position exists explicitly so regularization always has a slot to land on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cones import ConeKind, NTScalingSet, cone_views, neg_wtw_values
from .problem import ProblemData
from .sparse import SparseMatrixCSC, csc_from_triplets


@dataclass
class KKTSystem:
    matrix: SparseMatrixCSC  # upper triangle, dimension n+p+m
    nt_entry_positions: np.ndarray  # scaling slot -> position in matrix.values
    nt_slot_offsets: np.ndarray  # per cone view, start of its slots
    soc_slot_starts: np.ndarray  # per second-order cone, start of its slots
    n: int
    p: int
    m: int
    rhs_work: np.ndarray

    @property
    def dim(self) -> int:
        return self.n + self.p + self.m


def scaling_slot_count(view) -> int:
    if view.kind is ConeKind.ORTHANT:
        return view.dim
    return view.dim * (view.dim + 1) // 2


def reg_signs(n: int, p: int, m: int) -> np.ndarray:
    """Quasidefinite signature: +1 on the first n diagonal entries, -1 after."""
    signs = np.ones(n + p + m, dtype=np.int64)
    signs[n:] = -1
    return signs


def assemble_kkt(data: ProblemData) -> KKTSystem:
    """Build the KKT matrix once, with the scaling block initialized to -I."""
    n, p, m = data.n, data.p, data.m
    dim = n + p + m
    rows = [data.P.row_indices]
    cols = [np.repeat(np.arange(n, dtype=np.int64), np.diff(data.P.col_pointers))]
    vals = [data.P.values]

    # explicit diagonal for the P and zero blocks
    diag_np = np.arange(n + p, dtype=np.int64)
    rows.append(diag_np)
    cols.append(diag_np)
    vals.append(np.zeros(n + p))

    # A^T in the (1,2) block: entry (r, c) of A lands at (c, n + r)
    a_cols = np.repeat(np.arange(n, dtype=np.int64), np.diff(data.A.col_pointers))
    rows.append(a_cols)
    cols.append(data.A.row_indices + n)
    vals.append(data.A.values)

    # G^T in the (1,3) block
    g_cols = np.repeat(np.arange(n, dtype=np.int64), np.diff(data.G.col_pointers))
    rows.append(g_cols)
    cols.append(data.G.row_indices + n + p)
    vals.append(data.G.values)

    # scaling block pattern with identity values
    views = cone_views(data.cone)
    block_r, block_c, block_v = [], [], []
    for view in views:
        base = n + p + view.offset
        if view.kind is ConeKind.ORTHANT:
            idx = base + np.arange(view.dim, dtype=np.int64)
            block_r.append(idx)
            block_c.append(idx)
            block_v.append(np.full(view.dim, -1.0))
        else:
            d = view.dim
            for j in range(d):
                block_r.append(base + np.arange(j + 1, dtype=np.int64))
                block_c.append(np.full(j + 1, base + j, dtype=np.int64))
                v = np.zeros(j + 1)
                v[j] = -1.0
                block_v.append(v)
    rows.extend(block_r)
    cols.extend(block_c)
    vals.extend(block_v)

    K = csc_from_triplets(
        dim, dim, (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))
    )

    # map each scaling slot to its position in the value array
    offsets = np.zeros(len(views) + 1, dtype=np.int64)
    for i, view in enumerate(views):
        offsets[i + 1] = offsets[i] + scaling_slot_count(view)
    positions = np.empty(int(offsets[-1]), dtype=np.int64)
    soc_slot_starts = []
    slot = 0
    for view in views:
        base = n + p + view.offset
        if view.kind is ConeKind.ORTHANT:
            for i in range(view.dim):
                positions[slot] = _entry_position(K, base + i, base + i)
                slot += 1
        else:
            soc_slot_starts.append(slot)
            for j in range(view.dim):
                for i in range(j + 1):
                    positions[slot] = _entry_position(K, base + i, base + j)
                    slot += 1
    return KKTSystem(
        K,
        positions,
        offsets,
        np.asarray(soc_slot_starts, dtype=np.int64),
        n,
        p,
        m,
        np.zeros(dim),
    )


def _entry_position(K: SparseMatrixCSC, i: int, j: int) -> int:
    lo, hi = int(K.col_pointers[j]), int(K.col_pointers[j + 1])
    pos = lo + int(np.searchsorted(K.row_indices[lo:hi], i))
    if pos >= hi or K.row_indices[pos] != i:
        raise RuntimeError(f"entry ({i},{j}) missing from the assembled pattern")
    return pos


def write_scaling(kkt: KKTSystem, scaling: NTScalingSet, executor=None) -> None:
    """Scatter fresh -W^T W values into the KKT matrix; pattern untouched."""
    slots = np.empty(len(kkt.nt_entry_positions))
    neg_wtw_values(scaling, kkt.soc_slot_starts, slots, executor)
    kkt.matrix.values[kkt.nt_entry_positions] = slots
