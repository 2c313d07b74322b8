"""Numba-compiled kernels for CSC products and the sparse LDL factorization.

All kernels operate on raw int64/float64 arrays so they stay monomorphic for
the JIT. Wrappers in sparse.py and ldl.py unpack the dataclasses.
"""

import numba as nb
import numpy as np

UNKNOWN = np.int64(-1)


@nb.njit(cache=True)
def csc_matvec(ncols, col_ptr, row_idx, vals, x, out):
    # out += M @ x
    for j in range(ncols):
        xj = x[j]
        if xj != 0.0:
            for p in range(col_ptr[j], col_ptr[j + 1]):
                out[row_idx[p]] += vals[p] * xj


@nb.njit(cache=True)
def csc_matvec_t(ncols, col_ptr, row_idx, vals, x, out):
    # out += M.T @ x
    for j in range(ncols):
        acc = 0.0
        for p in range(col_ptr[j], col_ptr[j + 1]):
            acc += vals[p] * x[row_idx[p]]
        out[j] += acc


@nb.njit(cache=True)
def csc_sym_upper_matvec(ncols, col_ptr, row_idx, vals, x, out):
    # out += S @ x where S is symmetric and only its upper triangle is stored
    for j in range(ncols):
        xj = x[j]
        for p in range(col_ptr[j], col_ptr[j + 1]):
            i = row_idx[p]
            v = vals[p]
            out[i] += v * xj
            if i != j:
                out[j] += v * x[i]


@nb.njit(cache=True)
def etree_and_counts(n, Ap, Ai, parent, lnz, work):
    """Elimination tree and per-column L counts for an upper-triangular pattern.

    Returns 0 on success, -1 if an entry lies below the diagonal.
    """
    for i in range(n):
        parent[i] = UNKNOWN
        lnz[i] = 0
        work[i] = UNKNOWN
    for j in range(n):
        work[j] = j
        for p in range(Ap[j], Ap[j + 1]):
            i = Ai[p]
            if i > j:
                return -1
            while work[i] != j:
                if parent[i] == UNKNOWN:
                    parent[i] = j
                lnz[i] += 1
                work[i] = j
                i = parent[i]
    return 0


@nb.njit(cache=True)
def ldl_pattern(n, Ap, Ai, parent, Lp, Li, next_pos, marker, chain):
    """Row indices of L, filled in the same order the numeric pass appends them."""
    for i in range(n):
        next_pos[i] = Lp[i]
        marker[i] = UNKNOWN
    for k in range(n):
        marker[k] = k
        for p in range(Ap[k], Ap[k + 1]):
            i = Ai[p]
            if i == k:
                continue
            nxt = i
            nchain = 0
            while nxt != UNKNOWN and nxt < k and marker[nxt] != k:
                marker[nxt] = k
                chain[nchain] = nxt
                nchain += 1
                nxt = parent[nxt]
            for q in range(nchain):
                c = chain[q]
                Li[next_pos[c]] = k
                next_pos[c] += 1


@nb.njit(cache=True)
def ldl_factor(
    n,
    Ap,
    Ai,
    Ax,
    parent,
    Lp,
    Li,
    Lx,
    D,
    static_diag,
    dyn_eps,
    sign_hint,
    yvals,
    yidx,
    chain,
    next_pos,
    marker,
):
    """Up-looking LDL^T with static and dynamic diagonal regularization.

    Ax must be aligned with the pattern handed to etree_and_counts; Li/Lp come
    from ldl_pattern. Returns the number of dynamic pivot bumps, or -1 if a
    pivot went non-finite.
    """
    bumps = 0
    for i in range(n):
        next_pos[i] = Lp[i]
        marker[i] = UNKNOWN
        yvals[i] = 0.0
    for k in range(n):
        marker[k] = k
        dk = static_diag[k]
        nnz_y = 0
        for p in range(Ap[k], Ap[k + 1]):
            i = Ai[p]
            if i == k:
                dk += Ax[p]
                continue
            yvals[i] = Ax[p]
            # walk up the tree, recording the unvisited part of the path
            nxt = i
            nchain = 0
            while nxt != UNKNOWN and nxt < k and marker[nxt] != k:
                marker[nxt] = k
                chain[nchain] = nxt
                nchain += 1
                nxt = parent[nxt]
            # store the path top-down so a bottom-up replay visits leaves first
            for q in range(nchain - 1, -1, -1):
                yidx[nnz_y] = chain[q]
                nnz_y += 1
        # eliminate in topological order (reverse of the recorded list)
        for q in range(nnz_y - 1, -1, -1):
            c = yidx[q]
            yc = yvals[c]
            top = next_pos[c]
            for r in range(Lp[c], top):
                yvals[Li[r]] -= Lx[r] * yc
            lkc = yc / D[c]
            Lx[top] = lkc
            dk -= yc * lkc
            next_pos[c] = top + 1
            yvals[c] = 0.0
        if not np.isfinite(dk):
            return -1
        if abs(dk) < dyn_eps:
            dk = dyn_eps if sign_hint[k] >= 0 else -dyn_eps
            bumps += 1
        D[k] = dk
    return bumps


@nb.njit(cache=True)
def ldl_solve_inplace(n, Lp, Li, Lx, D, x):
    # x <- (L D L^T)^{-1} x
    for j in range(n):
        xj = x[j]
        if xj != 0.0:
            for p in range(Lp[j], Lp[j + 1]):
                x[Li[p]] -= Lx[p] * xj
    for j in range(n):
        x[j] /= D[j]
    for j in range(n - 1, -1, -1):
        acc = x[j]
        for p in range(Lp[j], Lp[j + 1]):
            acc -= Lx[p] * x[Li[p]]
        x[j] = acc
