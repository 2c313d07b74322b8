"""Approximate-minimum-degree ordering on a quotient graph.

Array-based elimination with supervariable merging, aggressive element
absorption, approximate external degrees and in-place garbage collection,
in the style of the classic AMD algorithm. Pivot selection goes through a
lazy binary heap keyed by (degree, vertex index), so ties in degree always
resolve to the smallest index and the ordering is deterministic.
"""

import numba as nb
import numpy as np

FLIP_BASE = np.int64(-2)


@nb.njit(cache=True, inline="always")
def _flip(i):
    return -i + FLIP_BASE  # involution mapping i to -i-2


@nb.njit(cache=True)
def _heap_push(heap, hsize, key):
    i = hsize
    heap[i] = key
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return hsize + 1


@nb.njit(cache=True)
def _heap_pop(heap, hsize):
    top = heap[0]
    hsize -= 1
    if hsize > 0:
        heap[0] = heap[hsize]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            small = i
            if l < hsize and heap[l] < heap[small]:
                small = l
            if r < hsize and heap[r] < heap[small]:
                small = r
            if small == i:
                break
            heap[small], heap[i] = heap[i], heap[small]
            i = small
    return top, hsize


@nb.njit(cache=True)
def _heap_compact(heap, hsize, stride, degree, elen, nv, seen, stamp):
    """Drop stale entries: one live entry per vertex, degree must match."""
    out = 0
    for i in range(hsize):
        key = heap[i]
        v = key % stride
        d = key // stride
        if elen[v] >= 0 and nv[v] > 0 and degree[v] == d and seen[v] != stamp:
            seen[v] = stamp
            heap[out] = key
            out += 1
    # heapify bottom-up
    for start in range((out - 2) >> 1, -1, -1):
        i = start
        while True:
            l = 2 * i + 1
            r = l + 1
            small = i
            if l < out and heap[l] < heap[small]:
                small = l
            if r < out and heap[r] < heap[small]:
                small = r
            if small == i:
                break
            heap[small], heap[i] = heap[i], heap[small]
            i = small
    return out


@nb.njit(cache=True)
def _wclear(mark, lemax, w, n):
    if mark < 2 or mark + lemax < 0:
        for k in range(n):
            if w[k] != 0:
                w[k] = 1
        mark = 2
    return mark


@nb.njit(cache=True)
def _amd_kernel(n, Cp, Ci, nzmax, cnz, heap, seen):
    """Core elimination. Cp/Ci hold the symmetric adjacency (no diagonal) with
    elbow room; returns the postordered permutation."""
    stride = np.int64(n + 1)
    lenv = np.empty(n + 1, dtype=np.int64)
    elen = np.zeros(n + 1, dtype=np.int64)
    nv = np.ones(n + 1, dtype=np.int64)
    degree = np.empty(n + 1, dtype=np.int64)
    w = np.ones(n + 1, dtype=np.int64)
    hhead = np.full(n + 1, -1, dtype=np.int64)
    next_ = np.full(n + 1, -1, dtype=np.int64)
    last = np.full(n + 1, -1, dtype=np.int64)

    dense = max(16, 10 * int(np.sqrt(n)))
    dense = min(n - 2, dense)
    if dense < 0:
        dense = 0

    for i in range(n):
        lenv[i] = Cp[i + 1] - Cp[i]
        degree[i] = lenv[i]
    lenv[n] = 0
    degree[n] = 0
    elen[n] = -2
    w[n] = 0
    nel = 0
    mark = _wclear(0, 0, w, n)
    lemax = 0
    hsize = 0
    stamp = 1

    # Cp doubles as the assembly-tree parent store (flipped); reuse slot n
    Cp[n] = -1

    for i in range(n):
        d = degree[i]
        if d == 0:
            elen[i] = -2
            nel += 1
            Cp[i] = -1
            w[i] = 0
        elif d > dense:
            nv[i] = 0
            elen[i] = -1
            nel += 1
            Cp[i] = _flip(n)
            nv[n] += 1
        else:
            hsize = _heap_push(heap, hsize, d * stride + i)

    while nel < n:
        # select the live minimum-degree pivot, smallest index first
        while True:
            if hsize == 0:
                return np.empty(0, dtype=np.int64)  # inconsistent state
            key, hsize = _heap_pop(heap, hsize)
            k = key % stride
            dk_sel = key // stride
            if elen[k] >= 0 and nv[k] > 0 and degree[k] == dk_sel:
                break
        elenk = elen[k]
        nvk = nv[k]
        nel += nvk

        # garbage-collect Ci when the new element may not fit
        if elenk > 0 and cnz + degree[k] >= nzmax:
            for j in range(n):
                p = Cp[j]
                if p >= 0:
                    Cp[j] = Ci[p]
                    Ci[p] = _flip(j)
            q = np.int64(0)
            p = np.int64(0)
            while p < cnz:
                j = _flip(Ci[p])
                p += 1
                if j >= 0:
                    Ci[q] = Cp[j]
                    Cp[j] = q
                    q += 1
                    for k3 in range(lenv[j] - 1):
                        Ci[q] = Ci[p]
                        q += 1
                        p += 1
            cnz = q

        # construct the new element Lk
        dk = np.int64(0)
        nv[k] = -nvk
        p = Cp[k]
        pk1 = p if elenk == 0 else cnz
        pk2 = pk1
        for k1 in range(1, elenk + 2):
            if k1 > elenk:
                e = k
                pj = p
                ln = lenv[k] - elenk
            else:
                e = Ci[p]
                p += 1
                pj = Cp[e]
                ln = lenv[e]
            for k2 in range(ln):
                i = Ci[pj]
                pj += 1
                nvi = nv[i]
                if nvi <= 0:
                    continue
                dk += nvi
                nv[i] = -nvi
                Ci[pk2] = i
                pk2 += 1
            if e != k:
                Cp[e] = _flip(k)
                w[e] = 0
        if elenk != 0:
            cnz = pk2
        degree[k] = dk
        Cp[k] = pk1
        lenv[k] = pk2 - pk1
        elen[k] = -2

        # scan 1: |Le \ Lk| for elements adjacent to the front
        mark = _wclear(mark, lemax, w, n)
        for pk in range(pk1, pk2):
            i = Ci[pk]
            eln = elen[i]
            if eln <= 0:
                continue
            nvi = -nv[i]
            wnvi = mark - nvi
            for p in range(Cp[i], Cp[i] + eln):
                e = Ci[p]
                if w[e] >= mark:
                    w[e] -= nvi
                elif w[e] != 0:
                    w[e] = degree[e] + wnvi

        # scan 2: prune lists, approximate degrees, absorption, hashing
        for pk in range(pk1, pk2):
            i = Ci[pk]
            p1 = Cp[i]
            p2 = p1 + elen[i] - 1
            pn = p1
            h = np.int64(0)
            d = np.int64(0)
            for p in range(p1, p2 + 1):
                e = Ci[p]
                if w[e] != 0:
                    dext = w[e] - mark
                    if dext > 0:
                        d += dext
                        Ci[pn] = e
                        pn += 1
                        h += e
                    else:
                        Cp[e] = _flip(k)
                        w[e] = 0
            elen[i] = pn - p1 + 1
            p3 = pn
            p4 = p1 + lenv[i]
            for p in range(p2 + 1, p4):
                j = Ci[p]
                nvj = nv[j]
                if nvj <= 0:
                    continue
                d += nvj
                Ci[pn] = j
                pn += 1
                h += j
            if d == 0:
                # mass elimination: i is dominated by the pivot element
                Cp[i] = _flip(k)
                nvi = -nv[i]
                dk -= nvi
                nvk += nvi
                nel += nvi
                nv[i] = 0
                elen[i] = -1
            else:
                if d < degree[i]:
                    degree[i] = d
                Ci[pn] = Ci[p3]
                Ci[p3] = Ci[p1]
                Ci[p1] = k
                lenv[i] = pn - p1 + 1
                h = h % np.int64(n)
                next_[i] = hhead[h]
                hhead[h] = i
                last[i] = h
        degree[k] = dk
        lemax = max(lemax, dk)
        mark = _wclear(mark + lemax, lemax, w, n)

        # supervariable detection within hash buckets
        for pk in range(pk1, pk2):
            i = Ci[pk]
            if nv[i] >= 0:
                continue
            h = last[i]
            i = hhead[h]
            hhead[h] = -1
            while i != -1 and next_[i] != -1:
                ln = lenv[i]
                eln = elen[i]
                for p in range(Cp[i] + 1, Cp[i] + ln):
                    w[Ci[p]] = mark
                jlast = i
                j = next_[i]
                while j != -1:
                    ok = lenv[j] == ln and elen[j] == eln
                    p = Cp[j] + 1
                    while ok and p < Cp[j] + ln:
                        if w[Ci[p]] != mark:
                            ok = False
                        p += 1
                    if ok:
                        Cp[j] = _flip(i)
                        nv[i] += nv[j]
                        nv[j] = 0
                        elen[j] = -1
                        j = next_[j]
                        next_[jlast] = j
                    else:
                        jlast = j
                        j = next_[j]
                i = next_[i]
                mark += 1

        # finalize: restore weights, final degrees, requeue front members
        p = pk1
        for pk in range(pk1, pk2):
            i = Ci[pk]
            nvi = -nv[i]
            if nvi <= 0:
                continue
            nv[i] = nvi
            d = degree[i] + dk - nvi
            dcap = n - nel - nvi
            if dcap < d:
                d = dcap
            if d < 0:
                d = 0
            degree[i] = d
            if hsize + 1 > heap.size:
                stamp += 1
                hsize = _heap_compact(heap, hsize, stride, degree, elen, nv, seen, stamp)
            hsize = _heap_push(heap, hsize, d * stride + i)
            Ci[p] = i
            p += 1
        nv[k] = nvk
        lenv[k] = p - pk1
        if lenv[k] == 0:
            Cp[k] = -1
            w[k] = 0
        if elenk != 0:
            cnz = p

    # every node now points to its assembly-tree parent (flipped); postorder
    for i in range(n + 1):
        Cp[i] = _flip(Cp[i])
    for j in range(n + 1):
        hhead[j] = -1
    for j in range(n, -1, -1):
        if nv[j] > 0:
            continue
        next_[j] = hhead[Cp[j]]
        hhead[Cp[j]] = j
    for e in range(n, -1, -1):
        if nv[e] <= 0:
            continue
        if Cp[e] != -1:
            next_[e] = hhead[Cp[e]]
            hhead[Cp[e]] = e
    post = np.empty(n + 1, dtype=np.int64)
    stack = last  # reuse
    kout = 0
    for root in range(n + 1):
        if Cp[root] != -1:
            continue
        top = 0
        stack[0] = root
        while top >= 0:
            node = stack[top]
            child = hhead[node]
            if child == -1:
                top -= 1
                post[kout] = node
                kout += 1
            else:
                hhead[node] = next_[child]
                top += 1
                stack[top] = child
    return post[:n]


def amd_order(n, col_ptr, row_idx) -> np.ndarray:
    """AMD permutation for a symmetric pattern given by its upper triangle."""
    if n == 0:
        return np.empty(0, dtype=np.int64)
    # build A + A^T without the diagonal
    counts = np.zeros(n, dtype=np.int64)
    cols = np.repeat(np.arange(n, dtype=np.int64), np.diff(col_ptr))
    rows = np.asarray(row_idx, dtype=np.int64)
    off = rows != cols
    rows, cols = rows[off], cols[off]
    np.add.at(counts, rows, 1)
    np.add.at(counts, cols, 1)
    cnz = int(counts.sum())
    nzmax = cnz + cnz // 5 + 8 * n + 16
    Cp = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts, out=Cp[1 : n + 1])
    Ci = np.empty(nzmax, dtype=np.int64)
    rr = np.concatenate([rows, cols])
    cc = np.concatenate([cols, rows])
    by_col = np.argsort(cc, kind="stable")
    Ci[:cnz] = rr[by_col]
    heap = np.empty(max(4 * cnz + 4 * n + 64, 1024), dtype=np.int64)
    seen = np.zeros(n + 1, dtype=np.int64)
    order = _amd_kernel(n, Cp[: n + 2].copy(), Ci, np.int64(nzmax), np.int64(cnz), heap, seen)
    if order.size != n:
        raise RuntimeError("ordering failed to converge")
    return order
