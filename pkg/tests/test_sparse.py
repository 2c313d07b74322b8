from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsocp.errors import BadPermutation, BadSparseStructure, IndexOutOfRange
from qsocp.ldl import symbolic_factor
from qsocp.sparse import (
    SparseMatrixCSC,
    check_csc,
    csc_from_triplets,
    empty_csc,
    fill_reducing_order,
    identity_permutation,
    make_permutation,
    spmv,
    spmv_sym_upper,
    symmetric_permute,
)


def triplet_strategy(max_n=10, max_entries=40):
    return st.integers(2, max_n).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(
                    st.integers(0, n - 1),
                    st.integers(0, n - 1),
                    st.floats(-10, 10, allow_nan=False),
                ),
                max_size=max_entries,
            ),
        )
    )


class TestCscFromTriplets:
    def test_identity_pattern(self):
        M = csc_from_triplets(2, 2, [(0, 0, 1.0), (1, 1, 2.0)])
        assert M.nnz == 2
        assert np.array_equal(M.to_dense(), np.diag([1.0, 2.0]))

    def test_duplicates_summed(self):
        M = csc_from_triplets(2, 2, [(0, 0, 1.0), (0, 0, 2.0)])
        assert M.nnz == 1
        assert M.values[0] == 3.0

    def test_explicit_zeros_kept(self):
        M = csc_from_triplets(2, 2, [(0, 1, 0.0)])
        assert M.nnz == 1

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            csc_from_triplets(2, 2, [(2, 0, 1.0)])
        with pytest.raises(IndexOutOfRange):
            csc_from_triplets(2, 2, [(0, -1, 1.0)])

    @settings(max_examples=50, deadline=None)
    @given(triplet_strategy())
    def test_matches_dense_accumulation(self, case):
        n, trips = case
        dense = np.zeros((n, n))
        for r, c, v in trips:
            dense[r, c] += v
        M = csc_from_triplets(n, n, trips)
        check_csc(M)
        assert np.allclose(M.to_dense(), dense, atol=1e-12)


class TestSpmv:
    def test_identity(self):
        M = csc_from_triplets(2, 2, [(0, 0, 1.0), (1, 1, 1.0)])
        x = np.array([3.0, -1.0])
        assert np.array_equal(spmv(M, x), x)

    def test_hand_case_and_transpose(self):
        M = csc_from_triplets(2, 2, [(0, 1, 1.0), (1, 0, 2.0)])
        x = np.ones(2)
        assert np.array_equal(spmv(M, x), np.array([1.0, 2.0]))
        assert np.array_equal(spmv(M, x, transpose=True), np.array([2.0, 1.0]))

    def test_accumulate(self):
        M = csc_from_triplets(1, 1, [(0, 0, 2.0)])
        out = spmv(M, np.array([3.0]), accumulate_into=np.array([1.0]))
        assert out[0] == 7.0

    def test_dimension_mismatch(self):
        from qsocp.errors import DimensionMismatch

        M = empty_csc(3, 2)
        with pytest.raises(DimensionMismatch):
            spmv(M, np.zeros(3))
        with pytest.raises(DimensionMismatch):
            spmv(M, np.zeros(2), accumulate_into=np.zeros(2))

    @settings(max_examples=40, deadline=None)
    @given(triplet_strategy())
    def test_matches_dense_product(self, case):
        n, trips = case
        M = csc_from_triplets(n, n, trips)
        rng = np.random.default_rng(0)
        x = rng.standard_normal(n)
        dense = M.to_dense()
        assert np.allclose(spmv(M, x), dense @ x, atol=1e-9)
        assert np.allclose(spmv(M, x, transpose=True), dense.T @ x, atol=1e-9)


def upper_pattern(n, trips):
    ups = [(min(r, c), max(r, c), v) for r, c, v in trips]
    ups += [(i, i, 1.0) for i in range(n)]
    return csc_from_triplets(n, n, ups)


class TestSymmetricPermute:
    def test_identity(self):
        K = upper_pattern(3, [(0, 1, 2.0), (1, 2, -1.0)])
        out, emap = symmetric_permute(K, identity_permutation(3))
        assert np.array_equal(out.to_dense(), K.to_dense())
        assert np.array_equal(emap, np.arange(K.nnz))

    def test_swap_on_diagonal(self):
        K = csc_from_triplets(2, 2, [(0, 0, 1.0), (1, 1, 2.0)])
        perm = make_permutation([1, 0])
        out, _ = symmetric_permute(K, perm)
        assert np.array_equal(np.diag(out.to_dense()), [2.0, 1.0])

    def test_random_against_dense(self):
        rng = np.random.default_rng(3)
        n = 8
        trips = [
            (int(rng.integers(n)), int(rng.integers(n)), float(rng.standard_normal()))
            for _ in range(20)
        ]
        K = upper_pattern(n, trips)
        perm = make_permutation(rng.permutation(n))
        out, emap = symmetric_permute(K, perm)
        dense = K.to_dense_symmetric()
        Pm = np.zeros((n, n))
        Pm[np.arange(n), perm.forward] = 1.0
        expect = Pm @ dense @ Pm.T
        assert np.allclose(out.to_dense_symmetric(), expect, atol=1e-12)
        # the entry map scatters refreshed values without re-sorting
        K2 = K.copy()
        K2.values[:] = rng.standard_normal(K.nnz)
        scattered = np.empty(K.nnz)
        scattered[emap] = K2.values
        out2, _ = symmetric_permute(K2, perm)
        assert np.array_equal(scattered, out2.values)

    def test_inverse_roundtrip_exact(self):
        rng = np.random.default_rng(5)
        n = 12
        trips = [
            (int(rng.integers(n)), int(rng.integers(n)), float(rng.standard_normal()))
            for _ in range(30)
        ]
        K = upper_pattern(n, trips)
        perm = make_permutation(rng.permutation(n))
        mid, _ = symmetric_permute(K, perm)
        inv = make_permutation(perm.inverse)
        back, _ = symmetric_permute(mid, inv)
        assert np.array_equal(back.col_pointers, K.col_pointers)
        assert np.array_equal(back.row_indices, K.row_indices)
        assert np.array_equal(back.values, K.values)


class TestPermutation:
    def test_bijection_required(self):
        with pytest.raises(BadPermutation):
            make_permutation([0, 0, 1])
        with pytest.raises(BadPermutation):
            make_permutation([0, 3, 1])

    def test_inverse_property(self):
        p = make_permutation([2, 0, 1])
        assert np.array_equal(p.inverse[p.forward], np.arange(3))


def factor_nnz(pattern, perm):
    return symbolic_factor(pattern, perm).L_nnz


class TestFillReducingOrder:
    def test_diagonal_identity_accepted(self):
        pat = csc_from_triplets(4, 4, [(i, i, 1.0) for i in range(4)])
        perm = fill_reducing_order(pat, "amd")
        assert sorted(perm.forward.tolist()) == [0, 1, 2, 3]
        assert factor_nnz(pat, perm) == 0

    def test_natural_mode(self):
        pat = csc_from_triplets(4, 4, [(i, i, 1.0) for i in range(4)])
        perm = fill_reducing_order(pat, "natural")
        assert np.array_equal(perm.forward, np.arange(4))

    def test_arrow_hub_last_zero_fill(self):
        # oracle: enumerate the fill of all 24 orderings
        n = 4
        trips = [(0, j, 1.0) for j in range(n)] + [(i, i, 1.0) for i in range(1, n)]
        pat = csc_from_triplets(n, n, trips)
        oracle = min(
            factor_nnz(pat, make_permutation(list(p))) for p in permutations(range(n))
        )
        perm = fill_reducing_order(pat, "amd")
        assert factor_nnz(pat, perm) == oracle == n - 1  # zero fill beyond the arrow
        assert perm.forward[-1] == 0

    def test_tridiagonal_no_worse_than_identity(self):
        n = 10
        trips = [(i, i, 1.0) for i in range(n)] + [(i, i + 1, 1.0) for i in range(n - 1)]
        pat = csc_from_triplets(n, n, trips)
        amd_fill = factor_nnz(pat, fill_reducing_order(pat, "amd"))
        nat_fill = factor_nnz(pat, fill_reducing_order(pat, "natural"))
        assert amd_fill <= nat_fill

    def test_beats_worst_of_random_permutations(self):
        rng = np.random.default_rng(11)
        for _ in range(6):
            n = int(rng.integers(5, 50))
            k = int(rng.integers(n, 4 * n))
            trips = [
                (int(rng.integers(n)), int(rng.integers(n)), 1.0) for _ in range(k)
            ]
            pat = upper_pattern(n, trips)
            amd_fill = factor_nnz(pat, fill_reducing_order(pat, "amd"))
            worst = max(
                factor_nnz(pat, make_permutation(rng.permutation(n))) for _ in range(50)
            )
            assert amd_fill <= worst

    def test_deterministic(self):
        rng = np.random.default_rng(2)
        n = 30
        trips = [(int(rng.integers(n)), int(rng.integers(n)), 1.0) for _ in range(90)]
        pat = upper_pattern(n, trips)
        a = fill_reducing_order(pat, "amd").forward
        b = fill_reducing_order(pat, "amd").forward
        assert np.array_equal(a, b)

    def test_clique_of_cliques_zero_fill(self):
        # disjoint cliques sharing one hub: the hub-last order has zero fill
        # and the supervariable machinery must recover it
        nblocks, bsize = 10, 12
        n = nblocks * bsize + 1
        hub = n - 1
        trips = [(hub, hub, 1.0)]
        for bi in range(nblocks):
            ids = range(bi * bsize, (bi + 1) * bsize)
            trips += [(i, j, 1.0) for i in ids for j in ids if i <= j]
            trips += [(i, hub, 1.0) for i in ids]
        pat = csc_from_triplets(n, n, trips)
        perm = fill_reducing_order(pat, "amd")
        assert sorted(perm.forward.tolist()) == list(range(n))
        assert perm.forward[-1] == hub
        assert factor_nnz(pat, perm) == pat.nnz - n  # no fill beyond the pattern

    def test_dense_patterns_stay_valid(self):
        # high densities force the internal workspace to garbage-collect
        rng = np.random.default_rng(8)
        for n, density in [(40, 0.6), (60, 0.9), (150, 0.25)]:
            k = int(density * n * n / 2)
            r = rng.integers(0, n, k)
            c = rng.integers(0, n, k)
            trips = list(zip(np.minimum(r, c).tolist(), np.maximum(r, c).tolist(), [1.0] * k))
            trips += [(i, i, 1.0) for i in range(n)]
            pat = csc_from_triplets(n, n, trips)
            perm = fill_reducing_order(pat, "amd")
            assert sorted(perm.forward.tolist()) == list(range(n))
            assert np.array_equal(perm.forward, fill_reducing_order(pat, "amd").forward)

    def test_exhaustive_bounds_on_tiny_patterns(self):
        rng = np.random.default_rng(21)
        for _ in range(15):
            n = int(rng.integers(3, 7))
            k = int(rng.uniform(0.2, 0.9) * n * n / 2)
            r = rng.integers(0, n, k)
            c = rng.integers(0, n, k)
            trips = list(zip(np.minimum(r, c).tolist(), np.maximum(r, c).tolist(), [1.0] * k))
            trips += [(i, i, 1.0) for i in range(n)]
            pat = csc_from_triplets(n, n, trips)
            fills = [
                factor_nnz(pat, make_permutation(list(p))) for p in permutations(range(n))
            ]
            amd_fill = factor_nnz(pat, fill_reducing_order(pat, "amd"))
            assert min(fills) <= amd_fill <= max(fills)


class TestCheckCsc:
    def test_bad_pointers(self):
        M = SparseMatrixCSC(
            2, 2,
            np.array([0, 2, 1], dtype=np.int64),
            np.array([0, 1], dtype=np.int64),
            np.ones(2),
        )
        with pytest.raises(BadSparseStructure):
            check_csc(M)

    def test_unsorted_rows(self):
        M = SparseMatrixCSC(
            2, 2,
            np.array([0, 2, 2], dtype=np.int64),
            np.array([1, 0], dtype=np.int64),
            np.ones(2),
        )
        with pytest.raises(BadSparseStructure):
            check_csc(M)

    def test_sym_upper_matvec(self):
        K = upper_pattern(4, [(0, 2, 3.0), (1, 3, -2.0)])
        x = np.array([1.0, 2.0, -1.0, 0.5])
        assert np.allclose(spmv_sym_upper(K, x), K.to_dense_symmetric() @ x)
