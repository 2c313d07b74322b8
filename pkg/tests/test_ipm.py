import numpy as np
import pytest

from conftest import soc_slice_problem, tiny_qp, two_asset_portfolio
from qsocp import ConeSpec, ProblemData, Settings, SolveStatus, csc_from_triplets, solve
from qsocp.cones import cone_identity, interior_violation, is_strictly_interior
from qsocp.ipm import (
    Iterate,
    check_termination,
    compute_residuals,
    initialize_iterate,
    ipm_step,
)
from qsocp.kkt import assemble_kkt
from qsocp.linsys import make_backend
from qsocp.sparse import empty_csc, spmv, spmv_sym_upper


def residuals_for(data, x, y, z, s):
    it = Iterate(np.asarray(x, float), np.asarray(y, float), np.asarray(z, float),
                 np.asarray(s, float), 0.0)
    return compute_residuals(data, it), it


class TestComputeResiduals:
    def test_tiny_qp_at_optimum(self):
        data = tiny_qp()
        res, _ = residuals_for(data, [1.0], [], [2.0], [0.0])
        assert np.max(np.abs(res.r_dual)) <= 1e-12
        assert np.max(np.abs(res.r_cone)) <= 1e-12
        assert res.gap == 0.0
        assert res.objective_primal == pytest.approx(1.5)

    def test_zero_data_zero_iterate(self):
        data = ProblemData(
            n=2, m=1, p=0,
            P=empty_csc(2, 2), c=np.array([3.0, -1.0]),
            A=empty_csc(0, 2), b=np.zeros(0),
            G=empty_csc(1, 2), h=np.zeros(1),
            cone=ConeSpec(1),
        )
        res, _ = residuals_for(data, [0.0, 0.0], [], [0.0], [0.0])
        assert np.array_equal(res.r_dual, data.c)
        assert np.max(np.abs(res.r_eq), initial=0.0) == 0.0
        assert np.max(np.abs(res.r_cone)) == 0.0

    def test_random_matches_dense(self):
        from test_kkt import mixed_problem

        data = mixed_problem()
        rng = np.random.default_rng(1)
        x = rng.standard_normal(data.n)
        y = rng.standard_normal(data.p)
        z = rng.standard_normal(data.m)
        s = rng.standard_normal(data.m)
        res, _ = residuals_for(data, x, y, z, s)
        Pd = data.P.to_dense_symmetric()
        Ad = data.A.to_dense()
        Gd = data.G.to_dense()
        assert np.allclose(res.r_dual, Pd @ x + data.c + Ad.T @ y + Gd.T @ z)
        assert np.allclose(res.r_eq, Ad @ x - data.b)
        assert np.allclose(res.r_cone, Gd @ x + s - data.h)
        assert res.gap == pytest.approx(float(s @ z))
        assert res.objective_primal == pytest.approx(0.5 * x @ Pd @ x + data.c @ x)


class TestCheckTermination:
    def make_res(self, **overrides):
        data = tiny_qp()
        res, it = residuals_for(data, [1.0], [], [2.0], [0.0])
        for k, v in overrides.items():
            setattr(res, k, v)
        return res, it

    def test_all_zero_residuals_solved(self):
        res, it = self.make_res()
        assert check_termination(res, it, Settings()) is SolveStatus.SOLVED

    def test_large_gap_not_terminated(self):
        res, it = self.make_res(gap=1e-3)
        assert check_termination(res, it, Settings()) is None

    def test_boundary_equality_is_solved(self):
        settings = Settings()
        res, it = self.make_res()
        # dual scale norms: Px=1, A^T y=0, G^T z=2, c=1 -> threshold
        thresh = settings.eps_abs + settings.eps_rel * 2.0
        res.r_dual = np.array([thresh])
        assert check_termination(res, it, settings) is SolveStatus.SOLVED
        res.r_dual = np.array([np.nextafter(thresh, 1.0)])
        assert check_termination(res, it, settings) is None


class TestInitializeIterate:
    @pytest.mark.parametrize("problem", [tiny_qp, soc_slice_problem, two_asset_portfolio])
    def test_interior_and_finite(self, problem):
        data = problem()
        kkt = assemble_kkt(data)
        backend = make_backend("builtin")
        backend.initialize(kkt, Settings())
        it = initialize_iterate(data, kkt, backend)
        assert np.all(np.isfinite(it.x)) and np.all(np.isfinite(it.y))
        assert is_strictly_interior(it.s, data.cone)
        assert is_strictly_interior(it.z, data.cone)
        assert backend.n_factor == 1 and backend.n_solve == 2

    def test_identity_update_keeps_minus_identity_block(self):
        data = soc_slice_problem()
        kkt = assemble_kkt(data)
        backend = make_backend("builtin")
        backend.initialize(kkt, Settings())
        initialize_iterate(data, kkt, backend)
        n, p, m = data.n, data.p, data.m
        dense = kkt.matrix.to_dense_symmetric()
        assert np.allclose(dense[n + p :, n + p :], -np.eye(m))


class TestIpmStep:
    def test_mu_decreases_on_tiny_qp(self):
        data = tiny_qp()
        kkt = assemble_kkt(data)
        backend = make_backend("builtin")
        settings = Settings()
        backend.initialize(kkt, settings)
        it = initialize_iterate(data, kkt, backend)
        mus = [it.mu]
        for _ in range(5):
            it, _ = ipm_step(data, kkt, backend, it, settings)
            mus.append(it.mu)
        assert all(b < a for a, b in zip(mus, mus[1:]))

    def test_instrumentation_one_factor_two_solves(self):
        data = two_asset_portfolio()
        kkt = assemble_kkt(data)
        backend = make_backend("builtin")
        settings = Settings()
        backend.initialize(kkt, settings)
        it = initialize_iterate(data, kkt, backend)
        f0, s0 = backend.n_factor, backend.n_solve
        ipm_step(data, kkt, backend, it, settings)
        assert backend.n_factor == f0 + 1
        assert backend.n_solve == s0 + 2

    def test_centering_fixed_point(self):
        # an LP-type problem (P = 0) whose data makes the current iterate
        # exactly residual-free; with sigma forced to 1, the step must leave
        # the complementarity measure unchanged
        rng = np.random.default_rng(3)
        n, p = 5, 2
        cone = ConeSpec(3, (3,))
        m = cone.total_dim
        from test_cones import random_interior

        x = rng.standard_normal(n)
        y = rng.standard_normal(p)
        z = random_interior(cone, rng)
        s = random_interior(cone, rng)
        A = csc_from_triplets(p, n, [(i, j, float(rng.standard_normal()))
                                     for i in range(p) for j in range(n)])
        G = csc_from_triplets(m, n, [(i, j, float(rng.standard_normal()))
                                     for i in range(m) for j in range(n)])
        b = spmv(A, x)
        h = spmv(G, x) + s
        c = -(spmv(A, y, transpose=True) + spmv(G, z, transpose=True))
        data = ProblemData(n=n, m=m, p=p, P=empty_csc(n, n), c=c,
                           A=A, b=b, G=G, h=h, cone=cone)
        kkt = assemble_kkt(data)
        backend = make_backend("builtin")
        settings = Settings()
        backend.initialize(kkt, settings)
        from qsocp.cones import compute_mu, identity_scaling

        backend.update(identity_scaling(cone))
        it = Iterate(x, y, z, s, compute_mu(s, z, cone))
        res = compute_residuals(data, it)
        assert np.max(np.abs(res.r_dual)) <= 1e-12
        nxt, info = ipm_step(data, kkt, backend, it, settings, force_sigma=1.0)
        assert abs(nxt.mu - it.mu) <= 1e-10 * it.mu


class TestSolve:
    def test_tiny_qp(self):
        res = solve(tiny_qp())
        assert res.status is SolveStatus.SOLVED
        assert res.x[0] == pytest.approx(1.0, abs=1e-6)
        assert res.z[0] == pytest.approx(2.0, abs=1e-6)
        assert res.objective == pytest.approx(1.5, abs=1e-6)

    def test_soc_slice(self):
        res = solve(soc_slice_problem())
        assert res.status is SolveStatus.SOLVED
        assert np.allclose(res.x, [1.0, -1.0, 0.0], atol=1e-6)

    def test_two_asset_portfolio_against_grid(self):
        # oracle: scan the simplex at 1e-6 resolution
        t = np.linspace(0.0, 1.0, 1_000_001)
        f = 0.1 * t**2 + 0.2 * (1 - t) ** 2 - (0.1 * t + 0.2 * (1 - t))
        oracle = float(np.min(f))
        res = solve(two_asset_portfolio())
        assert res.status is SolveStatus.SOLVED
        assert abs(res.objective - oracle) <= 1e-6

    def test_interiority_along_trace(self):
        data = soc_slice_problem()
        seen = []

        def hook(it):
            seen.append((it.s.copy(), it.z.copy()))

        res = solve(data, iterate_hook=hook)
        assert res.status is SolveStatus.SOLVED
        assert len(seen) == res.iterations + 1
        for s, z in seen:
            assert is_strictly_interior(s, data.cone)
            assert is_strictly_interior(z, data.cone)

    def test_deterministic_trace_bitwise(self):
        data = two_asset_portfolio()
        traces = []
        for _ in range(2):
            tr = []
            solve(data, iterate_hook=lambda it: tr.append(it.x.copy()))
            traces.append(tr)
        assert len(traces[0]) == len(traces[1])
        for a, b in zip(*traces):
            assert np.array_equal(a, b)

    def test_gap_consistency_with_dual_objective(self):
        for problem in (tiny_qp, soc_slice_problem, two_asset_portfolio):
            data = problem()
            res = solve(data)
            assert res.status is SolveStatus.SOLVED
            gap = float(res.s @ res.z)
            assert gap >= -1e-9
            Px = spmv_sym_upper(data.P, res.x)
            dual = -0.5 * float(res.x @ Px) - float(data.b @ res.y) - float(data.h @ res.z)
            assert abs(res.objective - dual) <= gap + 1e-6

    def test_call_discipline(self):
        for problem in (tiny_qp, soc_slice_problem, two_asset_portfolio):
            res = solve(problem())
            assert res.factor_count == res.iterations + 1
            assert res.solve_count == 2 * res.iterations + 2

    def test_max_iters_status(self):
        res = solve(two_asset_portfolio(), Settings(max_iters=1))
        assert res.status is SolveStatus.MAX_ITERS
        assert res.iterations == 1

    def test_time_limit_status(self):
        res = solve(two_asset_portfolio(), Settings(time_limit_seconds=1e-9))
        assert res.status is SolveStatus.TIME_LIMIT

    def test_infeasible_problem_does_not_claim_solved(self):
        # x >= 1 and x <= 0 simultaneously
        data = ProblemData(
            n=1, m=2, p=0,
            P=csc_from_triplets(1, 1, [(0, 0, 1.0)]),
            c=np.zeros(1),
            A=empty_csc(0, 1), b=np.zeros(0),
            G=csc_from_triplets(2, 1, [(0, 0, -1.0), (1, 0, 1.0)]),
            h=np.array([-1.0, 0.0]),
            cone=ConeSpec(2),
        )
        res = solve(data, Settings(max_iters=50))
        assert res.status is not SolveStatus.SOLVED

    def test_backend_parity_objectives(self):
        for problem in (tiny_qp, soc_slice_problem, two_asset_portfolio):
            r1 = solve(problem(), backend_name="builtin")
            r2 = solve(problem(), backend_name="parallel")
            assert r1.status is SolveStatus.SOLVED and r2.status is SolveStatus.SOLVED
            assert r2.objective == pytest.approx(r1.objective, rel=1e-6)

    def test_dimension_one_soc(self):
        # a SOC of size 1 is the ray u >= 0; the solver must treat it cleanly
        data = ProblemData(
            n=1, m=2, p=0,
            P=csc_from_triplets(1, 1, [(0, 0, 1.0)]),
            c=np.array([1.0]),
            A=empty_csc(0, 1), b=np.zeros(0),
            G=csc_from_triplets(2, 1, [(0, 0, -1.0), (1, 0, -1.0)]),
            h=np.array([-1.0, -1.0]),
            cone=ConeSpec(1, (1,)),
        )
        res = solve(data)
        assert res.status is SolveStatus.SOLVED
        assert res.x[0] == pytest.approx(1.0, abs=1e-6)

    def test_non_finite_data_reports_numerical_error(self):
        data = tiny_qp()
        data.c[0] = np.nan
        res = solve(data)
        assert res.status is SolveStatus.NUMERICAL_ERROR

    def test_random_feasible_problems_satisfy_kkt(self):
        # end-to-end: the reported Solved status must be backed by the KKT
        # conditions at the solver's own tolerance scaling
        from conftest import random_feasible_problem

        rng = np.random.default_rng(31415)
        settings = Settings()
        for _ in range(30):
            data = random_feasible_problem(rng)
            res = solve(data, settings)
            assert res.status is SolveStatus.SOLVED
            it = Iterate(res.x, res.y, res.z, res.s, 0.0)
            r = compute_residuals(data, it)
            assert check_termination(r, it, settings) is SolveStatus.SOLVED
            assert is_strictly_interior(res.s, data.cone)
            assert is_strictly_interior(res.z, data.cone)
