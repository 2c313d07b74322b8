"""Predictor-corrector interior-point iteration and the top-level solve.

The method is a feasible-start (no homogeneous embedding) Mehrotra scheme in
the Nesterov-Todd scaled space. Each iteration refactors the KKT matrix once
and solves two right-hand sides with it: the affine probe and the combined
centering-corrector direction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import cones
from .cones import ScalingMode, compute_mu, compute_nt_scaling, jordan_divide, jordan_product
from .errors import NumericalError
from .kkt import KKTSystem, assemble_kkt
from .linsys import LinsysBackend, make_backend
from .problem import ProblemData, Settings, SolveResult, SolveStatus, validate_problem
from .sparse import spmv, spmv_sym_upper

TINY_STEP = 1e-10
MAX_CONSECUTIVE_STALLS = 3


@dataclass
class Iterate:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    s: np.ndarray
    mu: float

    def copy(self) -> "Iterate":
        return Iterate(self.x.copy(), self.y.copy(), self.z.copy(), self.s.copy(), self.mu)


@dataclass
class Residuals:
    r_dual: np.ndarray  # P x + c + A^T y + G^T z
    r_eq: np.ndarray  # A x - b
    r_cone: np.ndarray  # G x + s - h
    gap: float  # s . z
    objective_primal: float  # 0.5 x^T P x + c^T x
    # norms of the individual products, kept for relative termination scaling
    norm_Px: float
    norm_Aty: float
    norm_Gtz: float
    norm_c: float
    norm_Ax: float
    norm_b: float
    norm_Gx: float
    norm_h: float


@dataclass
class StepInfo:
    alpha: float
    alpha_affine: float
    sigma: float
    mu_affine: float


def _inf_norm(v: np.ndarray) -> float:
    return float(np.max(np.abs(v), initial=0.0))


def compute_residuals(data: ProblemData, it: Iterate) -> Residuals:
    Px = spmv_sym_upper(data.P, it.x)
    Aty = spmv(data.A, it.y, transpose=True)
    Gtz = spmv(data.G, it.z, transpose=True)
    Ax = spmv(data.A, it.x)
    Gx = spmv(data.G, it.x)
    r_dual = Px + data.c + Aty + Gtz
    r_eq = Ax - data.b
    r_cone = Gx + it.s - data.h
    gap = float(np.dot(it.s, it.z))
    objective = 0.5 * float(np.dot(it.x, Px)) + float(np.dot(data.c, it.x))
    res = Residuals(
        r_dual,
        r_eq,
        r_cone,
        gap,
        objective,
        _inf_norm(Px),
        _inf_norm(Aty),
        _inf_norm(Gtz),
        _inf_norm(data.c),
        _inf_norm(Ax),
        _inf_norm(data.b),
        _inf_norm(Gx),
        _inf_norm(data.h),
    )
    if not (
        np.all(np.isfinite(r_dual))
        and np.all(np.isfinite(r_eq))
        and np.all(np.isfinite(r_cone))
        and np.isfinite(gap)
    ):
        raise NumericalError("non-finite residuals")
    return res


def check_termination(res: Residuals, it: Iterate, settings: Settings) -> SolveStatus | None:
    """Solved when every mixed absolute/relative criterion holds (inclusive)."""
    ea, er = settings.eps_abs, settings.eps_rel
    dual_ok = _inf_norm(res.r_dual) <= ea + er * max(
        res.norm_Px, res.norm_Aty, res.norm_Gtz, res.norm_c
    )
    eq_ok = _inf_norm(res.r_eq) <= ea + er * max(res.norm_Ax, res.norm_b)
    cone_ok = _inf_norm(res.r_cone) <= ea + er * max(
        res.norm_Gx, _inf_norm(it.s), res.norm_h
    )
    gap_ok = res.gap <= ea + er * max(abs(res.objective_primal), 1.0)
    if dual_ok and eq_ok and cone_ok and gap_ok:
        return SolveStatus.SOLVED
    return None


def _split(kkt: KKTSystem, v: np.ndarray):
    n, p = kkt.n, kkt.p
    return v[:n], v[n : n + p], v[n + p :]


def _stack(kkt: KKTSystem, vx, vy, vz) -> np.ndarray:
    out = kkt.rhs_work
    out[: kkt.n] = vx
    out[kkt.n : kkt.n + kkt.p] = vy
    out[kkt.n + kkt.p :] = vz
    return out.copy()


def initialize_iterate(data: ProblemData, kkt: KKTSystem, backend: LinsysBackend) -> Iterate:
    """Starting point from two solves of the identity-scaled KKT system.

    The first solve, with right-hand side (-c, b, h), supplies x, y and the
    slack estimate; the second, with (-c, 0, 0), supplies the dual shift for z.
    Both cone variables are pushed strictly inside afterwards.
    """
    backend.update(cones.identity_scaling(data.cone))
    backend.factor()
    sol = backend.solve(_stack(kkt, -data.c, data.b, data.h))
    x, y, zt = _split(kkt, sol)
    s = cones.bring_to_interior(-zt, data.cone)

    sol2 = backend.solve(_stack(kkt, -data.c, np.zeros(data.p), np.zeros(data.m)))
    _, _, z2 = _split(kkt, sol2)
    z = cones.bring_to_interior(z2, data.cone)

    it = Iterate(x.copy(), y.copy(), z, s, 0.0)
    it.mu = compute_mu(it.s, it.z, data.cone)
    if not np.isfinite(it.mu):
        raise NumericalError("non-finite initial iterate")
    return it


def ipm_step(
    data: ProblemData,
    kkt: KKTSystem,
    backend: LinsysBackend,
    it: Iterate,
    settings: Settings,
    res: Residuals | None = None,
    force_sigma: float | None = None,
) -> tuple[Iterate, StepInfo]:
    """One predictor-corrector iteration: exactly one factor and two solves."""
    if res is None:
        res = compute_residuals(data, it)
    ex = backend.cone_executor
    cone = data.cone
    deg = cones.cone_degree(cone)

    scaling = compute_nt_scaling(it.s, it.z, cone, executor=ex)
    lam = scaling.lam
    backend.update(scaling)
    backend.factor()

    def solve_direction(d_comp: np.ndarray):
        # third-block right-hand side: -r_cone - W (lam \ d_comp)
        d = jordan_divide(lam, d_comp, cone, executor=ex)
        wd = cones.apply_scaling(scaling, d, ScalingMode.MULTIPLY, executor=ex)
        rhs = _stack(kkt, -res.r_dual, -res.r_eq, -res.r_cone - wd)
        sol = backend.solve(rhs)
        dx, dy, dz = _split(kkt, sol)
        wdz = cones.apply_scaling(scaling, dz, ScalingMode.MULTIPLY, executor=ex)
        ds = cones.apply_scaling(scaling, d - wdz, ScalingMode.MULTIPLY, executor=ex)
        return dx.copy(), dy.copy(), dz.copy(), ds, wdz

    lam_sq = jordan_product(lam, lam, cone, executor=ex)

    # predictor: pure Newton direction toward complementarity zero
    dx_a, dy_a, dz_a, ds_a, wdz_a = solve_direction(-lam_sq)
    step_s = cones.max_step_to_boundary(it.s, ds_a, cone, executor=ex)
    step_z = cones.max_step_to_boundary(it.z, dz_a, cone, executor=ex)
    alpha_aff = min(1.0, step_s, step_z)
    mu_aff = max(
        0.0,
        float(np.dot(it.s + alpha_aff * ds_a, it.z + alpha_aff * dz_a)) / deg,
    )
    mu = compute_mu(it.s, it.z, cone)
    if force_sigma is not None:
        sigma = force_sigma
    else:
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

    # corrector term in the scaled space: (W^{-1} ds_aff) o (W dz_aff)
    winv_ds_a = cones.apply_scaling(scaling, ds_a, ScalingMode.MULTIPLY_INVERSE, executor=ex)
    correction = jordan_product(winv_ds_a, wdz_a, cone, executor=ex)
    d_comp = sigma * mu * cones.cone_identity(cone) - lam_sq - correction

    dx, dy, dz, ds, _ = solve_direction(d_comp)
    step_s = cones.max_step_to_boundary(it.s, ds, cone, executor=ex)
    step_z = cones.max_step_to_boundary(it.z, dz, cone, executor=ex)
    alpha = min(1.0, settings.step_fraction * min(step_s, step_z))
    if not np.isfinite(alpha) or alpha <= 0.0:
        raise NumericalError("non-positive or non-finite step length")

    nxt = Iterate(
        it.x + alpha * dx,
        it.y + alpha * dy,
        it.z + alpha * dz,
        it.s + alpha * ds,
        0.0,
    )
    nxt.mu = compute_mu(nxt.s, nxt.z, cone)
    if not (
        np.all(np.isfinite(nxt.x))
        and np.all(np.isfinite(nxt.y))
        and np.all(np.isfinite(nxt.z))
        and np.all(np.isfinite(nxt.s))
    ):
        raise NumericalError("non-finite iterate")
    return nxt, StepInfo(alpha, alpha_aff, sigma, mu_aff)


def solve(
    data: ProblemData,
    settings: Settings | None = None,
    backend_name: str = "builtin",
    iterate_hook=None,
) -> SolveResult:
    """Validate, assemble, and iterate until a termination status is reached.

    setup_seconds covers validation, assembly and the backend's one-time
    analysis; solve_seconds covers initialization and the iteration loop.
    """
    settings = settings or Settings()
    t0 = time.perf_counter()
    validate_problem(data)
    kkt = assemble_kkt(data)
    backend = make_backend(backend_name)
    try:
        backend.initialize(kkt, settings)
        t1 = time.perf_counter()
        setup_seconds = t1 - t0

        status = SolveStatus.NUMERICAL_ERROR
        iterations = 0
        stalls = 0
        it = Iterate(
            np.zeros(data.n), np.zeros(data.p), np.zeros(data.m), np.zeros(data.m), 0.0
        )
        try:
            it = initialize_iterate(data, kkt, backend)
            if iterate_hook is not None:
                iterate_hook(it)
            while True:
                res = compute_residuals(data, it)
                if check_termination(res, it, settings) is SolveStatus.SOLVED:
                    status = SolveStatus.SOLVED
                    break
                if iterations >= settings.max_iters:
                    status = SolveStatus.MAX_ITERS
                    break
                # the limit covers setup plus solve, like a wall-clock budget
                if time.perf_counter() - t0 > settings.time_limit_seconds:
                    status = SolveStatus.TIME_LIMIT
                    break
                it, info = ipm_step(data, kkt, backend, it, settings, res=res)
                iterations += 1
                if iterate_hook is not None:
                    iterate_hook(it)
                if info.alpha < TINY_STEP:
                    stalls += 1
                    if stalls >= MAX_CONSECUTIVE_STALLS:
                        status = SolveStatus.NUMERICAL_ERROR
                        break
                else:
                    stalls = 0
        except NumericalError:
            status = SolveStatus.NUMERICAL_ERROR
        solve_seconds = time.perf_counter() - t1

        Px = spmv_sym_upper(data.P, it.x)
        objective = 0.5 * float(np.dot(it.x, Px)) + float(np.dot(data.c, it.x))
        return SolveResult(
            status=status,
            x=it.x,
            y=it.y,
            z=it.z,
            s=it.s,
            objective=objective,
            iterations=iterations,
            setup_seconds=setup_seconds,
            solve_seconds=solve_seconds,
            factor_count=backend.n_factor,
            solve_count=backend.n_solve,
        )
    finally:
        backend.close()
