"""Algebra over the product cone: Jordan products, Nesterov-Todd scalings,
boundary steps and interior shifts.

Work decomposes cone by cone. The orthant block is one vectorized numpy
segment; second-order cones are walked by numba kernels that take a
contiguous cone range and release the GIL, so the parallel executor can run
disjoint ranges on worker threads. Reductions (min step, max violation)
combine per-range results in range order and are exact, which keeps serial
and threaded execution bitwise identical.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _cone_kernels as _ck
from .errors import NotInterior
from .problem import ConeSpec

STEP_UNBOUNDED = _ck.STEP_UNBOUNDED


class ConeKind(enum.Enum):
    ORTHANT = "orthant"
    SECOND_ORDER = "second_order"


@dataclass(frozen=True)
class ConeView:
    kind: ConeKind
    offset: int
    dim: int


def cone_views(cone: ConeSpec) -> tuple[ConeView, ...]:
    views = []
    off = 0
    if cone.orthant_dim > 0:
        views.append(ConeView(ConeKind.ORTHANT, 0, cone.orthant_dim))
        off = cone.orthant_dim
    for q in cone.soc_dims:
        views.append(ConeView(ConeKind.SECOND_ORDER, off, q))
        off += q
    return tuple(views)


@lru_cache(maxsize=64)
def _soc_layout(cone: ConeSpec):
    dims = np.asarray(cone.soc_dims, dtype=np.int64)
    starts = cone.orthant_dim + np.concatenate(
        [np.zeros(1, dtype=np.int64), np.cumsum(dims)[:-1]]
    ) if dims.size else np.zeros(0, dtype=np.int64)
    return starts, dims


def cone_degree(cone: ConeSpec) -> int:
    """Barrier degree: each orthant coordinate and each SOC counts once."""
    return cone.orthant_dim + cone.soc_count


def cone_identity(cone: ConeSpec) -> np.ndarray:
    e = np.zeros(cone.total_dim)
    e[: cone.orthant_dim] = 1.0
    starts, _ = _soc_layout(cone)
    e[starts] = 1.0
    return e


class SerialExecutor:
    """Runs cone ranges on the calling thread."""

    def splits(self, count: int):
        return [(0, count)] if count else []

    def map(self, fn, items):
        return [fn(item) for item in items]

    def close(self):
        pass


class ThreadExecutor:
    """Splits the cone list into contiguous ranges handled by worker threads.

    Small batches stay on the calling thread; dispatch would dominate there.
    The underlying kernels release the GIL, so ranges genuinely overlap.
    """

    def __init__(self, max_workers: int = 4, serial_below: int = 64):
        self._workers = max_workers
        self._serial_below = serial_below
        self._pool = ThreadPoolExecutor(max_workers=max_workers)

    def splits(self, count: int):
        if count == 0:
            return []
        if count < self._serial_below:
            return [(0, count)]
        size = (count + self._workers - 1) // self._workers
        return [(k, min(k + size, count)) for k in range(0, count, size)]

    def map(self, fn, items):
        items = list(items)
        if len(items) <= 1:
            return [fn(item) for item in items]
        return list(self._pool.map(fn, items))

    def close(self):
        self._pool.shutdown(wait=True)


_SERIAL = SerialExecutor()


@dataclass
class NTScalingSet:
    """Per-cone scaling blocks and the scaled point lambda = W z = W^{-1} s.

    Orthant coordinates carry a positive scalar w_i. Each SOC block carries
    (eta, w_bar) with W = eta (2 w_bar w_bar^T - J) on the block, J the
    reflection diag(1, -1, ..., -1) and w_bar of unit hyperbolic norm; w_bar
    lives in the flat array soc_wbar aligned with the conic vector.
    """

    cone: ConeSpec
    w_orthant: np.ndarray
    soc_eta: np.ndarray
    soc_wbar: np.ndarray  # length m; only SOC segments are meaningful
    lam: np.ndarray

    def views(self) -> tuple[ConeView, ...]:
        return cone_views(self.cone)

    def soc_block(self, k: int) -> tuple[float, np.ndarray]:
        """(eta, w_bar) of the k-th second-order cone."""
        starts, dims = _soc_layout(self.cone)
        o, d = int(starts[k]), int(dims[k])
        return float(self.soc_eta[k]), self.soc_wbar[o : o + d]


def identity_scaling(cone: ConeSpec) -> NTScalingSet:
    wbar = np.zeros(cone.total_dim)
    starts, _ = _soc_layout(cone)
    wbar[starts] = 1.0
    return NTScalingSet(
        cone,
        np.ones(cone.orthant_dim),
        np.ones(cone.soc_count),
        wbar,
        cone_identity(cone),
    )


def compute_nt_scaling(
    s: np.ndarray, z: np.ndarray, cone: ConeSpec, executor=None
) -> NTScalingSet:
    """Nesterov-Todd scaling of a strictly interior pair (s, z)."""
    ex = executor or _SERIAL
    l = cone.orthant_dim
    m = cone.total_dim
    scaling = NTScalingSet(cone, np.empty(l), np.empty(cone.soc_count), np.zeros(m), np.empty(m))
    if l:
        so, zo = s[:l], z[:l]
        if np.any(so <= 0.0) or np.any(zo <= 0.0):
            raise NotInterior("orthant coordinate not strictly positive")
        scaling.w_orthant[:] = np.sqrt(so / zo)
        scaling.lam[:l] = np.sqrt(so * zo)
    starts, dims = _soc_layout(cone)
    if dims.size:
        flags = ex.map(
            lambda rng: _ck.soc_nt_scaling(
                s, z, starts, dims, rng[0], rng[1],
                scaling.soc_eta, scaling.soc_wbar, scaling.lam,
            ),
            ex.splits(dims.size),
        )
        if any(flags):
            raise NotInterior("point on or outside a second-order cone")
    return scaling


class ScalingMode(enum.Enum):
    MULTIPLY = "multiply"
    MULTIPLY_INVERSE = "multiply_inverse"


def apply_scaling(
    scaling: NTScalingSet, u: np.ndarray, mode: ScalingMode, executor=None
) -> np.ndarray:
    """W u or W^{-1} u blockwise; W is symmetric so transposes coincide."""
    ex = executor or _SERIAL
    cone = scaling.cone
    l = cone.orthant_dim
    out = np.empty_like(u, dtype=np.float64)
    inverse = mode is ScalingMode.MULTIPLY_INVERSE
    if l:
        out[:l] = u[:l] / scaling.w_orthant if inverse else u[:l] * scaling.w_orthant
    starts, dims = _soc_layout(cone)
    if dims.size:
        ex.map(
            lambda rng: _ck.soc_apply_w(
                scaling.soc_eta, scaling.soc_wbar, starts, dims, u, out,
                inverse, rng[0], rng[1],
            ),
            ex.splits(dims.size),
        )
    return out


def jordan_product(u: np.ndarray, v: np.ndarray, cone: ConeSpec, executor=None) -> np.ndarray:
    """Elementwise on the orthant; (u.v, u0 v1 + v0 u1) on each SOC block."""
    ex = executor or _SERIAL
    l = cone.orthant_dim
    out = np.empty(cone.total_dim)
    if l:
        out[:l] = u[:l] * v[:l]
    starts, dims = _soc_layout(cone)
    if dims.size:
        ex.map(
            lambda rng: _ck.soc_jordan(u, v, out, starts, dims, rng[0], rng[1]),
            ex.splits(dims.size),
        )
    return out


def jordan_divide(lam: np.ndarray, v: np.ndarray, cone: ConeSpec, executor=None) -> np.ndarray:
    """Solve lam o u = v for u, blockwise."""
    ex = executor or _SERIAL
    l = cone.orthant_dim
    out = np.empty(cone.total_dim)
    if l:
        out[:l] = v[:l] / lam[:l]
    starts, dims = _soc_layout(cone)
    if dims.size:
        ex.map(
            lambda rng: _ck.soc_jordan_div(lam, v, out, starts, dims, rng[0], rng[1]),
            ex.splits(dims.size),
        )
    return out


def max_step_to_boundary(
    u: np.ndarray, du: np.ndarray, cone: ConeSpec, executor=None
) -> float:
    """sup{alpha >= 0 : u + alpha du in K} for strictly interior u.

    Returns STEP_UNBOUNDED when the ray never leaves the cone.
    """
    ex = executor or _SERIAL
    check_interior(u, cone)
    l = cone.orthant_dim
    best = STEP_UNBOUNDED
    if l:
        uo, do = u[:l], du[:l]
        neg = do < 0.0
        if np.any(neg):
            best = float(np.min(-uo[neg] / do[neg]))
    starts, dims = _soc_layout(cone)
    if dims.size:
        steps = ex.map(
            lambda rng: _ck.soc_max_step(u, du, starts, dims, rng[0], rng[1]),
            ex.splits(dims.size),
        )
        for s in steps:  # fixed range order
            if s < best:
                best = s
    return best


def interior_violation(u: np.ndarray, cone: ConeSpec, executor=None) -> float:
    """Largest per-cone violation; negative means strictly interior everywhere."""
    ex = executor or _SERIAL
    worst = -np.inf
    if cone.orthant_dim:
        worst = float(-np.min(u[: cone.orthant_dim]))
    starts, dims = _soc_layout(cone)
    if dims.size:
        parts = ex.map(
            lambda rng: _ck.soc_violation(u, starts, dims, rng[0], rng[1]),
            ex.splits(dims.size),
        )
        for v in parts:
            if v > worst:
                worst = v
    return worst


def is_strictly_interior(u: np.ndarray, cone: ConeSpec) -> bool:
    return interior_violation(u, cone) < 0.0


def check_interior(u: np.ndarray, cone: ConeSpec) -> None:
    if not is_strictly_interior(u, cone):
        raise NotInterior("point is not strictly inside the cone")


def bring_to_interior(u: np.ndarray, cone: ConeSpec) -> np.ndarray:
    """Shift along the cone identity until strictly interior.

    With alpha the largest per-cone violation, returns u unchanged when
    alpha < 0 and u + (1 + alpha) e otherwise.
    """
    alpha = interior_violation(u, cone)
    if alpha < 0.0:
        return u.copy()
    return u + (1.0 + alpha) * cone_identity(cone)


def compute_mu(s: np.ndarray, z: np.ndarray, cone: ConeSpec) -> float:
    """Complementarity measure s.z divided by the barrier degree."""
    return float(np.dot(s, z)) / cone_degree(cone)


def neg_wtw_values(scaling: NTScalingSet, slot_starts_soc, out: np.ndarray, executor=None):
    """-W^T W entries in slot order: orthant diagonal first, then each SOC
    block's dense upper triangle column-major."""
    ex = executor or _SERIAL
    cone = scaling.cone
    l = cone.orthant_dim
    if l:
        w = scaling.w_orthant
        out[:l] = -(w * w)
    starts, dims = _soc_layout(cone)
    if dims.size:
        ex.map(
            lambda rng: _ck.soc_neg_wtw(
                scaling.soc_eta, scaling.soc_wbar, starts, dims,
                slot_starts_soc, out, rng[0], rng[1],
            ),
            ex.splits(dims.size),
        )
