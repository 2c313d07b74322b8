"""Deterministic generators for the five benchmark problem families.

Each generator is a pure function of (family, size_param, seed, constants):
the RNG is seeded from those values alone, so repeated calls reproduce the
problem bit for bit. Data distributions follow documented fixed choices;
matching any published nonzero counts exactly is a non-goal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..problem import ConeSpec, ProblemData, validate_problem
from ..sparse import csc_from_triplets, empty_csc


class Family(enum.Enum):
    HUBER = "huber"
    PORTFOLIO = "portfolio"
    MULTI_PERIOD_PORTFOLIO = "multiperiod_portfolio"
    GROUP_LASSO = "group_lasso"
    TV_DENOISING = "tv_denoising"


_FAMILY_IDS = {f: i for i, f in enumerate(Family)}


@dataclass(frozen=True)
class GeneratorConfig:
    """Family, size parameter (N, k, T, N or image side) and distributions."""

    family: Family
    size_param: int
    seed: int = 0
    gamma: float = 1.0  # risk aversion in the portfolio families
    lambda_reg: float | None = None  # group-lasso weight; None -> 0.1 ||A^T b||_inf
    l_max: float = 1.6  # leverage bound in the multi-period family
    lambda_tv: float = 1.0  # fidelity weight in TV denoising
    assets: int = 5000  # asset count in the multi-period family

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(
            [int(self.seed), _FAMILY_IDS[self.family], int(self.size_param)]
        )

    @property
    def name(self) -> str:
        return f"{self.family.value}_{self.size_param}"


def _sparse_mask(rng, rows, cols, density):
    mask = rng.random((rows, cols)) < density
    # a structurally empty column would decouple its variable; repair it
    for j in np.flatnonzero(~mask.any(axis=0)):
        mask[int(rng.integers(rows)), j] = True
    return mask


def _dense_to_triplets(mask, values):
    r, c = np.nonzero(mask)
    return r, c, values[r, c]


def generate_problem(cfg: GeneratorConfig) -> ProblemData:
    """Build and validate one benchmark instance."""
    if cfg.size_param < 1:
        raise ValueError("size_param must be at least 1")
    builder = {
        Family.HUBER: _huber,
        Family.PORTFOLIO: _portfolio,
        Family.MULTI_PERIOD_PORTFOLIO: _multi_period,
        Family.GROUP_LASSO: _group_lasso,
        Family.TV_DENOISING: _tv_denoising,
    }[cfg.family]
    return validate_problem(builder(cfg))


def _huber(cfg: GeneratorConfig) -> ProblemData:
    """Robust regression with the Huber loss at threshold 1.

    minimize u.u + 2 1.v over (x, u, v) subject to
    -(u+v) <= Ax - b <= u+v, 0 <= u <= 1, v >= 0, with A in R^{10N x N}.
    """
    N = cfg.size_param
    rng = cfg.rng()
    rows, delta = 10 * N, 1.0
    mask = _sparse_mask(rng, rows, N, 0.10)
    Adata = np.where(mask, rng.standard_normal((rows, N)), 0.0)
    x_true = rng.standard_normal(N)
    noise = 0.1 * rng.standard_normal(rows)
    outliers = np.where(rng.random(rows) < 0.1, rng.normal(0.0, 5.0, rows), 0.0)
    b = Adata @ x_true + noise + outliers

    n = N + 2 * rows
    m = 5 * rows
    u_off, v_off = N, N + rows

    P = csc_from_triplets(n, n, (np.arange(u_off, v_off), np.arange(u_off, v_off), np.full(rows, 2.0)))
    c = np.zeros(n)
    c[v_off:] = 2.0

    ar, ac, av = _dense_to_triplets(mask, Adata)
    ridx = np.arange(rows, dtype=np.int64)
    gr = [ar, ridx, ridx]
    gc = [ac, u_off + ridx, v_off + ridx]
    gv = [av, -np.ones(rows), -np.ones(rows)]
    gr += [rows + ar, rows + ridx, rows + ridx]
    gc += [ac, u_off + ridx, v_off + ridx]
    gv += [-av, -np.ones(rows), -np.ones(rows)]
    gr += [2 * rows + ridx, 3 * rows + ridx, 4 * rows + ridx]
    gc += [u_off + ridx, u_off + ridx, v_off + ridx]
    gv += [np.ones(rows), -np.ones(rows), -np.ones(rows)]
    G = csc_from_triplets(m, n, (np.concatenate(gr), np.concatenate(gc), np.concatenate(gv)))
    h = np.concatenate([b, -b, np.full(rows, delta), np.zeros(rows), np.zeros(rows)])

    return ProblemData(
        n=n, m=m, p=0,
        P=P, c=c,
        A=empty_csc(0, n), b=np.zeros(0),
        G=G, h=h,
        cone=ConeSpec(m),
    )


def _portfolio(cfg: GeneratorConfig) -> ProblemData:
    """Single-period mean-variance allocation on the unit simplex.

    minimize x.Dx + y.y - mu.x/gamma over (x, y) subject to
    Fx = y, 1.x = 1, x >= 0, with F in R^{k x 100k} half dense.
    """
    k = cfg.size_param
    rng = cfg.rng()
    na = 100 * k
    mask = rng.random((k, na)) < 0.5
    F = np.where(mask, rng.standard_normal((k, na)), 0.0)
    D = rng.uniform(0.05, 1.0, na)
    mu = rng.uniform(0.0, 0.1, na)

    n = na + k
    p = k + 1
    m = na

    pr = np.arange(n, dtype=np.int64)
    pv = np.concatenate([2.0 * D, np.full(k, 2.0)])
    P = csc_from_triplets(n, n, (pr, pr, pv))
    c = np.concatenate([-mu / cfg.gamma, np.zeros(k)])

    fr, fc, fv = _dense_to_triplets(mask, F)
    kr = np.arange(k, dtype=np.int64)
    ar = np.concatenate([fr, kr, np.full(na, k, dtype=np.int64)])
    ac = np.concatenate([fc, na + kr, np.arange(na, dtype=np.int64)])
    av = np.concatenate([fv, -np.ones(k), np.ones(na)])
    A = csc_from_triplets(p, n, (ar, ac, av))
    b = np.zeros(p)
    b[k] = 1.0

    xr = np.arange(na, dtype=np.int64)
    G = csc_from_triplets(m, n, (xr, xr, -np.ones(na)))
    return ProblemData(
        n=n, m=m, p=p,
        P=P, c=c, A=A, b=b, G=G, h=np.zeros(m),
        cone=ConeSpec(m),
    )


def _multi_period(cfg: GeneratorConfig) -> ProblemData:
    """Multi-period allocation with factor-exposure boxes and a leverage cap.

    For t = 1..T: holdings w_t (assets vary, factors fixed at 50), exposures
    y_t = F^T w_t boxed in [0, 0.01], 1.w_t = 1, |w_t|_1 <= L_max linearized
    through the split w_t = wp_t - wm_t, wp, wm >= 0. The objective stacks
    w_t.D w_t + |y_t|^2 - mu_t.w_t/gamma + |w_t - w_{t-1}|^2 with w_0 fixed.

    F is nonnegative with small entries, which keeps the y-box feasible at the
    uniform initial portfolio.
    """
    T = cfg.size_param
    rng = cfg.rng()
    na, k = cfg.assets, 50
    mask = _sparse_mask(rng, na, k, 0.5)
    F = np.where(mask, rng.uniform(0.0, 0.02, (na, k)), 0.0)
    D = rng.uniform(0.05, 0.3, na)
    mus = rng.uniform(0.0, 0.05, (T, na))
    w0 = np.full(na, 1.0 / na)

    # variable layout: w (T*na) | wp (T*na) | wm (T*na) | y (T*k)
    w_off = 0
    wp_off = T * na
    wm_off = 2 * T * na
    y_off = 3 * T * na
    n = 3 * T * na + T * k

    pr, pc, pv = [], [], []
    for t in range(T):
        base = w_off + t * na
        own = 2.0 * (D + (2.0 if t < T - 1 else 1.0))
        idx = base + np.arange(na, dtype=np.int64)
        pr.append(idx)
        pc.append(idx)
        pv.append(own)
        if t < T - 1:
            pr.append(idx)
            pc.append(idx + na)
            pv.append(np.full(na, -2.0))
    yidx = y_off + np.arange(T * k, dtype=np.int64)
    pr.append(yidx)
    pc.append(yidx)
    pv.append(np.full(T * k, 2.0))
    P = csc_from_triplets(n, n, (np.concatenate(pr), np.concatenate(pc), np.concatenate(pv)))

    c = np.zeros(n)
    for t in range(T):
        c[w_off + t * na : w_off + (t + 1) * na] = -mus[t] / cfg.gamma
    c[w_off : w_off + na] += -2.0 * w0

    # equalities per period: 1.w_t = 1 | F^T w_t - y_t = 0 | w_t - wp_t + wm_t = 0
    fr, fc, fv = _dense_to_triplets(mask.T, F.T)
    ar, ac, av, b = [], [], [], []
    p_per = 1 + k + na
    for t in range(T):
        row0 = t * p_per
        widx = w_off + t * na + np.arange(na, dtype=np.int64)
        ar.append(np.full(na, row0, dtype=np.int64))
        ac.append(widx)
        av.append(np.ones(na))
        ar.append(row0 + 1 + fr)
        ac.append(w_off + t * na + fc)
        av.append(fv)
        kidx = np.arange(k, dtype=np.int64)
        ar.append(row0 + 1 + kidx)
        ac.append(y_off + t * k + kidx)
        av.append(-np.ones(k))
        nidx = np.arange(na, dtype=np.int64)
        ar.append(row0 + 1 + k + nidx)
        ac.append(widx)
        av.append(np.ones(na))
        ar.append(row0 + 1 + k + nidx)
        ac.append(wp_off + t * na + nidx)
        av.append(-np.ones(na))
        ar.append(row0 + 1 + k + nidx)
        ac.append(wm_off + t * na + nidx)
        av.append(np.ones(na))
    p = T * p_per
    A = csc_from_triplets(p, n, (np.concatenate(ar), np.concatenate(ac), np.concatenate(av)))
    b = np.zeros(p)
    b[::p_per] = 1.0

    # orthant rows per period: wp >= 0 | wm >= 0 | y >= 0 | y <= 0.01 | leverage
    m_per = 2 * na + 2 * k + 1
    gr, gc, gv, h = [], [], [], np.zeros(T * m_per)
    for t in range(T):
        row0 = t * m_per
        nidx = np.arange(na, dtype=np.int64)
        kidx = np.arange(k, dtype=np.int64)
        gr.append(row0 + nidx)
        gc.append(wp_off + t * na + nidx)
        gv.append(-np.ones(na))
        gr.append(row0 + na + nidx)
        gc.append(wm_off + t * na + nidx)
        gv.append(-np.ones(na))
        gr.append(row0 + 2 * na + kidx)
        gc.append(y_off + t * k + kidx)
        gv.append(-np.ones(k))
        gr.append(row0 + 2 * na + k + kidx)
        gc.append(y_off + t * k + kidx)
        gv.append(np.ones(k))
        h[row0 + 2 * na + k : row0 + 2 * na + 2 * k] = 0.01
        lev = row0 + 2 * na + 2 * k
        gr.append(np.full(2 * na, lev, dtype=np.int64))
        gc.append(np.concatenate([wp_off + t * na + nidx, wm_off + t * na + nidx]))
        gv.append(np.ones(2 * na))
        h[lev] = cfg.l_max
    m = T * m_per
    G = csc_from_triplets(m, n, (np.concatenate(gr), np.concatenate(gc), np.concatenate(gv)))

    return ProblemData(
        n=n, m=m, p=p,
        P=P, c=c, A=A, b=b, G=G, h=h,
        cone=ConeSpec(m),
    )


def _group_lasso(cfg: GeneratorConfig) -> ProblemData:
    """Group-sparse regression in epigraph form.

    minimize r.r + lambda sum_i t_i over (x, r, t) subject to
    Ax - r = b and (t_i, x_group_i) in SOC(11), with A in R^{250N x 10N} and
    N groups of 10 variables.
    """
    N = cfg.size_param
    rng = cfg.rng()
    rows, nx = 250 * N, 10 * N
    mask = _sparse_mask(rng, rows, nx, 0.10)
    Adata = np.where(mask, rng.standard_normal((rows, nx)), 0.0)
    active = rng.random(N) < 0.5
    active[0] = True
    x_true = np.where(np.repeat(active, 10), rng.standard_normal(nx), 0.0)
    b = Adata @ x_true + 0.1 * rng.standard_normal(rows)
    lam = cfg.lambda_reg
    if lam is None:
        lam = 0.1 * float(np.max(np.abs(Adata.T @ b)))

    r_off, t_off = nx, nx + rows
    n = nx + rows + N

    ridx = np.arange(rows, dtype=np.int64)
    P = csc_from_triplets(n, n, (r_off + ridx, r_off + ridx, np.full(rows, 2.0)))
    c = np.zeros(n)
    c[t_off:] = lam

    ar, ac, av = _dense_to_triplets(mask, Adata)
    A = csc_from_triplets(
        rows,
        n,
        (
            np.concatenate([ar, ridx]),
            np.concatenate([ac, r_off + ridx]),
            np.concatenate([av, -np.ones(rows)]),
        ),
    )

    m = 11 * N
    gr, gc, gv = [], [], []
    for i in range(N):
        row0 = 11 * i
        gr.append(np.array([row0], dtype=np.int64))
        gc.append(np.array([t_off + i], dtype=np.int64))
        gv.append(np.array([-1.0]))
        gidx = np.arange(10, dtype=np.int64)
        gr.append(row0 + 1 + gidx)
        gc.append(10 * i + gidx)
        gv.append(-np.ones(10))
    G = csc_from_triplets(m, n, (np.concatenate(gr), np.concatenate(gc), np.concatenate(gv)))

    return ProblemData(
        n=n, m=m, p=rows,
        P=P, c=c, A=A, b=b, G=G, h=np.zeros(m),
        cone=ConeSpec(0, (11,) * N),
    )


def synthetic_image(side: int, rng: np.random.Generator) -> np.ndarray:
    """Deterministic piecewise pattern plus smooth waves plus noise."""
    i, j = np.meshgrid(np.arange(side), np.arange(side), indexing="ij")
    img = 0.6 * (i < side // 2) + 0.3 * (j >= side // 2)
    img = img + 0.2 * np.sin(2.0 * np.pi * 3.0 * i / side) * np.cos(2.0 * np.pi * 2.0 * j / side)
    img = img + 0.1 * rng.standard_normal((side, side))
    return img


def _tv_denoising(cfg: GeneratorConfig) -> ProblemData:
    """Isotropic total-variation denoising of a synthetic image.

    minimize sum_k t_k + lambda_tv/2 |u - y|^2 with one SOC of dimension 3 per
    forward-difference pixel: (t_k, u_{i+1,j} - u_{i,j}, u_{i,j+1} - u_{i,j}).
    """
    S = cfg.size_param
    if S < 2:
        raise ValueError("image side must be at least 2")
    rng = cfg.rng()
    y = synthetic_image(S, rng).ravel()
    npix = S * S
    ncone = (S - 1) * (S - 1)
    n = npix + ncone
    lam = cfg.lambda_tv

    uidx = np.arange(npix, dtype=np.int64)
    P = csc_from_triplets(n, n, (uidx, uidx, np.full(npix, lam)))
    c = np.zeros(n)
    c[:npix] = -lam * y
    c[npix:] = 1.0

    ii, jj = np.meshgrid(np.arange(S - 1), np.arange(S - 1), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    base = 3 * np.arange(ncone, dtype=np.int64)
    center = ii * S + jj
    right = (ii + 1) * S + jj
    down = ii * S + (jj + 1)
    gr = np.concatenate([base, base + 1, base + 1, base + 2, base + 2])
    gc = np.concatenate([npix + np.arange(ncone, dtype=np.int64), right, center, down, center])
    gv = np.concatenate(
        [-np.ones(ncone), -np.ones(ncone), np.ones(ncone), -np.ones(ncone), np.ones(ncone)]
    )
    m = 3 * ncone
    G = csc_from_triplets(m, n, (gr, gc, gv))

    return ProblemData(
        n=n, m=m, p=0,
        P=P, c=c,
        A=empty_csc(0, n), b=np.zeros(0),
        G=G, h=np.zeros(m),
        cone=ConeSpec(0, (3,) * ncone),
    )
