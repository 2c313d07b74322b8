"""Numba kernels for second-order-cone blocks.

Each kernel walks a contiguous range [k0, k1) of cones described by flat
(starts, dims) arrays. They release the GIL so a thread pool can run
disjoint ranges truly in parallel; writes stay within each cone's slice.
"""

import math

import numba as nb
import numpy as np

STEP_UNBOUNDED = float(np.finfo(np.float64).max)


@nb.njit(cache=True, nogil=True)
def soc_nt_scaling(s, z, starts, dims, k0, k1, eta, wbar, lam):
    """Scaling blocks and lambda for cones [k0, k1); 1 if not interior."""
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        s0 = s[o]
        z0 = z[o]
        sres = s0 * s0
        zres = z0 * z0
        for t in range(o + 1, o + d):
            sres -= s[t] * s[t]
            zres -= z[t] * z[t]
        if s0 <= 0.0 or z0 <= 0.0 or sres <= 0.0 or zres <= 0.0:
            return 1
        sa = math.sqrt(sres)
        za = math.sqrt(zres)
        dot = 0.0
        for t in range(o, o + d):
            dot += s[t] * z[t]
        gamma = math.sqrt((1.0 + dot / (sa * za)) / 2.0)
        # normalized scaling point, then its Jordan square root: the
        # reflection parameterization needs the root so W^2 matches the
        # quadratic representation of the scaling point
        nt0 = (s0 / sa + z0 / za) / (2.0 * gamma)
        den = math.sqrt(2.0 * (1.0 + nt0))
        wbar[o] = (nt0 + 1.0) / den
        for t in range(o + 1, o + d):
            wbar[t] = (s[t] / sa - z[t] / za) / (2.0 * gamma) / den
        ek = math.sqrt(sa / za)
        eta[k] = ek
        wz = 0.0
        for t in range(o, o + d):
            wz += wbar[t] * z[t]
        lam[o] = ek * (2.0 * wbar[o] * wz - z0)
        for t in range(o + 1, o + d):
            lam[t] = ek * (2.0 * wbar[t] * wz + z[t])
    return 0


@nb.njit(cache=True, nogil=True)
def soc_apply_w(eta, wbar, starts, dims, u, out, inverse, k0, k1):
    # W u = eta (2 wbar (wbar.u) - J u); the inverse swaps wbar for J wbar
    # and eta for 1/eta
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        if inverse:
            scale = 1.0 / eta[k]
            sgn = -1.0
        else:
            scale = eta[k]
            sgn = 1.0
        dot = wbar[o] * u[o]
        for t in range(o + 1, o + d):
            dot += sgn * wbar[t] * u[t]
        out[o] = scale * (2.0 * wbar[o] * dot - u[o])
        for t in range(o + 1, o + d):
            out[t] = scale * (2.0 * sgn * wbar[t] * dot + u[t])


@nb.njit(cache=True, nogil=True)
def soc_jordan(u, v, out, starts, dims, k0, k1):
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        dot = 0.0
        for t in range(o, o + d):
            dot += u[t] * v[t]
        u0 = u[o]
        v0 = v[o]
        out[o] = dot
        for t in range(o + 1, o + d):
            out[t] = u0 * v[t] + v0 * u[t]


@nb.njit(cache=True, nogil=True)
def soc_jordan_div(lam, v, out, starts, dims, k0, k1):
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        a = lam[o]
        den = a * a
        cross = 0.0
        for t in range(o + 1, o + d):
            den -= lam[t] * lam[t]
            cross += lam[t] * v[t]
        u0 = (a * v[o] - cross) / den
        out[o] = u0
        for t in range(o + 1, o + d):
            out[t] = (v[t] - u0 * lam[t]) / a


@nb.njit(cache=True, nogil=True)
def soc_max_step(u, du, starts, dims, k0, k1):
    """Smallest boundary-exit step over cones [k0, k1)."""
    best = STEP_UNBOUNDED
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        a = du[o] * du[o]
        b = u[o] * du[o]
        c = u[o] * u[o]
        for t in range(o + 1, o + d):
            a -= du[t] * du[t]
            b -= u[t] * du[t]
            c -= u[t] * u[t]
        b *= 2.0
        if a == 0.0:
            step = -c / b if b < 0.0 else STEP_UNBOUNDED
        else:
            disc = b * b - 4.0 * a * c
            if a > 0.0 and disc < 0.0:
                step = STEP_UNBOUNDED
            else:
                sq = math.sqrt(disc)
                if b >= 0.0:
                    r1 = (-b - sq) / (2.0 * a)
                    den = -b - sq
                else:
                    r1 = (-b + sq) / (2.0 * a)
                    den = -b + sq
                r2 = (2.0 * c / den) if den != 0.0 else STEP_UNBOUNDED
                step = STEP_UNBOUNDED
                if 0.0 < r1 < step:
                    step = r1
                if 0.0 < r2 < step:
                    step = r2
        if step < best:
            best = step
    return best


@nb.njit(cache=True, nogil=True)
def soc_violation(u, starts, dims, k0, k1):
    """max over cones of |u_tail| - u_head; negative means strictly interior."""
    worst = -np.inf
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        nrm = 0.0
        for t in range(o + 1, o + d):
            nrm += u[t] * u[t]
        v = math.sqrt(nrm) - u[o]
        if v > worst:
            worst = v
    return worst


@nb.njit(cache=True, nogil=True)
def soc_neg_wtw(eta, wbar, starts, dims, slot_starts, out, k0, k1):
    """-W^T W entries, upper triangle column-major per cone."""
    for k in range(k0, k1):
        o = starts[k]
        d = dims[k]
        e2 = eta[k] * eta[k]
        c = 0.0
        for t in range(o, o + d):
            c += wbar[t] * wbar[t]
        slot = slot_starts[k]
        for j in range(d):
            wj = wbar[o + j]
            jj = wj if j == 0 else -wj
            for i in range(j + 1):
                wi = wbar[o + i]
                ji = wi if i == 0 else -wi
                v = 4.0 * c * wi * wj - 2.0 * wi * jj - 2.0 * ji * wj
                if i == j:
                    v += 1.0
                out[slot] = -e2 * v
                slot += 1
