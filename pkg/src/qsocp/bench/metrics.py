"""Aggregate metrics: shifted geometric mean and performance profiles."""

from __future__ import annotations

import math

import numpy as np

from ..errors import EmptyInput


def shifted_geometric_mean(times, shift: float, failure_time: float | None = None) -> float:
    """exp(mean(log(t + shift))) - shift.

    Failed runs must be substituted before calling; passing failure_time swaps
    any non-finite entry for that value.
    """
    t = np.asarray(times, dtype=np.float64)
    if t.size == 0:
        raise EmptyInput("no timings to aggregate")
    if failure_time is not None:
        t = np.where(np.isfinite(t), t, failure_time)
    if np.any(t < 0) or np.any(~np.isfinite(t)):
        raise ValueError("timings must be finite and nonnegative")
    return float(math.exp(np.mean(np.log(t + shift))) - shift)


def performance_profile(times: np.ndarray, kind: str, taus) -> np.ndarray:
    """Fraction of problems each solver handles within tau, per tau.

    times is solvers x problems with +inf marking failures. kind "relative"
    compares against the per-problem best solver; "absolute" compares against
    tau seconds directly. Returns an array of shape (solvers, len(taus)).
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 2:
        raise ValueError("expected a solvers x problems matrix")
    taus = np.asarray(taus, dtype=np.float64)
    nsolv, nprob = times.shape
    if kind == "relative":
        best = np.min(times, axis=0)
        with np.errstate(invalid="ignore"):
            scores = np.where(
                np.isfinite(times) & np.isfinite(best), times / best, np.inf
            )
    elif kind == "absolute":
        scores = times
    else:
        raise ValueError(f"unknown profile kind {kind!r}")
    out = np.empty((nsolv, taus.size))
    for si in range(nsolv):
        for ti, tau in enumerate(taus):
            out[si, ti] = np.count_nonzero(scores[si] <= tau) / nprob
    return out


def default_relative_taus(times: np.ndarray, points: int = 64) -> np.ndarray:
    times = np.asarray(times, dtype=np.float64)
    best = np.min(times, axis=0)
    ok = np.isfinite(times) & np.isfinite(best)
    if not np.any(ok):
        return np.array([1.0])
    worst = float(np.max((times / best)[ok]))
    return np.geomspace(1.0, max(worst, 1.0 + 1e-9), points)


def default_absolute_taus(times: np.ndarray, points: int = 64) -> np.ndarray:
    finite = np.asarray(times)[np.isfinite(times)]
    if finite.size == 0:
        return np.array([1.0])
    lo = max(float(np.min(finite)), 1e-6)
    hi = max(float(np.max(finite)), lo * (1.0 + 1e-9))
    return np.geomspace(lo, hi, points)
