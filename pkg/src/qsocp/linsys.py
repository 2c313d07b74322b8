"""Linear-system backend contract and the two concrete backends.

A backend owns the factorization lifecycle for one solver instance:
initialize (one-time analysis), factor (per-iteration refactorization),
solve (refined triangular solves) and update (scatter new scaling-block
values). The parallel backend shares the serial numerics and only fans
per-cone work out to a thread pool.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from .cones import NTScalingSet, SerialExecutor, ThreadExecutor
from .errors import NumericalError
from .kkt import KKTSystem, reg_signs, write_scaling
from .ldl import DYN_REG_EPS, NumericFactor, numeric_factor, solve_refine, symbolic_factor
from .problem import Settings
from .sparse import fill_reducing_order


class LinsysBackend(ABC):
    """Behavioral contract shared by every linear-system backend."""

    name = "abstract"

    def __init__(self):
        self.n_factor = 0
        self.n_solve = 0
        self._initialized = False

    @abstractmethod
    def initialize(self, kkt: KKTSystem, settings: Settings, ordering: str = "amd") -> None:
        """One-time analysis of the KKT pattern. Must be called exactly once."""

    @abstractmethod
    def factor(self) -> None:
        """Numeric refactorization of the current KKT values."""

    @abstractmethod
    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Triangular solves plus iterative refinement for one right-hand side."""

    @abstractmethod
    def update(self, scaling: NTScalingSet) -> None:
        """Scatter fresh -W^T W values into the KKT matrix."""

    def close(self) -> None:
        pass


class BuiltinBackend(LinsysBackend):
    """Serial reference backend: AMD ordering plus up-looking LDL^T."""

    name = "builtin"

    def __init__(self):
        super().__init__()
        self.cone_executor = SerialExecutor()
        self._kkt: KKTSystem | None = None
        self._sym = None
        self._fac: NumericFactor | None = None
        self._signs: np.ndarray | None = None
        self._settings: Settings | None = None

    def initialize(self, kkt: KKTSystem, settings: Settings, ordering: str = "amd") -> None:
        if self._initialized:
            raise RuntimeError("backend already initialized")
        self._initialized = True
        self._kkt = kkt
        self._settings = settings
        perm = fill_reducing_order(kkt.matrix, method=ordering)
        self._sym = symbolic_factor(kkt.matrix, perm)
        self._signs = reg_signs(kkt.n, kkt.p, kkt.m)

    def factor(self) -> None:
        if not self._initialized:
            raise RuntimeError("backend not initialized")
        self._fac = numeric_factor(
            self._kkt.matrix.values,
            self._sym,
            self._settings.static_reg,
            DYN_REG_EPS,
            self._signs,
        )
        self.n_factor += 1

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self._fac is None:
            raise RuntimeError("factor() must run before solve()")
        out = solve_refine(self._fac, self._sym, self._kkt.matrix, rhs, self._settings.refine_iters)
        if not np.all(np.isfinite(out)):
            raise NumericalError("non-finite linear-system solution")
        self.n_solve += 1
        return out

    def update(self, scaling: NTScalingSet) -> None:
        write_scaling(self._kkt, scaling, self.cone_executor)

    @property
    def last_factor(self) -> NumericFactor | None:
        return self._fac

    @property
    def symbolic(self):
        return self._sym


class ParallelBackend(BuiltinBackend):
    """Identical numerics; per-cone operations and block updates run on a
    thread pool with a fixed reduction order."""

    name = "parallel"

    def __init__(self, max_workers: int = 8):
        super().__init__()
        self.cone_executor = ThreadExecutor(max_workers=max_workers)

    def close(self) -> None:
        self.cone_executor.close()


BACKENDS = {
    "builtin": BuiltinBackend,
    "parallel": ParallelBackend,
}


def make_backend(name: str) -> LinsysBackend:
    try:
        cls = BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected one of {sorted(BACKENDS)}") from None
    return cls()
