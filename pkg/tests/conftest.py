import numpy as np
import pytest

from qsocp import ConeSpec, ProblemData, csc_from_triplets, solve
from qsocp.sparse import empty_csc


def tiny_qp() -> ProblemData:
    """minimize 0.5 x^2 + x subject to x >= 1; optimum x*=1, z*=2, obj 1.5."""
    return ProblemData(
        n=1, m=1, p=0,
        P=csc_from_triplets(1, 1, [(0, 0, 1.0)]),
        c=np.array([1.0]),
        A=empty_csc(0, 1), b=np.zeros(0),
        G=csc_from_triplets(1, 1, [(0, 0, -1.0)]),
        h=np.array([-1.0]),
        cone=ConeSpec(1),
    )


def soc_slice_problem() -> ProblemData:
    """minimize x2 subject to x in SOC(3), x1 = 1; optimum (1, -1, 0)."""
    return ProblemData(
        n=3, m=3, p=1,
        P=empty_csc(3, 3),
        c=np.array([0.0, 1.0, 0.0]),
        A=csc_from_triplets(1, 3, [(0, 0, 1.0)]),
        b=np.array([1.0]),
        G=csc_from_triplets(3, 3, [(i, i, -1.0) for i in range(3)]),
        h=np.zeros(3),
        cone=ConeSpec(0, (3,)),
    )


def two_asset_portfolio() -> ProblemData:
    """min x.Dx - mu.x on the simplex, D=diag(.1,.2), mu=(.1,.2); x*=(.5,.5)."""
    return ProblemData(
        n=2, m=2, p=1,
        P=csc_from_triplets(2, 2, [(0, 0, 0.2), (1, 1, 0.4)]),
        c=np.array([-0.1, -0.2]),
        A=csc_from_triplets(1, 2, [(0, 0, 1.0), (0, 1, 1.0)]),
        b=np.array([1.0]),
        G=csc_from_triplets(2, 2, [(0, 0, -1.0), (1, 1, -1.0)]),
        h=np.zeros(2),
        cone=ConeSpec(2),
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call pays numba JIT; keep timing-sensitive tests honest
    solve(tiny_qp())
    solve(soc_slice_problem())
    yield


def random_interior_point(cone: ConeSpec, rng) -> np.ndarray:
    u = rng.standard_normal(cone.total_dim)
    l = cone.orthant_dim
    u[:l] = np.abs(u[:l]) + 0.1
    off = l
    for q in cone.soc_dims:
        tail = u[off + 1 : off + q]
        u[off] = np.linalg.norm(tail) + abs(rng.standard_normal()) + 0.1
        off += q
    return u


def random_feasible_problem(rng) -> ProblemData:
    """Strictly convex objective over a nonempty conic feasible set."""
    from qsocp import validate_problem
    from qsocp.sparse import spmv

    n = int(rng.integers(2, 12))
    p = int(rng.integers(0, 3))
    l = int(rng.integers(0, 5))
    nsoc = int(rng.integers(0, 3))
    qs = tuple(int(rng.integers(2, 5)) for _ in range(nsoc))
    if l + sum(qs) == 0:
        l = 1
    cone = ConeSpec(l, qs)
    m = cone.total_dim

    M = rng.standard_normal((n, n))
    Pd = M.T @ M + 0.1 * np.eye(n)
    P = csc_from_triplets(n, n, [(i, j, Pd[i, j]) for i in range(n) for j in range(i, n)])
    A = (
        csc_from_triplets(
            p, n, [(i, j, float(rng.standard_normal())) for i in range(p) for j in range(n)]
        )
        if p
        else empty_csc(0, n)
    )
    G = csc_from_triplets(
        m, n, [(i, j, float(rng.standard_normal())) for i in range(m) for j in range(n)]
    )
    x0 = rng.standard_normal(n)
    s0 = random_interior_point(cone, rng)
    return validate_problem(
        ProblemData(
            n=n, m=m, p=p, P=P, c=rng.standard_normal(n),
            A=A, b=spmv(A, x0), G=G, h=spmv(G, x0) + s0, cone=cone,
        )
    )


def random_quasidefinite(n, n_pos, rng, density=0.15):
    """Sparse symmetric matrix with a diagonally dominant (+,-) signature."""
    k = max(1, int(density * n * n / 2))
    r = rng.integers(0, n, k)
    c = rng.integers(0, n, k)
    v = rng.standard_normal(k)
    keep = r != c
    lo = np.minimum(r[keep], c[keep])
    hi = np.maximum(r[keep], c[keep])
    v = v[keep]
    rowsum = np.zeros(n)
    np.add.at(rowsum, lo, np.abs(v))
    np.add.at(rowsum, hi, np.abs(v))
    diag = rowsum + rng.uniform(0.5, 2.0, n)
    signs = np.ones(n)
    signs[n_pos:] = -1.0
    rows = np.concatenate([lo, np.arange(n)])
    cols = np.concatenate([hi, np.arange(n)])
    vals = np.concatenate([v, signs * diag])
    return csc_from_triplets(n, n, (rows, cols, vals)), signs
