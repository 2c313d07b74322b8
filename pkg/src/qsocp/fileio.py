"""QOCOPROB v1: a line-oriented plain-text problem interchange format.

Layout:
    QOCOPROB 1
    n m p l nsoc
    q_1 ... q_nsoc          (blank line when nsoc = 0)
    MAT P rows cols nnz     followed by nnz "row col value" lines
    MAT A ...
    MAT G ...
    VEC c len               followed by len value lines
    VEC b len
    VEC h len

Matrix entries are 0-based and column-major sorted. Values are written with
17 significant digits so 64-bit floats round-trip exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import BadSparseStructure
from .problem import ConeSpec, ProblemData, validate_problem
from .sparse import SparseMatrixCSC, csc_from_triplets

MAGIC = "QOCOPROB"
VERSION = 1


def _fmt(v: float) -> str:
    return f"{v:.16e}"


def _matrix_lines(name: str, M: SparseMatrixCSC):
    yield f"MAT {name} {M.rows} {M.cols} {M.nnz}"
    for j in range(M.cols):
        for p in range(int(M.col_pointers[j]), int(M.col_pointers[j + 1])):
            yield f"{int(M.row_indices[p])} {j} {_fmt(float(M.values[p]))}"


def _vector_lines(name: str, v: np.ndarray):
    yield f"VEC {name} {len(v)}"
    for x in v:
        yield _fmt(float(x))


def problem_to_text(data: ProblemData) -> str:
    cone = data.cone
    lines = [
        f"{MAGIC} {VERSION}",
        f"{data.n} {data.m} {data.p} {cone.orthant_dim} {cone.soc_count}",
        " ".join(str(q) for q in cone.soc_dims),
    ]
    for name, M in (("P", data.P), ("A", data.A), ("G", data.G)):
        lines.extend(_matrix_lines(name, M))
    for name, v in (("c", data.c), ("b", data.b), ("h", data.h)):
        lines.extend(_vector_lines(name, v))
    return "\n".join(lines) + "\n"


def save_problem(data: ProblemData, path) -> None:
    with open(path, "w") as fh:
        fh.write(problem_to_text(data))


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next_line(self) -> str:
        if self.pos >= len(self.lines):
            raise BadSparseStructure("unexpected end of problem file")
        line = self.lines[self.pos]
        self.pos += 1
        return line


def _read_matrix(rd: _Reader, name: str) -> SparseMatrixCSC:
    head = rd.next_line().split()
    if len(head) != 5 or head[0] != "MAT" or head[1] != name:
        raise BadSparseStructure(f"expected 'MAT {name} ...' header, got {head!r}")
    rows, cols, nnz = int(head[2]), int(head[3]), int(head[4])
    r = np.empty(nnz, dtype=np.int64)
    c = np.empty(nnz, dtype=np.int64)
    v = np.empty(nnz)
    for k in range(nnz):
        parts = rd.next_line().split()
        r[k], c[k], v[k] = int(parts[0]), int(parts[1]), float(parts[2])
    return csc_from_triplets(rows, cols, (r, c, v))


def _read_vector(rd: _Reader, name: str) -> np.ndarray:
    head = rd.next_line().split()
    if len(head) != 3 or head[0] != "VEC" or head[1] != name:
        raise BadSparseStructure(f"expected 'VEC {name} ...' header, got {head!r}")
    length = int(head[2])
    return np.array([float(rd.next_line()) for _ in range(length)])


def problem_from_text(text: str) -> ProblemData:
    rd = _Reader(text)
    head = rd.next_line().split()
    if head != [MAGIC, str(VERSION)]:
        raise BadSparseStructure(f"unsupported problem file header: {head!r}")
    n, m, p, l, nsoc = (int(t) for t in rd.next_line().split())
    qline = rd.next_line().split()
    if len(qline) != nsoc:
        raise BadSparseStructure(f"expected {nsoc} cone sizes, got {len(qline)}")
    cone = ConeSpec(l, tuple(int(q) for q in qline))
    P = _read_matrix(rd, "P")
    A = _read_matrix(rd, "A")
    G = _read_matrix(rd, "G")
    c = _read_vector(rd, "c")
    b = _read_vector(rd, "b")
    h = _read_vector(rd, "h")
    return validate_problem(ProblemData(n, m, p, P, c, A, b, G, h, cone))


def load_problem(path) -> ProblemData:
    with open(path) as fh:
        return problem_from_text(fh.read())
