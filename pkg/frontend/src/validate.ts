import { BadSparseStructure, ConeMismatch, DimensionMismatch, EmptyCone } from "./errors.js";
import type { CscMatrix, ProblemData } from "./types.js";

function checkCsc(name: string, M: CscMatrix): void {
  const cp = M.colPointers;
  if (cp.length !== M.cols + 1 || cp[0] !== 0) {
    throw new BadSparseStructure(`${name}: column pointers must have length cols+1 and start at 0`);
  }
  for (let j = 0; j < M.cols; j++) {
    if (cp[j + 1] < cp[j]) {
      throw new BadSparseStructure(`${name}: column pointers must be nondecreasing`);
    }
  }
  const nnz = cp[M.cols];
  if (M.rowIndices.length !== nnz || M.values.length !== nnz) {
    throw new BadSparseStructure(`${name}: index/value arrays disagree with colPointers`);
  }
  for (let j = 0; j < M.cols; j++) {
    for (let ptr = cp[j]; ptr < cp[j + 1]; ptr++) {
      const r = M.rowIndices[ptr];
      if (r < 0 || r >= M.rows) {
        throw new BadSparseStructure(`${name}: row index out of range in column ${j}`);
      }
      if (ptr > cp[j] && M.rowIndices[ptr - 1] >= r) {
        throw new BadSparseStructure(`${name}: row indices not strictly increasing in column ${j}`);
      }
    }
  }
}

/** Mirror of the native structural validation; throws with the native error names. */
export function validateProblem(data: ProblemData): ProblemData {
  const { n, m, p } = data;
  if (n < 1) throw new DimensionMismatch("n must be at least 1");
  if (m < 1) throw new EmptyCone("problem has no conic constraints (m = 0)");
  if (p < 0) throw new DimensionMismatch("p must be nonnegative");

  const shapes: Array<[string, CscMatrix, number, number]> = [
    ["P", data.P, n, n],
    ["A", data.A, p, n],
    ["G", data.G, m, n],
  ];
  for (const [name, M, rows, cols] of shapes) {
    if (M.rows !== rows || M.cols !== cols) {
      throw new DimensionMismatch(`${name} is ${M.rows}x${M.cols}, expected ${rows}x${cols}`);
    }
    checkCsc(name, M);
  }
  const vectors: Array<[string, number[], number]> = [
    ["c", data.c, n],
    ["b", data.b, p],
    ["h", data.h, m],
  ];
  for (const [name, v, len] of vectors) {
    if (v.length !== len) {
      throw new DimensionMismatch(`${name} has length ${v.length}, expected ${len}`);
    }
  }

  // P stores its upper triangle only
  for (let j = 0; j < n; j++) {
    const hi = data.P.colPointers[j + 1];
    const lo = data.P.colPointers[j];
    if (hi > lo && data.P.rowIndices[hi - 1] > j) {
      throw new BadSparseStructure(`P has an entry below the diagonal in column ${j}`);
    }
  }

  if (data.q.length !== data.nsoc) {
    throw new ConeMismatch(`q lists ${data.q.length} cones but nsoc = ${data.nsoc}`);
  }
  if (data.l < 0 || data.q.some((qi) => qi < 1)) {
    throw new ConeMismatch("orthant size must be nonnegative and every SOC size >= 1");
  }
  const total = data.l + data.q.reduce((a, b) => a + b, 0);
  if (total !== m) {
    throw new ConeMismatch(`cone dimensions sum to ${total}, expected m = ${m}`);
  }
  return data;
}
