/** Sparse matrix in compressed-sparse-column form. */
export interface CscMatrix {
  rows: number;
  cols: number;
  /** Column pointers, length cols + 1, starting at 0. */
  colPointers: number[] | Int32Array;
  /** Row indices, strictly increasing within each column. */
  rowIndices: number[] | Int32Array;
  /** Non-zero values (explicit zeros allowed). */
  values: number[] | Float64Array;
}

/** Problem data in the solver's native layout.
 *
 * minimize (1/2) x'Px + c'x  subject to  Ax = b, Gx + s = h, s in K,
 * with K an orthant of size l followed by nsoc second-order cones of sizes q.
 * P holds only its upper triangle.
 */
export interface ProblemData {
  n: number;
  m: number;
  p: number;
  P: CscMatrix;
  c: number[];
  A: CscMatrix;
  b: number[];
  G: CscMatrix;
  h: number[];
  l: number;
  nsoc: number;
  q: number[];
}

export type SolveStatus = "Solved" | "MaxIters" | "TimeLimit" | "NumericalError";

/** Result record returned by solve(). */
export interface SolveRecord {
  status: SolveStatus;
  objective: number;
  iterations: number;
  setupSeconds: number;
  solveSeconds: number;
  factorCount: number;
  solveCount: number;
  x: number[];
  y: number[];
  z: number[];
  s: number[];
}
