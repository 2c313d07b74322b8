import { describe, expect, it } from "vitest";

import {
  ConeMismatch,
  DimensionMismatch,
  NotSetUp,
  Solver,
} from "../src/index.js";
import type { CscMatrix } from "../src/index.js";

function emptyMatrix(rows: number, cols: number): CscMatrix {
  return {
    rows,
    cols,
    colPointers: new Array(cols + 1).fill(0),
    rowIndices: [],
    values: [],
  };
}

// minimize 0.5 x^2 + x subject to x >= 1: x* = 1, objective 1.5, z* = 2
function setupTinyQp(solver: Solver) {
  const P: CscMatrix = { rows: 1, cols: 1, colPointers: [0, 1], rowIndices: [0], values: [1.0] };
  const G: CscMatrix = { rows: 1, cols: 1, colPointers: [0, 1], rowIndices: [0], values: [-1.0] };
  return solver.setup(1, 1, 0, P, [1.0], emptyMatrix(0, 1), [], G, [-1.0], 1, 0, []);
}

describe("Solver", () => {
  it("solves the tiny QP", () => {
    const solver = new Solver("builtin");
    expect(setupTinyQp(solver)).toBe("ok");
    const result = solver.solve();
    expect(result.status).toBe("Solved");
    expect(Math.abs(result.x[0] - 1.0)).toBeLessThanOrEqual(1e-7);
    expect(Math.abs(result.objective - 1.5)).toBeLessThanOrEqual(1e-6);
    expect(Math.abs(result.z[0] - 2.0)).toBeLessThanOrEqual(1e-6);
    expect(result.factorCount).toBe(result.iterations + 1);
    expect(result.solveCount).toBe(2 * result.iterations + 2);
  });

  it("rejects an unknown algebra immediately", () => {
    expect(() => new Solver("cuda")).toThrow(/unknown algebra/);
  });

  it("refuses to solve before setup", () => {
    expect(() => new Solver().solve()).toThrow(NotSetUp);
  });

  it("raises ConeMismatch when cone sizes disagree with m", () => {
    const solver = new Solver();
    const G: CscMatrix = {
      rows: 2, cols: 1, colPointers: [0, 2], rowIndices: [0, 1], values: [-1.0, -1.0],
    };
    const P: CscMatrix = { rows: 1, cols: 1, colPointers: [0, 1], rowIndices: [0], values: [1.0] };
    expect(() =>
      solver.setup(1, 2, 0, P, [1.0], emptyMatrix(0, 1), [], G, [-1.0, 0.0], 1, 1, [2]),
    ).toThrow(ConeMismatch);
  });

  it("raises DimensionMismatch on a wrong vector length", () => {
    const solver = new Solver();
    const P: CscMatrix = { rows: 1, cols: 1, colPointers: [0, 1], rowIndices: [0], values: [1.0] };
    const G: CscMatrix = { rows: 1, cols: 1, colPointers: [0, 1], rowIndices: [0], values: [-1.0] };
    expect(() =>
      solver.setup(1, 1, 0, P, [1.0], emptyMatrix(0, 1), [], G, [-1.0, 0.0], 1, 0, []),
    ).toThrow(DimensionMismatch);
  });

  it("builtin and parallel agree on the tiny QP", () => {
    const results = (["builtin", "parallel"] as const).map((algebra) => {
      const solver = new Solver(algebra);
      setupTinyQp(solver);
      return solver.solve();
    });
    expect(results[0].status).toBe("Solved");
    expect(results[1].status).toBe("Solved");
    const rel =
      Math.abs(results[0].objective - results[1].objective) /
      Math.max(Math.abs(results[0].objective), 1e-12);
    expect(rel).toBeLessThanOrEqual(1e-6);
  });
});
