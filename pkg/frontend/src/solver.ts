import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { NotSetUp } from "./errors.js";
import { saveProblem } from "./qocoprob.js";
import { solveFile } from "./runner.js";
import type { CscMatrix, ProblemData, SolveRecord } from "./types.js";
import { validateProblem } from "./validate.js";

export const ALGEBRAS = ["builtin", "parallel"] as const;
export type Algebra = (typeof ALGEBRAS)[number];

/**
 * Solver handle with runtime backend selection:
 *
 *     const solver = new Solver("builtin");
 *     solver.setup(n, m, p, P, c, A, b, G, h, l, nsoc, q);
 *     const result = solver.solve();
 *
 * setup() validates and stages the problem; solve() hands it to the native
 * solver through a QOCOPROB v1 file and returns the parsed result record.
 * A handle is not safe to share between concurrent callers.
 */
export class Solver {
  readonly algebra: Algebra;
  private data: ProblemData | null = null;

  constructor(algebra: string = "builtin") {
    if (!ALGEBRAS.includes(algebra as Algebra)) {
      throw new Error(`unknown algebra '${algebra}'; expected one of ${ALGEBRAS.join(", ")}`);
    }
    this.algebra = algebra as Algebra;
  }

  setup(
    n: number,
    m: number,
    p: number,
    P: CscMatrix,
    c: number[],
    A: CscMatrix,
    b: number[],
    G: CscMatrix,
    h: number[],
    l: number,
    nsoc: number,
    q: number[],
  ): "ok" {
    this.data = validateProblem({ n, m, p, P, c, A, b, G, h, l, nsoc, q });
    return "ok";
  }

  /** Stage an already-assembled problem (e.g. from loadProblem). */
  setupProblem(data: ProblemData): "ok" {
    this.data = validateProblem(data);
    return "ok";
  }

  solve(): SolveRecord {
    if (this.data === null) {
      throw new NotSetUp("setup() must be called before solve()");
    }
    const dir = mkdtempSync(join(tmpdir(), "qsocp-"));
    const path = join(dir, "problem.qocoprob");
    try {
      saveProblem(this.data, path);
      return solveFile(path, this.algebra);
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }
}
