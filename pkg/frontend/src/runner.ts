/** Bridge to the native solver: QOCOPROB file in, JSON record out. */

import { execFileSync } from "node:child_process";

import { SolverProcessError } from "./errors.js";
import type { SolveRecord, SolveStatus } from "./types.js";

/** Python interpreter hosting the solver package; override with QSOCP_PYTHON. */
export function pythonExecutable(): string {
  return process.env.QSOCP_PYTHON ?? "python3";
}

interface RawRecord {
  status: string;
  objective: number;
  iterations: number;
  setup_seconds: number;
  solve_seconds: number;
  factor_count: number;
  solve_count: number;
  x: number[];
  y: number[];
  z: number[];
  s: number[];
}

export function solveFile(path: string, algebra: string): SolveRecord {
  let stdout: string;
  try {
    stdout = execFileSync(
      pythonExecutable(),
      ["-m", "qsocp.cli", "solve", "--in", path, "--backend", algebra],
      { encoding: "utf8", maxBuffer: 1 << 28 },
    );
  } catch (err: unknown) {
    // a non-Solved status exits nonzero but still prints the record
    const e = err as { stdout?: string; stderr?: string; message?: string };
    if (typeof e.stdout === "string" && e.stdout.trim().startsWith("{")) {
      stdout = e.stdout;
    } else {
      throw new SolverProcessError(
        `solver process failed: ${e.stderr || e.message || String(err)}`,
      );
    }
  }
  let raw: RawRecord;
  try {
    raw = JSON.parse(stdout) as RawRecord;
  } catch {
    throw new SolverProcessError(`unreadable solver output: ${stdout.slice(0, 200)}`);
  }
  return {
    status: raw.status as SolveStatus,
    objective: raw.objective,
    iterations: raw.iterations,
    setupSeconds: raw.setup_seconds,
    solveSeconds: raw.solve_seconds,
    factorCount: raw.factor_count,
    solveCount: raw.solve_count,
    x: raw.x,
    y: raw.y,
    z: raw.z,
    s: raw.s,
  };
}
