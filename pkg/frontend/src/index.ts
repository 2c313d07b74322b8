export { Solver, ALGEBRAS } from "./solver.js";
export type { Algebra } from "./solver.js";
export { loadProblem, saveProblem, problemFromText, problemToText } from "./qocoprob.js";
export { solveFile, pythonExecutable } from "./runner.js";
export { validateProblem } from "./validate.js";
export {
  BadSparseStructure,
  ConeMismatch,
  DimensionMismatch,
  EmptyCone,
  NotSetUp,
  SolverError,
  SolverProcessError,
} from "./errors.js";
export type { CscMatrix, ProblemData, SolveRecord, SolveStatus } from "./types.js";
