/** Errors mirroring the native solver's validation error names. */

export class SolverError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** Array or matrix dimensions disagree with the declared problem sizes. */
export class DimensionMismatch extends SolverError {}

/** Cone dimensions do not add up to the conic constraint dimension m. */
export class ConeMismatch extends SolverError {}

/** A compressed-sparse-column invariant is violated. */
export class BadSparseStructure extends SolverError {}

/** The problem has no conic constraints (m = 0). */
export class EmptyCone extends SolverError {}

/** solve() was called before setup(). */
export class NotSetUp extends SolverError {}

/** The backing solver process failed or produced an unreadable result. */
export class SolverProcessError extends SolverError {}
