/** QOCOPROB v1 load/save helpers.
 *
 * Line-oriented plain text: header "QOCOPROB 1", sizes "n m p l nsoc", the
 * SOC sizes (blank line when none), matrices P, A, G as "MAT name rows cols
 * nnz" plus one "row col value" line per entry (0-based, column-major), then
 * vectors c, b, h as "VEC name len" plus one value per line. Values carry 17
 * significant digits so doubles round-trip exactly.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { BadSparseStructure } from "./errors.js";
import type { CscMatrix, ProblemData } from "./types.js";
import { validateProblem } from "./validate.js";

const MAGIC = "QOCOPROB";
const VERSION = 1;

function fmt(v: number): string {
  return v.toExponential(16);
}

function matrixLines(name: string, M: CscMatrix, out: string[]): void {
  const nnz = M.colPointers[M.cols];
  out.push(`MAT ${name} ${M.rows} ${M.cols} ${nnz}`);
  for (let j = 0; j < M.cols; j++) {
    for (let ptr = M.colPointers[j]; ptr < M.colPointers[j + 1]; ptr++) {
      out.push(`${M.rowIndices[ptr]} ${j} ${fmt(Number(M.values[ptr]))}`);
    }
  }
}

function vectorLines(name: string, v: number[], out: string[]): void {
  out.push(`VEC ${name} ${v.length}`);
  for (const x of v) out.push(fmt(x));
}

export function problemToText(data: ProblemData): string {
  validateProblem(data);
  const out: string[] = [
    `${MAGIC} ${VERSION}`,
    `${data.n} ${data.m} ${data.p} ${data.l} ${data.nsoc}`,
    data.q.join(" "),
  ];
  matrixLines("P", data.P, out);
  matrixLines("A", data.A, out);
  matrixLines("G", data.G, out);
  vectorLines("c", data.c, out);
  vectorLines("b", data.b, out);
  vectorLines("h", data.h, out);
  return out.join("\n") + "\n";
}

export function saveProblem(data: ProblemData, path: string): void {
  writeFileSync(path, problemToText(data));
}

class Reader {
  private pos = 0;
  constructor(private lines: string[]) {}

  next(): string {
    if (this.pos >= this.lines.length) {
      throw new BadSparseStructure("unexpected end of problem file");
    }
    return this.lines[this.pos++];
  }
}

function readMatrix(rd: Reader, name: string): CscMatrix {
  const head = rd.next().split(/\s+/);
  if (head.length !== 5 || head[0] !== "MAT" || head[1] !== name) {
    throw new BadSparseStructure(`expected 'MAT ${name} ...' header, got '${head.join(" ")}'`);
  }
  const rows = Number(head[2]);
  const cols = Number(head[3]);
  const nnz = Number(head[4]);
  const r = new Array<number>(nnz);
  const c = new Array<number>(nnz);
  const v = new Array<number>(nnz);
  for (let k = 0; k < nnz; k++) {
    const parts = rd.next().split(/\s+/);
    r[k] = Number(parts[0]);
    c[k] = Number(parts[1]);
    v[k] = Number(parts[2]);
  }
  // entries are column-major sorted already; build pointers by counting
  const colPointers = new Array<number>(cols + 1).fill(0);
  for (let k = 0; k < nnz; k++) colPointers[c[k] + 1]++;
  for (let j = 0; j < cols; j++) colPointers[j + 1] += colPointers[j];
  return { rows, cols, colPointers, rowIndices: r, values: v };
}

function readVector(rd: Reader, name: string): number[] {
  const head = rd.next().split(/\s+/);
  if (head.length !== 3 || head[0] !== "VEC" || head[1] !== name) {
    throw new BadSparseStructure(`expected 'VEC ${name} ...' header, got '${head.join(" ")}'`);
  }
  const len = Number(head[2]);
  const out = new Array<number>(len);
  for (let k = 0; k < len; k++) out[k] = Number(rd.next());
  return out;
}

export function problemFromText(text: string): ProblemData {
  const rd = new Reader(text.split("\n"));
  const head = rd.next().trim().split(/\s+/);
  if (head.length !== 2 || head[0] !== MAGIC || Number(head[1]) !== VERSION) {
    throw new BadSparseStructure(`unsupported problem file header: '${head.join(" ")}'`);
  }
  const [n, m, p, l, nsoc] = rd.next().trim().split(/\s+/).map(Number);
  const qline = rd.next().trim();
  const q = qline.length ? qline.split(/\s+/).map(Number) : [];
  if (q.length !== nsoc) {
    throw new BadSparseStructure(`expected ${nsoc} cone sizes, got ${q.length}`);
  }
  const P = readMatrix(rd, "P");
  const A = readMatrix(rd, "A");
  const G = readMatrix(rd, "G");
  const c = readVector(rd, "c");
  const b = readVector(rd, "b");
  const h = readVector(rd, "h");
  return validateProblem({ n, m, p, P, c, A, b, G, h, l, nsoc, q });
}

export function loadProblem(path: string): ProblemData {
  return problemFromText(readFileSync(path, "utf8"));
}
