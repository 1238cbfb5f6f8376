/**
 * Readers for the spectrum CSV and prediction JSON files emitted by the
 * kernel CLI. The documented spectrum header is `l,mu,N_ld`; anything else
 * is a hard error naming the missing column.
 */

import { readFileSync } from "node:fs";

export class MissingColumn extends Error {
  constructor(public readonly column: string, file: string) {
    super(`missing column '${column}' in ${file}`);
    this.name = "MissingColumn";
  }
}

export interface SpectrumData {
  /** harmonic degrees l = 0..l_max */
  l: number[];
  /** eigenvalues mu_l */
  mu: number[];
  /** multiplicities N_{l,d} */
  multiplicity: number[];
}

const SPECTRUM_COLUMNS = ["l", "mu", "N_ld"] as const;

export function parseSpectrumCsv(text: string, file = "<string>"): SpectrumData {
  const lines = text.trim().split(/\r?\n/);
  const header = lines[0].split(",").map((h) => h.trim());
  for (const column of SPECTRUM_COLUMNS) {
    if (!header.includes(column)) {
      throw new MissingColumn(column, file);
    }
  }
  const index = SPECTRUM_COLUMNS.map((c) => header.indexOf(c));
  const out: SpectrumData = { l: [], mu: [], multiplicity: [] };
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const cells = line.split(",");
    out.l.push(Number(cells[index[0]]));
    out.mu.push(Number(cells[index[1]]));
    out.multiplicity.push(Number(cells[index[2]]));
  }
  return out;
}

export function readSpectrumCsv(path: string): SpectrumData {
  return parseSpectrumCsv(readFileSync(path, "utf-8"), path);
}

/** Shape of the prediction JSON written next to each spectrum CSV. */
export interface Prediction {
  kind: string;
  parity: string;
  case: string;
  exponent: number | null;
  superpolynomial: boolean;
  finite_rank: boolean;
  max_degree: number | string | null;
}

export function readPredictionJson(path: string): Prediction {
  return JSON.parse(readFileSync(path, "utf-8")) as Prediction;
}
