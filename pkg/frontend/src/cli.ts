#!/usr/bin/env node
/**
 * plot_spectra --fig {1|2} --data <dir> --out <file.svg>
 *
 * Renders the spectrum CSV bundle written by `nk figures` into a log-log
 * eigenvalue plot with dashed guide lines at the predicted slopes.
 */

import { renderFigure } from "./figures.js";

function parseArgs(argv: string[]): { fig: string; data: string; out: string } {
  const args: Record<string, string> = {};
  for (let i = 0; i < argv.length; i++) {
    const token = argv[i];
    if (token === "--fig" || token === "--data" || token === "--out") {
      args[token.slice(2)] = argv[++i];
    } else if (token === "--help" || token === "-h") {
      console.log("usage: plot_spectra --fig {1|2} --data <dir> --out <file.svg>");
      process.exit(0);
    } else {
      throw new Error(`unknown argument '${token}'`);
    }
  }
  for (const key of ["fig", "data", "out"]) {
    if (!(key in args)) throw new Error(`missing required argument --${key}`);
  }
  return { fig: args.fig, data: args.data, out: args.out };
}

export function main(argv: string[]): number {
  try {
    const { fig, data, out } = parseArgs(argv);
    const written = renderFigure(fig, data, out);
    console.log(`wrote ${written}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
