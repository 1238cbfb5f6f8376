import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, statSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { renderFigure } from "../src/figures.js";

function kernelCliAvailable(): boolean {
  try {
    execFileSync("nk", ["--help"], { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

const available = kernelCliAvailable();

// End-to-end smoke: generate real (coarse) spectrum bundles with the kernel
// CLI and render both figures.  Skipped when the kernel package is not on
// the PATH; the synthetic-bundle tests cover the renderer itself.
describe.skipIf(!available)("end-to-end against the kernel CLI", () => {
  it("renders fig1 and fig2 bundles to nonempty SVG files", () => {
    const dir = mkdtempSync(join(tmpdir(), "e2e-"));
    execFileSync("nk", ["figures", "fig1", "--lmax", "64", "--nquad", "200",
                        "--out", dir], { stdio: "ignore" });
    execFileSync("nk", ["figures", "fig2", "--lmax", "64", "--nquad", "200",
                        "--out", dir], { stdio: "ignore" });
    for (const fig of ["1", "2"]) {
      const out = join(dir, `fig${fig}.svg`);
      renderFigure(fig, dir, out);
      expect(existsSync(out)).toBe(true);
      expect(statSync(out).size).toBeGreaterThan(0);
    }
  }, 600_000);
});
