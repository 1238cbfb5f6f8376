/**
 * Assembly of the two standard figure layouts from a CLI data directory.
 *
 * The plotting layer never recomputes mathematics: it renders the spectrum
 * CSVs (`l,mu,N_ld`) exactly as written and takes the dashed guide slopes
 * from the prediction JSONs sitting next to them.
 */

import { existsSync, readdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { Prediction, readPredictionJson, readSpectrumCsv, SpectrumData } from "./csv.js";
import { GuideLine, PlotPanel, PlotSeries, renderPanels, SeriesPoint } from "./plot.js";

/** Relative floor below which eigenvalues count as structurally zero. */
export const ZERO_FLOOR = 1e-12;

export interface SeriesSpec {
  csvPath: string;
  label: string;
  panel: string;
  /** parity tag per prediction file attached to this series */
  predictions: { parity: string; path: string }[];
}

export interface PlotSpec {
  series: SeriesSpec[];
  panels: string[];
  paritySplit: boolean;
  outPath: string;
  axes: "log-log";
}

export function buildFig1Spec(dataDir: string, outPath: string): PlotSpec {
  const files = readdirSync(dataDir).sort();
  const series: SeriesSpec[] = [];
  for (const file of files) {
    const m = /^fig1_(.+)_(nngp|ntk)\.csv$/.exec(file);
    if (!m) continue;
    const predict = join(dataDir, `fig1_${m[1]}_${m[2]}.predict.json`);
    series.push({
      csvPath: join(dataDir, file),
      label: m[1],
      panel: m[2],
      predictions: existsSync(predict) ? [{ parity: "all", path: predict }] : [],
    });
  }
  return { series, panels: ["nngp", "ntk"], paritySplit: true, outPath, axes: "log-log" };
}

export function buildFig2Spec(dataDir: string, outPath: string): PlotSpec {
  const files = readdirSync(dataDir).sort();
  const series: SeriesSpec[] = [];
  for (const file of files) {
    const m = /^fig2_(.+)_(bias|nobias)\.csv$/.exec(file);
    if (!m) continue;
    const predictions = [];
    for (const parity of ["even", "odd"]) {
      const path = join(dataDir, `fig2_${m[1]}_${m[2]}.${parity}.predict.json`);
      if (existsSync(path)) predictions.push({ parity, path });
    }
    series.push({
      csvPath: join(dataDir, file),
      label: m[1],
      panel: m[2],
      predictions,
    });
  }
  return { series, panels: ["bias", "nobias"], paritySplit: true, outPath, axes: "log-log" };
}

function parityPoints(data: SpectrumData, parity: string): SeriesPoint[] {
  let top = 0;
  for (const mu of data.mu) top = Math.max(top, mu);
  const floor = ZERO_FLOOR * top;
  const points: SeriesPoint[] = [];
  for (let i = 0; i < data.l.length; i++) {
    const l = data.l[i];
    if (parity === "even" && l % 2 !== 0) continue;
    if (parity === "odd" && l % 2 !== 1) continue;
    if (data.mu[i] > floor) points.push({ l, mu: data.mu[i] });
  }
  return points;
}

function anchorFor(points: SeriesPoint[], preferredL = 24): SeriesPoint | null {
  if (points.length === 0) return null;
  let best = points[0];
  for (const p of points) {
    if (Math.abs(p.l - preferredL) < Math.abs(best.l - preferredL)) best = p;
  }
  return best;
}

/** Render a figure spec to its SVG file; validates every referenced CSV. */
export function render(spec: PlotSpec): string {
  const panels: PlotPanel[] = [];
  const labels = Array.from(new Set(spec.series.map((s) => s.label))).sort();
  for (const panelName of spec.panels) {
    const panelSeries: PlotSeries[] = [];
    const guides: GuideLine[] = [];
    const seenExponents = new Set<string>();
    for (const entry of spec.series.filter((s) => s.panel === panelName)) {
      if (!existsSync(entry.csvPath)) {
        throw new Error(`referenced CSV does not exist: ${entry.csvPath}`);
      }
      const data = readSpectrumCsv(entry.csvPath);
      const colorIndex = labels.indexOf(entry.label);
      const parities = spec.paritySplit ? ["even", "odd"] : ["all"];
      for (const parity of parities) {
        panelSeries.push({
          label: entry.label,
          parity,
          colorIndex,
          points: parityPoints(data, parity),
        });
      }
      for (const { parity, path } of entry.predictions) {
        const prediction: Prediction = readPredictionJson(path);
        if (prediction.exponent === null || prediction.exponent === undefined) continue;
        const key = prediction.exponent.toPrecision(6);
        if (seenExponents.has(key)) continue;
        const anchor = anchorFor(parityPoints(data, parity));
        if (anchor === null) continue;
        seenExponents.add(key);
        guides.push({
          exponent: prediction.exponent,
          anchorL: anchor.l,
          anchorMu: anchor.mu,
        });
      }
    }
    panels.push({ title: panelName, series: panelSeries, guides });
  }
  const svg = renderPanels(panels);
  writeFileSync(spec.outPath, svg);
  return spec.outPath;
}

export function renderFigure(figure: string, dataDir: string, outPath: string): string {
  if (figure === "1" || figure === "fig1") {
    return render(buildFig1Spec(dataDir, outPath));
  }
  if (figure === "2" || figure === "fig2") {
    return render(buildFig2Spec(dataDir, outPath));
  }
  throw new Error(`unknown figure '${figure}'; expected 1 or 2`);
}
