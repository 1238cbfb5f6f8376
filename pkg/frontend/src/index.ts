export { MissingColumn, parseSpectrumCsv, readSpectrumCsv, readPredictionJson } from "./csv.js";
export type { Prediction, SpectrumData } from "./csv.js";
export { renderPanels } from "./plot.js";
export type { GuideLine, PlotPanel, PlotSeries, SeriesPoint } from "./plot.js";
export {
  ZERO_FLOOR,
  buildFig1Spec,
  buildFig2Spec,
  render,
  renderFigure,
} from "./figures.js";
export type { PlotSpec, SeriesSpec } from "./figures.js";
