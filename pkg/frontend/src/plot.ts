/**
 * Deterministic log-log SVG scatter plots with dashed reference-slope guides.
 *
 * The output is a pure function of the input data: fixed palette, fixed
 * number formatting, no timestamps or generated identifiers, so re-rendering
 * identical inputs yields byte-identical files.
 */

export interface SeriesPoint {
  l: number;
  mu: number;
}

export interface PlotSeries {
  label: string;
  /** "even" | "odd" | "all" - controls the marker shape */
  parity: string;
  colorIndex: number;
  points: SeriesPoint[];
}

export interface GuideLine {
  exponent: number;
  anchorL: number;
  anchorMu: number;
}

export interface PlotPanel {
  title: string;
  series: PlotSeries[];
  guides: GuideLine[];
}

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const PANEL_W = 420;
const PANEL_H = 380;
const MARGIN = { left: 64, right: 16, top: 40, bottom: 46 };
const LEGEND_H = 26;

function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  return Number(x.toPrecision(6)).toString();
}

function powLabel(decade: number): string {
  return decade === 0 ? "1" : `1e${decade}`;
}

interface Box {
  x0: number;
  y0: number;
  plotW: number;
  plotH: number;
  lx0: number;
  lx1: number;
  ly0: number;
  ly1: number;
}

function makeBox(panelIndex: number, series: PlotSeries[]): Box {
  let maxL = 1;
  let loMu = Infinity;
  let hiMu = -Infinity;
  for (const s of series) {
    for (const p of s.points) {
      maxL = Math.max(maxL, p.l);
      loMu = Math.min(loMu, p.mu);
      hiMu = Math.max(hiMu, p.mu);
    }
  }
  if (!Number.isFinite(loMu)) {
    loMu = 1e-12;
    hiMu = 1;
  }
  return {
    x0: panelIndex * PANEL_W + MARGIN.left,
    y0: MARGIN.top,
    plotW: PANEL_W - MARGIN.left - MARGIN.right,
    plotH: PANEL_H - MARGIN.top - MARGIN.bottom,
    lx0: 0,
    lx1: Math.log10(maxL + 1) * 1.02,
    ly0: Math.floor(Math.log10(loMu)) - 0.2,
    ly1: Math.ceil(Math.log10(hiMu)) + 0.2,
  };
}

function sx(box: Box, l: number): number {
  return box.x0 + ((Math.log10(l + 1) - box.lx0) / (box.lx1 - box.lx0)) * box.plotW;
}

function sy(box: Box, mu: number): number {
  return box.y0 + box.plotH - ((Math.log10(mu) - box.ly0) / (box.ly1 - box.ly0)) * box.plotH;
}

function marker(x: number, y: number, parity: string, color: string, label: string): string {
  const cls = `pt ${parity}`;
  const attrs = `class="${cls}" data-series="${label}"`;
  if (parity === "odd") {
    const r = 3.2;
    const d = `M ${fmt(x)} ${fmt(y - r)} L ${fmt(x + r)} ${fmt(y)} L ${fmt(x)} ${fmt(y + r)} L ${fmt(x - r)} ${fmt(y)} Z`;
    return `<path ${attrs} d="${d}" fill="none" stroke="${color}" stroke-width="1.1"/>`;
  }
  return `<circle ${attrs} cx="${fmt(x)}" cy="${fmt(y)}" r="2.3" fill="${color}"/>`;
}

function axis(box: Box, title: string): string {
  const parts: string[] = [];
  const bx = box.x0;
  const by = box.y0;
  parts.push(
    `<rect x="${fmt(bx)}" y="${fmt(by)}" width="${fmt(box.plotW)}" height="${fmt(box.plotH)}" fill="none" stroke="#333" stroke-width="1"/>`
  );
  parts.push(
    `<text x="${fmt(bx + box.plotW / 2)}" y="${fmt(by - 12)}" text-anchor="middle" font-size="14" font-weight="bold">${title}</text>`
  );
  // x ticks at 1, 2, 5 per decade of l+1
  const maxLp1 = Math.pow(10, box.lx1);
  for (let decade = 0; Math.pow(10, decade) <= maxLp1; decade++) {
    for (const m of [1, 2, 5]) {
      const value = m * Math.pow(10, decade);
      if (value > maxLp1) break;
      const x = sx(box, value - 1);
      parts.push(
        `<line x1="${fmt(x)}" y1="${fmt(by + box.plotH)}" x2="${fmt(x)}" y2="${fmt(by + box.plotH + 4)}" stroke="#333"/>`
      );
      parts.push(
        `<text x="${fmt(x)}" y="${fmt(by + box.plotH + 16)}" text-anchor="middle" font-size="10">${value}</text>`
      );
    }
  }
  parts.push(
    `<text x="${fmt(bx + box.plotW / 2)}" y="${fmt(by + box.plotH + 32)}" text-anchor="middle" font-size="11">degree l + 1</text>`
  );
  // y ticks at decades
  const d0 = Math.ceil(box.ly0);
  const d1 = Math.floor(box.ly1);
  const step = Math.max(1, Math.ceil((d1 - d0) / 8));
  for (let dec = d0; dec <= d1; dec += step) {
    const y = sy(box, Math.pow(10, dec));
    parts.push(`<line x1="${fmt(bx - 4)}" y1="${fmt(y)}" x2="${fmt(bx)}" y2="${fmt(y)}" stroke="#333"/>`);
    parts.push(
      `<text x="${fmt(bx - 7)}" y="${fmt(y + 3)}" text-anchor="end" font-size="10">${powLabel(dec)}</text>`
    );
  }
  parts.push(
    `<text transform="translate(${fmt(bx - 46)},${fmt(by + box.plotH / 2)}) rotate(-90)" text-anchor="middle" font-size="11">eigenvalue</text>`
  );
  return parts.join("\n");
}

function clipSegment(
  x1: number, y1: number, x2: number, y2: number,
  box: Box
): [number, number, number, number] | null {
  // Liang-Barsky against the plot rectangle
  const xmin = box.x0;
  const xmax = box.x0 + box.plotW;
  const ymin = box.y0;
  const ymax = box.y0 + box.plotH;
  let t0 = 0;
  let t1 = 1;
  const dx = x2 - x1;
  const dy = y2 - y1;
  const checks: Array<[number, number]> = [
    [-dx, x1 - xmin],
    [dx, xmax - x1],
    [-dy, y1 - ymin],
    [dy, ymax - y1],
  ];
  for (const [p, q] of checks) {
    if (p === 0) {
      if (q < 0) return null;
      continue;
    }
    const r = q / p;
    if (p < 0) {
      if (r > t1) return null;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return null;
      if (r < t1) t1 = r;
    }
  }
  return [x1 + t0 * dx, y1 + t0 * dy, x1 + t1 * dx, y1 + t1 * dy];
}

function guide(box: Box, g: GuideLine): string {
  const muAt = (l: number) =>
    g.anchorMu * Math.pow((l + 1) / (g.anchorL + 1), g.exponent);
  const l0 = Math.pow(10, box.lx0) - 1;
  const l1 = Math.pow(10, box.lx1) - 1;
  const seg = clipSegment(
    sx(box, l0), sy(box, muAt(l0)), sx(box, l1), sy(box, muAt(l1)), box
  );
  if (seg === null) return "";
  const [x1, y1, x2, y2] = seg;
  const label = `slope ${fmt(g.exponent)}`;
  return (
    `<line class="guide" data-slope="${fmt(g.exponent)}" x1="${fmt(x1)}" y1="${fmt(y1)}" ` +
    `x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="#555" stroke-width="1" stroke-dasharray="6 4"/>\n` +
    `<text x="${fmt(x2 - 4)}" y="${fmt(y2 - 5)}" text-anchor="end" font-size="10" fill="#555">${label}</text>`
  );
}

function legend(panels: PlotPanel[], width: number): string {
  const labels: string[] = [];
  const seen = new Set<string>();
  for (const panel of panels) {
    for (const s of panel.series) {
      const key = `${s.label}:${s.colorIndex}`;
      if (!seen.has(key)) {
        seen.add(key);
        labels.push(key);
      }
    }
  }
  const parts: string[] = [];
  let x = 16;
  const y = panels.length > 0 ? PANEL_H + 4 : 4;
  for (const key of labels) {
    const [label, idx] = key.split(":");
    const color = PALETTE[Number(idx) % PALETTE.length];
    parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y + 6)}" r="4" fill="${color}"/>`);
    parts.push(
      `<text x="${fmt(x + 8)}" y="${fmt(y + 10)}" font-size="11">${label}</text>`
    );
    x += 14 + 7 * label.length + 16;
  }
  parts.push(
    `<text x="${fmt(width - 16)}" y="${fmt(y + 10)}" text-anchor="end" font-size="10" fill="#555">markers: filled = even l, open = odd l</text>`
  );
  return parts.join("\n");
}

export function renderPanels(panels: PlotPanel[]): string {
  const width = PANEL_W * panels.length;
  const height = PANEL_H + LEGEND_H;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
  ];
  panels.forEach((panel, i) => {
    const box = makeBox(i, panel.series);
    parts.push(axis(box, panel.title));
    for (const g of panel.guides) {
      parts.push(guide(box, g));
    }
    for (const s of panel.series) {
      const color = PALETTE[s.colorIndex % PALETTE.length];
      for (const p of s.points) {
        parts.push(marker(sx(box, p.l), sy(box, p.mu), s.parity, color, s.label));
      }
    }
  });
  parts.push(legend(panels, width));
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
