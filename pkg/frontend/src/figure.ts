/**
 * 3x3 panel figure builder: one panel per distribution family, log-scaled
 * sample-size axis, one solid mean line plus a +-1 standard-deviation band
 * per estimator, and the true property value as a dashed black line.
 *
 * Pure string-building (SVG), no drawing dependencies.
 */

import { BenchRecord } from "./csv.js";

export interface FigureSpec {
  records: BenchRecord[];
  property: string;
  columns?: number; // panel grid width, default 3
  panelWidth?: number;
  panelHeight?: number;
}

/** Fixed estimator colors, stable across figures for comparability. */
export const ESTIMATOR_COLORS: Record<string, string> = {
  empirical: "#1f77b4",
  "empirical+": "#2ca02c",
  "empirical++": "#9467bd",
  competitive: "#d62728",
  "competitive-refined": "#ff7f0e",
};

const FALLBACK_COLOR = "#7f7f7f";

export function estimatorColor(name: string): string {
  return ESTIMATOR_COLORS[name] ?? FALLBACK_COLOR;
}

interface Series {
  estimator: string;
  n: number[];
  mean: number[];
  std: number[];
}

interface Panel {
  family: string;
  truth: number;
  series: Series[];
}

function groupPanels(records: BenchRecord[]): Panel[] {
  const byFamily = new Map<string, BenchRecord[]>();
  for (const r of records) {
    const bucket = byFamily.get(r.family);
    if (bucket) {
      bucket.push(r);
    } else {
      byFamily.set(r.family, [r]);
    }
  }
  const panels: Panel[] = [];
  for (const [family, rows] of byFamily) {
    const byEstimator = new Map<string, BenchRecord[]>();
    for (const r of rows) {
      const bucket = byEstimator.get(r.estimator);
      if (bucket) {
        bucket.push(r);
      } else {
        byEstimator.set(r.estimator, [r]);
      }
    }
    const series: Series[] = [];
    for (const [estimator, pts] of byEstimator) {
      const sorted = [...pts].sort((a, b) => a.n - b.n);
      series.push({
        estimator,
        n: sorted.map((p) => p.n),
        mean: sorted.map((p) => p.mean_estimate),
        std: sorted.map((p) => p.std_dev),
      });
    }
    panels.push({ family, truth: rows[0].true_value, series });
  }
  return panels;
}

function fmtTick(v: number): string {
  if (Math.abs(v) >= 1000 || (Math.abs(v) < 0.01 && v !== 0)) {
    return v.toExponential(1);
  }
  return Number(v.toPrecision(3)).toString();
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderSvg(spec: FigureSpec): string {
  const records = spec.records.filter((r) => r.property === spec.property);
  if (records.length === 0) {
    throw new Error(`no records for property '${spec.property}'`);
  }
  const panels = groupPanels(records);
  const columns = spec.columns ?? 3;
  const rows = Math.ceil(panels.length / columns);
  const pw = spec.panelWidth ?? 320;
  const ph = spec.panelHeight ?? 240;
  const margin = { left: 58, right: 14, top: 30, bottom: 40 };
  const legendH = 28;
  const width = columns * pw;
  const height = rows * ph + legendH;

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // Legend: estimators in first-appearance order, truth marker last.
  const estimators = [...new Set(records.map((r) => r.estimator))];
  let lx = 12;
  for (const est of estimators) {
    const color = estimatorColor(est);
    out.push(`<line x1="${lx}" y1="${legendH / 2}" x2="${lx + 22}" y2="${legendH / 2}" stroke="${color}" stroke-width="2.5"/>`);
    out.push(`<text x="${lx + 27}" y="${legendH / 2 + 4}" font-size="12">${esc(est)}</text>`);
    lx += 40 + 7 * est.length;
  }
  out.push(`<line x1="${lx}" y1="${legendH / 2}" x2="${lx + 22}" y2="${legendH / 2}" stroke="black" stroke-width="1.5" stroke-dasharray="5,4"/>`);
  out.push(`<text x="${lx + 27}" y="${legendH / 2 + 4}" font-size="12">true value</text>`);

  panels.forEach((panel, idx) => {
    const col = idx % columns;
    const row = Math.floor(idx / columns);
    const x0 = col * pw + margin.left;
    const y0 = legendH + row * ph + margin.top;
    const plotW = pw - margin.left - margin.right;
    const plotH = ph - margin.top - margin.bottom;

    const ns = panel.series.flatMap((s) => s.n);
    const nMin = Math.min(...ns);
    const nMax = Math.max(...ns);
    const logMin = Math.log(nMin);
    const logSpan = Math.max(Math.log(nMax) - logMin, 1e-9);
    const xPos = (n: number) => x0 + ((Math.log(n) - logMin) / logSpan) * plotW;

    let yLo = panel.truth;
    let yHi = panel.truth;
    for (const s of panel.series) {
      for (let i = 0; i < s.n.length; i++) {
        yLo = Math.min(yLo, s.mean[i] - s.std[i]);
        yHi = Math.max(yHi, s.mean[i] + s.std[i]);
      }
    }
    const pad = 0.06 * (yHi - yLo || 1);
    yLo -= pad;
    yHi += pad;
    const yPos = (v: number) => y0 + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

    // Frame and title.
    out.push(`<rect x="${x0}" y="${y0}" width="${plotW}" height="${plotH}" fill="none" stroke="#aaaaaa"/>`);
    out.push(`<text x="${x0 + plotW / 2}" y="${y0 - 8}" font-size="13" text-anchor="middle">${esc(panel.family)}</text>`);

    // Axis ticks: the sampled n values on the log axis, 4 linear y ticks.
    for (const n of [...new Set(ns)].sort((a, b) => a - b)) {
      const x = xPos(n);
      out.push(`<line x1="${x.toFixed(1)}" y1="${y0 + plotH}" x2="${x.toFixed(1)}" y2="${y0 + plotH + 4}" stroke="#555555"/>`);
      out.push(`<text x="${x.toFixed(1)}" y="${y0 + plotH + 16}" font-size="10" text-anchor="middle">${n}</text>`);
    }
    out.push(`<text x="${x0 + plotW / 2}" y="${y0 + plotH + 30}" font-size="11" text-anchor="middle">samples n (log scale)</text>`);
    for (let t = 0; t <= 3; t++) {
      const v = yLo + ((yHi - yLo) * t) / 3;
      const y = yPos(v);
      out.push(`<line x1="${x0 - 4}" y1="${y.toFixed(1)}" x2="${x0}" y2="${y.toFixed(1)}" stroke="#555555"/>`);
      out.push(`<text x="${x0 - 7}" y="${(y + 3.5).toFixed(1)}" font-size="10" text-anchor="end">${fmtTick(v)}</text>`);
    }

    // One standard-deviation band + mean line per estimator.
    for (const s of panel.series) {
      const color = estimatorColor(s.estimator);
      if (s.n.length > 1) {
        const upper = s.n.map((n, i) => `${xPos(n).toFixed(2)},${yPos(s.mean[i] + s.std[i]).toFixed(2)}`);
        const lower = s.n
          .map((n, i) => `${xPos(n).toFixed(2)},${yPos(s.mean[i] - s.std[i]).toFixed(2)}`)
          .reverse();
        out.push(`<polygon points="${[...upper, ...lower].join(" ")}" fill="${color}" fill-opacity="0.18" stroke="none" class="band"/>`);
        const line = s.n.map((n, i) => `${xPos(n).toFixed(2)},${yPos(s.mean[i]).toFixed(2)}`);
        out.push(`<polyline points="${line.join(" ")}" fill="none" stroke="${color}" stroke-width="2" class="mean"/>`);
      } else {
        const x = xPos(s.n[0]);
        out.push(`<line x1="${x.toFixed(2)}" y1="${yPos(s.mean[0] + s.std[0]).toFixed(2)}" x2="${x.toFixed(2)}" y2="${yPos(s.mean[0] - s.std[0]).toFixed(2)}" stroke="${color}" stroke-width="2" class="band"/>`);
        out.push(`<circle cx="${x.toFixed(2)}" cy="${yPos(s.mean[0]).toFixed(2)}" r="3" fill="${color}" class="mean"/>`);
      }
    }

    // Dashed truth line.
    out.push(`<line x1="${x0}" y1="${yPos(panel.truth).toFixed(2)}" x2="${x0 + plotW}" y2="${yPos(panel.truth).toFixed(2)}" stroke="black" stroke-width="1.5" stroke-dasharray="6,4" class="truth"/>`);
  });

  out.push("</svg>");
  return out.join("\n");
}
