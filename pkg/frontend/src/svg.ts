/**
 * Minimal deterministic SVG plotting: linear/log axes, polyline series and
 * scatter panels composed on a fixed grid. No DOM, no timestamps, no
 * randomness, so identical inputs produce identical files.
 */

import { scaleLinear, scaleLog, type ScaleContinuousNumeric } from "d3-scale";
import { line as d3line } from "d3-shape";

export interface Series {
  x: number[];
  y: number[];
  label: string;
  color: string;
  kind: "line" | "scatter";
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: "linear" | "log";
  series: Series[];
}

const W = 440;
const H = 320;
const MARGIN = { top: 34, right: 16, bottom: 46, left: 62 };

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("e+", "e");
  return String(Number(v.toPrecision(6)));
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

function makeScale(
  kind: "linear" | "log",
  domain: [number, number],
  range: [number, number],
): ScaleContinuousNumeric<number, number> {
  if (kind === "log") {
    const lo = domain[0] > 0 ? domain[0] : 1e-12;
    return scaleLog([lo, Math.max(domain[1], lo * 10)], range);
  }
  const pad = 0.05 * (domain[1] - domain[0]);
  return scaleLinear([domain[0] - pad, domain[1] + pad], range);
}

function renderPanel(panel: PanelSpec, ox: number, oy: number): string {
  const x0 = ox + MARGIN.left;
  const x1 = ox + W - MARGIN.right;
  const y0 = oy + H - MARGIN.bottom;
  const y1 = oy + MARGIN.top;
  const xs = panel.series.flatMap((s) => s.x);
  const ys = panel.series.flatMap((s) => s.y);
  const xScale = makeScale(panel.xScale, extent(xs), [x0, x1]);
  const yScale = makeScale("linear", extent(ys), [y0, y1]);

  const parts: string[] = [];
  parts.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${oy + 18}" text-anchor="middle" font-size="13" font-weight="bold">${esc(panel.title)}</text>`,
  );
  for (const t of xScale.ticks(panel.xScale === "log" ? 4 : 5)) {
    const px = xScale(t);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${y0 + 17}" text-anchor="middle" font-size="10">${fmtTick(t)}</text>`,
    );
  }
  for (const t of yScale.ticks(5)) {
    const py = yScale(t);
    parts.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 7}" y="${py + 3}" text-anchor="end" font-size="10">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${y0 + 34}" text-anchor="middle" font-size="11">${esc(panel.xLabel)}</text>`,
  );
  parts.push(
    `<text transform="translate(${ox + 14},${(y0 + y1) / 2}) rotate(-90)" text-anchor="middle" font-size="11">${esc(panel.yLabel)}</text>`,
  );

  const path = d3line<number[]>()
    .x((p) => p[0])
    .y((p) => p[1]);
  panel.series.forEach((s, si) => {
    const pts: number[][] = [];
    for (let i = 0; i < s.x.length; i += 1) {
      const px = xScale(s.x[i]);
      const py = yScale(s.y[i]);
      if (Number.isFinite(px) && Number.isFinite(py)) pts.push([px, py]);
    }
    if (s.kind === "scatter") {
      for (const [px, py] of pts) {
        parts.push(`<circle cx="${px}" cy="${py}" r="2.2" fill="${s.color}" fill-opacity="0.75"/>`);
      }
    } else if (pts.length > 0) {
      parts.push(
        `<path d="${path(pts) ?? ""}" fill="none" stroke="${s.color}" stroke-width="1.6"/>`,
      );
    }
    if (s.label) {
      const ly = y1 + 14 + 13 * si;
      parts.push(
        `<line x1="${x1 - 88}" y1="${ly - 3}" x2="${x1 - 72}" y2="${ly - 3}" stroke="${s.color}" stroke-width="2"/>`,
      );
      parts.push(`<text x="${x1 - 68}" y="${ly}" font-size="10">${esc(s.label)}</text>`);
    }
  });
  return parts.join("\n");
}

export function renderFigure(panels: PanelSpec[], columns = 2): string {
  const cols = Math.min(columns, panels.length);
  const rows = Math.ceil(panels.length / cols);
  const width = cols * W;
  const height = rows * H;
  const body = panels
    .map((p, i) => renderPanel(p, (i % cols) * W, Math.floor(i / cols) * H))
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
